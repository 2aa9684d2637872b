#!/usr/bin/env python3
"""Write the golden derivations to corpus/golden/ as proof JSON files."""

import argparse
from pathlib import Path

from pakernel.corpus import write_golden

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=ROOT / "corpus" / "golden")
    args = ap.parse_args()
    for path in write_golden(args.out):
        print(path.relative_to(ROOT) if path.is_relative_to(ROOT) else path)


if __name__ == "__main__":
    main()
