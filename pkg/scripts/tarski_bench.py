#!/usr/bin/env python3
"""Time Tarski-condition proofs over the seeded random formula corpus."""

import argparse
import time
from dataclasses import fields

from pakernel.formula_corpus import CorpusConfig, generate
from pakernel.truthdef import tarski_proof


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for f in fields(CorpusConfig):
        ap.add_argument(f"--{f.name.replace('_', '-')}", type=int, default=f.default)
    cfg = CorpusConfig(**{k: v for k, v in vars(ap.parse_args()).items()})
    c = generate(cfg)
    for kind, level in (("delta0", 1), ("sigma1", 1), ("sigma2", 2)):
        t0 = time.time()
        ok = lines = 0
        for phi in c[kind]:
            d = tarski_proof(phi, level)
            ok += d.check()
            lines += len(d.proof.lines)
        n = len(c[kind])
        print(f"{kind:7s} level {level}: {ok}/{n} checked, {lines / max(n, 1):.0f} lines avg, "
              f"{time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
