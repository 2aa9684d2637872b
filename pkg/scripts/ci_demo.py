#!/usr/bin/env python3
"""Complete-induction scheme: build selector proofs and check scheme instances."""

import time

from pakernel.encoding import encode
from pakernel.formula_corpus import ci_family
from pakernel.schemes import check_scheme_instance, ci_scheme, ci_scheme_proof, ci_selector
from pakernel.syntax import to_sexp


def main():
    sp, sch = ci_scheme_proof(), ci_scheme()
    for psi in ci_family():
        t0 = time.time()
        d = ci_selector(psi)
        v = check_scheme_instance(sp, sch, encode(psi))
        print(f"{'ok ' if d.check() and v.ok else 'BAD'} {len(d.proof.lines):4d} lines "
              f"{time.time() - t0:5.2f}s  {to_sexp(psi)}")


if __name__ == "__main__":
    main()
