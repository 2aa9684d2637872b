"""Single-point corruptions of proofs, each invalid by construction.

Every mutant changes exactly one line so that its stated justification can no
longer produce its formula.  Used to measure the kernel's false-accept rate.
"""

from __future__ import annotations

import random
from dataclasses import replace

from .proofs import MP, Axiom, Eval, Gen, Line, Proof
from .syntax import BOT, Eq, Imp, Num, Var, all_vars

UNKNOWN_SCHEMA = 99


def _perturb(phi):
    """A formula different from ``phi`` (hash-consing makes `is not` exact)."""
    if isinstance(phi, Eq) and isinstance(phi.right, Num):
        return Eq(phi.left, Num(phi.right.value + 1))
    return Imp(phi, BOT)


def _with_line(p: Proof, k: int, line: Line) -> Proof:
    lines = list(p.lines)
    lines[k] = line
    return Proof(tuple(lines))


def mutants(p: Proof, rng: random.Random | None = None):
    """Yield ``(label, mutant)`` pairs for every applicable corruption of ``p``."""
    rng = rng or random.Random(0)
    for k, line in enumerate(p.lines):
        j = line.just
        # A changed formula under an unchanged justification.  For Eval lines the
        # numeral is bumped, which makes the equation false.
        yield f"formula@{k}", _with_line(p, k, replace(line, formula=_perturb(line.formula)))
        if isinstance(j, MP):
            if j.minor != j.major:
                yield f"mp-swap@{k}", _with_line(p, k, replace(line, just=MP(j.major, j.minor)))
            yield f"mp-forward@{k}", _with_line(p, k, replace(line, just=MP(j.minor, k)))
            yield f"mp-range@{k}", _with_line(p, k, replace(line, just=MP(-1, j.major)))
        elif isinstance(j, Gen):
            v = Var(max(all_vars(line.formula), default=0) + 1 + rng.randrange(3))
            yield f"gen-var@{k}", _with_line(p, k, replace(line, just=Gen(j.premise, v)))
            yield f"gen-forward@{k}", _with_line(p, k, replace(line, just=Gen(k, j.var)))
        elif isinstance(j, Axiom):
            yield f"axiom-schema@{k}", _with_line(p, k, replace(line, just=Axiom(UNKNOWN_SCHEMA, j.inst)))
        elif isinstance(j, Eval):
            yield f"eval-as-axiom@{k}", _with_line(p, k, replace(line, just=Axiom(1, ())))
    yield "append-bot", Proof(p.lines + (Line(BOT, Eval()),))
    yield "empty", Proof(())

