"""Seeded random formulas for the Tarski and scheme experiments.

Bound variables are always fresh, so no quantifier shadows another one or a
free variable.  Free variables come from x0..x2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .syntax import (
    BOT, And, Eq, Exists, Forall, Formula, Imp, Less, Num, Or, Plus, Succ, Term, Times, Var,
    exists_lt, forall_lt, free_vars,
)

FREE = (Var(0), Var(1), Var(2))


@dataclass
class CorpusConfig:
    seed: int = 2024
    delta0: int = 150
    sigma1: int = 150
    sigma2: int = 30
    max_depth: int = 2
    max_numeral: int = 5


class _Gen:
    def __init__(self, cfg: CorpusConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        self.next_var = 3

    def fresh(self) -> Var:
        v = Var(self.next_var)
        self.next_var += 1
        return v

    def term(self, scope, depth) -> Term:
        r = self.rng
        if depth <= 0 or r.random() < 0.4:
            if scope and r.random() < 0.6:
                return r.choice(scope)
            return Num(r.randint(0, self.cfg.max_numeral))
        k = r.randrange(3)
        if k == 0:
            return Succ(self.term(scope, depth - 1))
        op = Plus if k == 1 else Times
        return op(self.term(scope, depth - 1), self.term(scope, depth - 1))

    def atom(self, scope) -> Formula:
        r = self.rng.random()
        if r < 0.05:
            return BOT
        op = Eq if r < 0.55 else Less
        return op(self.term(scope, 1), self.term(scope, 1))

    def delta0(self, scope, depth) -> Formula:
        r = self.rng
        if depth <= 0 or r.random() < 0.3:
            return self.atom(scope)
        k = r.randrange(5)
        if k < 3:
            op = (Imp, And, Or)[k]
            return op(self.delta0(scope, depth - 1), self.delta0(scope, depth - 1))
        v = self.fresh()
        bound = self.term(scope, 0)
        body = self.delta0(scope + [v], depth - 1)
        return (forall_lt if k == 3 else exists_lt)(v, bound, body)

    def sigma1(self, scope) -> Formula:
        r = self.rng
        vs = [self.fresh() for _ in range(r.choice((1, 1, 2)))]
        body = self.delta0(scope + vs, self.cfg.max_depth)
        phi = body
        for v in reversed(vs):
            phi = Exists(v, phi)
        shape = r.randrange(4)
        if shape == 1:
            return And(phi, self.delta0(scope, 1))
        if shape == 2:
            return Imp(self.delta0(scope, 1), phi)
        return phi

    def sigma2(self, scope) -> Formula:
        v, w = self.fresh(), self.fresh()
        return Exists(v, Forall(w, self.delta0(scope + [v, w], self.cfg.max_depth)))

    def scope(self) -> list[Var]:
        return list(FREE[: self.rng.randrange(len(FREE) + 1)])


def generate(cfg: CorpusConfig | None = None) -> dict[str, list[Formula]]:
    """``{"delta0": [...], "sigma1": [...], "sigma2": [...]}``, reproducible from the seed."""
    cfg = cfg or CorpusConfig()
    g = _Gen(cfg)
    out: dict[str, list[Formula]] = {"delta0": [], "sigma1": [], "sigma2": []}
    for _ in range(cfg.delta0):
        out["delta0"].append(g.delta0(g.scope(), cfg.max_depth))
    for _ in range(cfg.sigma1):
        out["sigma1"].append(g.sigma1(g.scope()))
    for _ in range(cfg.sigma2):
        out["sigma2"].append(g.sigma2(g.scope()))
    return out


def ci_family(count: int = 20, seed: int = 11) -> list[Formula]:
    """Formulas in x0 (sometimes with parameter x1) for the complete-induction scheme."""
    g = _Gen(CorpusConfig(seed=seed))
    out: list[Formula] = [Eq(FREE[0], FREE[0]), Less(FREE[0], Succ(FREE[0]))]
    while len(out) < count:
        scope = [FREE[0]] if g.rng.random() < 0.7 else [FREE[0], FREE[1]]
        k = len(out) % 3
        if k == 0:
            phi = g.delta0(scope, 2)
        elif k == 1:
            phi = g.sigma1(scope)
        else:
            phi = Forall(g.fresh(), g.delta0(scope + [Var(g.next_var - 1)], 1))
        if FREE[0].index in free_vars(phi):
            out.append(phi)
    return out
