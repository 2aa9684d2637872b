"""A small primitive recursive programming language.

Core constructors are ``Zero``, ``SuccF``, ``Proj``, ``Compose`` and
``PrimRec``.  ``IfZero``, ``BoundedSearch`` and ``BinRec`` are sugar: the
evaluator runs them directly (``BinRec`` recurses on ``n // 2``, so it costs
O(log n) steps), and :func:`elaborate` rewrites them into the core.
``Native`` stands for a registered function executed by Python code; it has no
core elaboration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Union


class FuelExhausted(RuntimeError):
    pass


class Fuel:
    """A step budget shared by a whole evaluation."""

    __slots__ = ("remaining",)

    def __init__(self, steps: int = 10**7):
        self.remaining = steps

    def spend(self, n: int = 1) -> None:
        self.remaining -= n
        if self.remaining < 0:
            raise FuelExhausted("evaluation ran out of fuel")


def as_fuel(fuel: Union[Fuel, int, None]) -> Fuel:
    if isinstance(fuel, Fuel):
        return fuel
    return Fuel(10**7 if fuel is None else fuel)


@dataclass(frozen=True)
class Zero:
    arity: int = 0


@dataclass(frozen=True)
class SuccF:
    arity: int = 1


@dataclass(frozen=True)
class Proj:
    index: int
    arity: int

    def __post_init__(self):
        if not 0 <= self.index < self.arity:
            raise ValueError(f"projection {self.index} out of range for arity {self.arity}")


@dataclass(frozen=True)
class Compose:
    f: "PRProgram"
    gs: tuple["PRProgram", ...]

    def __post_init__(self):
        if len(self.gs) != self.f.arity:
            raise ValueError("composition: wrong number of inner functions")
        if len({g.arity for g in self.gs}) > 1:
            raise ValueError("composition: inner arities differ")
        if not self.gs and self.f.arity:
            raise ValueError("composition: empty inner list")

    @property
    def arity(self) -> int:
        return self.gs[0].arity if self.gs else 0


@dataclass(frozen=True)
class PrimRec:
    """f(xs, 0) = base(xs); f(xs, n+1) = step(xs, n, f(xs, n))."""

    base: "PRProgram"
    step: "PRProgram"

    def __post_init__(self):
        if self.step.arity != self.base.arity + 2:
            raise ValueError("primitive recursion: step arity must be base arity + 2")

    @property
    def arity(self) -> int:
        return self.base.arity + 1


@dataclass(frozen=True)
class IfZero:
    """cond(xs) == 0 ? then(xs) : other(xs)."""

    cond: "PRProgram"
    then: "PRProgram"
    other: "PRProgram"

    def __post_init__(self):
        if not self.cond.arity == self.then.arity == self.other.arity:
            raise ValueError("if-zero: branch arities differ")

    @property
    def arity(self) -> int:
        return self.cond.arity


@dataclass(frozen=True)
class BoundedSearch:
    """f(xs, b) = least z < b with pred(xs, z) == 0, else b."""

    pred: "PRProgram"

    @property
    def arity(self) -> int:
        return self.pred.arity


@dataclass(frozen=True)
class BinRec:
    """f(xs, 0) = base(xs); f(xs, n) = step(xs, n, f(xs, n // 2)) for n > 0."""

    base: "PRProgram"
    step: "PRProgram"

    def __post_init__(self):
        if self.step.arity != self.base.arity + 2:
            raise ValueError("binary recursion: step arity must be base arity + 2")

    @property
    def arity(self) -> int:
        return self.base.arity + 1


@dataclass(frozen=True)
class Native:
    """A registered function family ``name`` with fixed integer parameters."""

    name: str
    params: tuple[int, ...] = ()

    @property
    def arity(self) -> int:
        return NATIVES[self.name][0]


PRProgram = Union[Zero, SuccF, Proj, Compose, PrimRec, IfZero, BoundedSearch, BinRec, Native]

# name -> (arity, fn(params, args, fuel))
NATIVES: dict[str, tuple[int, Callable]] = {}


def register_native(name: str, arity: int, fn: Callable) -> None:
    NATIVES[name] = (arity, fn)


def eval_pr(prog: PRProgram, args: list[int] | tuple[int, ...], fuel=None) -> int:
    """Value of ``prog`` at ``args``."""
    fuel = as_fuel(fuel)
    args = tuple(args)
    if len(args) != prog.arity:
        raise ValueError(f"arity mismatch: program takes {prog.arity}, got {len(args)}")
    if any(not isinstance(a, int) or a < 0 for a in args):
        raise ValueError("arguments must be natural numbers")
    return _eval(prog, args, fuel)


def _eval(p: PRProgram, xs: tuple[int, ...], fuel: Fuel) -> int:
    fuel.spend()
    if isinstance(p, Zero):
        return 0
    if isinstance(p, SuccF):
        return xs[0] + 1
    if isinstance(p, Proj):
        return xs[p.index]
    if isinstance(p, Compose):
        inner = tuple(_eval(g, xs, fuel) for g in p.gs)
        return _eval(p.f, inner, fuel)
    if isinstance(p, PrimRec):
        *ys, n = xs
        ys = tuple(ys)
        acc = _eval(p.base, ys, fuel)
        for i in range(n):
            acc = _eval(p.step, ys + (i, acc), fuel)
        return acc
    if isinstance(p, IfZero):
        branch = p.then if _eval(p.cond, xs, fuel) == 0 else p.other
        return _eval(branch, xs, fuel)
    if isinstance(p, BoundedSearch):
        *ys, b = xs
        ys = tuple(ys)
        for z in range(b):
            if _eval(p.pred, ys + (z,), fuel) == 0:
                return z
        return b
    if isinstance(p, BinRec):
        *ys, n = xs
        ys = tuple(ys)
        chain = []
        while n > 0:
            chain.append(n)
            n //= 2
        acc = _eval(p.base, ys, fuel)
        for m in reversed(chain):
            acc = _eval(p.step, ys + (m, acc), fuel)
        return acc
    if isinstance(p, Native):
        return NATIVES[p.name][1](p.params, xs, fuel)
    raise TypeError(f"not a PR program: {p!r}")


# -- elaboration of sugar into the core ----------------------------------------

def const(k: int, arity: int) -> PRProgram:
    p: PRProgram = Zero(arity)
    for _ in range(k):
        p = Compose(SuccF(), (p,))
    return p


def _pred() -> PRProgram:
    return PrimRec(Zero(0), Proj(0, 2))


def _monus() -> PRProgram:
    # monus(x, y) = x - y truncated; recursion on y
    return PrimRec(Proj(0, 1), Compose(_pred(), (Proj(2, 3),)))


def _add() -> PRProgram:
    return PrimRec(Proj(0, 1), Compose(SuccF(), (Proj(2, 3),)))


def _mul() -> PRProgram:
    return PrimRec(Zero(1), Compose(_add(), (Proj(2, 3), Proj(0, 3))))


def _sg() -> PRProgram:
    # sg(0) = 0, sg(n+1) = 1
    return PrimRec(Zero(0), const(1, 2))


def _ifzero_core(cond, then, other) -> PRProgram:
    # then * (1 - sg(cond)) + other * sg(cond)
    k = cond.arity
    sgc = Compose(_sg(), (cond,))
    nsgc = Compose(_monus(), (const(1, k), sgc))
    return Compose(_add(), (Compose(_mul(), (then, nsgc)), Compose(_mul(), (other, sgc))))


def _bsearch_core(pred) -> PRProgram:
    # f(xs, 0) = 0; f(xs, b+1) = f(xs, b) if f(xs, b) < b else (b if pred(xs, b) == 0 else b + 1)
    k = pred.arity - 1
    xs = tuple(Proj(i, k + 2) for i in range(k))
    b, acc = Proj(k, k + 2), Proj(k + 1, k + 2)
    found_earlier = Compose(_monus(), (b, acc))  # > 0 iff acc < b
    here = Compose(pred, xs + (b,))
    inner = _ifzero_core(here, b, Compose(SuccF(), (b,)))
    step = _ifzero_core(found_earlier, inner, acc)
    return PrimRec(Zero(k), step)


def _half() -> PRProgram:
    # half(n): least z < n + 1 with n < 2z + 2, i.e. n - (2z + 1) == 0
    two_z_plus_1 = Compose(SuccF(), (Compose(_add(), (Proj(1, 2), Proj(1, 2))),))
    pred = Compose(_monus(), (Proj(0, 2), two_z_plus_1))
    return Compose(_bsearch_core(pred), (Proj(0, 1), Compose(SuccF(), (Proj(0, 1),))))


def _lift(p: PRProgram, extra: int) -> PRProgram:
    """``p`` with ``extra`` ignored arguments appended."""
    k = p.arity
    if k:
        return Compose(p, tuple(Proj(i, k + extra) for i in range(k)))
    if isinstance(p, Zero):
        return Zero(extra)
    if isinstance(p, Compose):
        if not p.gs:
            return _lift(p.f, extra)
        return Compose(p.f, tuple(_lift(g, extra) for g in p.gs))
    raise ValueError(f"cannot lift {p!r}")


def _binrec_core(base, step) -> PRProgram:
    # Course-of-values on n // 2 realized by an n-step primitive recursion that
    # recomputes along the halving chain: g(xs, n, j) iterates step from the
    # top bit downwards.  Evaluating the elaborated form is exponential in the
    # bit length; it exists for small-input agreement checks only.
    k = base.arity
    half = _half()

    def shr(j_prog, n_prog, arity):
        # n >> j by j-fold halving
        it = PrimRec(Proj(0, 1), Compose(half, (Proj(2, 3),)))
        return Compose(it, (n_prog, j_prog))

    # f(xs, n) computed as h(xs, n, n) where h(xs, n, t) = f(xs, n >> bitsleft) ...
    # Simpler correct form: f(xs, n) = F(xs, n, L) with L = n (enough halvings):
    # F(xs, n, 0) = f(xs, n >> n) = f(xs, 0) = base(xs)
    # F(xs, n, j+1) = value at m = n >> (n - (j+1)) given value at m // 2.
    a = k + 3  # xs, n, j, acc
    xs = tuple(Proj(i, a) for i in range(k))
    n, j, acc = Proj(k, a), Proj(k + 1, a), Proj(k + 2, a)
    shift = Compose(_monus(), (n, Compose(SuccF(), (j,))))
    m = shr(shift, n, a)
    stepped = Compose(step, xs + (m, acc))
    body = _ifzero_core(m, acc, stepped)
    F = PrimRec(_lift(base, 1), body)
    k1 = k + 1
    return Compose(F, tuple(Proj(i, k1) for i in range(k1)) + (Proj(k, k1),))


def elaborate(p: PRProgram) -> PRProgram:
    """Rewrite sugar into Zero/SuccF/Proj/Compose/PrimRec."""
    if isinstance(p, (Zero, SuccF, Proj)):
        return p
    if isinstance(p, Compose):
        return Compose(elaborate(p.f), tuple(elaborate(g) for g in p.gs))
    if isinstance(p, PrimRec):
        return PrimRec(elaborate(p.base), elaborate(p.step))
    if isinstance(p, IfZero):
        return _ifzero_core(elaborate(p.cond), elaborate(p.then), elaborate(p.other))
    if isinstance(p, BoundedSearch):
        return _bsearch_core(elaborate(p.pred))
    if isinstance(p, BinRec):
        return _binrec_core(elaborate(p.base), elaborate(p.step))
    if isinstance(p, Native):
        raise ValueError(f"native function {p.name} has no core elaboration")
    raise TypeError(f"not a PR program: {p!r}")


def is_core(p: PRProgram) -> bool:
    if isinstance(p, (Zero, SuccF, Proj)):
        return True
    if isinstance(p, Compose):
        return is_core(p.f) and all(is_core(g) for g in p.gs)
    if isinstance(p, PrimRec):
        return is_core(p.base) and is_core(p.step)
    return False


# -- s-expression form ---------------------------------------------------------

def pr_to_sexp(p: PRProgram) -> str:
    if isinstance(p, Zero):
        return f"(zero {p.arity})"
    if isinstance(p, SuccF):
        return "(succ)"
    if isinstance(p, Proj):
        return f"(proj {p.index} {p.arity})"
    if isinstance(p, Compose):
        return "(comp " + " ".join(pr_to_sexp(q) for q in (p.f, *p.gs)) + ")"
    if isinstance(p, PrimRec):
        return f"(rec {pr_to_sexp(p.base)} {pr_to_sexp(p.step)})"
    if isinstance(p, IfZero):
        return f"(ifz {pr_to_sexp(p.cond)} {pr_to_sexp(p.then)} {pr_to_sexp(p.other)})"
    if isinstance(p, BoundedSearch):
        return f"(bsearch {pr_to_sexp(p.pred)})"
    if isinstance(p, BinRec):
        return f"(binrec {pr_to_sexp(p.base)} {pr_to_sexp(p.step)})"
    if isinstance(p, Native):
        return "(native " + " ".join([p.name, *map(str, p.params)]) + ")"
    raise TypeError(p)


def pr_parse(text: str) -> PRProgram:
    toks = re.findall(r"\(|\)|[^\s()]+", text)
    pos = 0

    def nxt():
        nonlocal pos
        if pos >= len(toks):
            raise ValueError("unexpected end of PR program")
        pos += 1
        return toks[pos - 1]

    def node() -> PRProgram:
        if nxt() != "(":
            raise ValueError("expected '('")
        head = nxt()
        items: list = []
        while toks[pos] != ")" if pos < len(toks) else False:
            if toks[pos] == "(":
                items.append(node())
            else:
                items.append(nxt())
        if nxt() != ")":
            raise ValueError("expected ')'")
        if head == "zero":
            return Zero(int(items[0]) if items else 0)
        if head == "succ":
            return SuccF()
        if head == "proj":
            return Proj(int(items[0]), int(items[1]))
        if head == "comp":
            return Compose(items[0], tuple(items[1:]))
        if head == "rec":
            return PrimRec(items[0], items[1])
        if head == "ifz":
            return IfZero(*items)
        if head == "bsearch":
            return BoundedSearch(items[0])
        if head == "binrec":
            return BinRec(items[0], items[1])
        if head == "native":
            if items[0] not in NATIVES:
                raise ValueError(f"unknown native function {items[0]}")
            return Native(items[0], tuple(int(x) for x in items[1:]))
        raise ValueError(f"unknown PR head {head}")

    p = node()
    if pos != len(toks):
        raise ValueError("trailing input after PR program")
    return p
