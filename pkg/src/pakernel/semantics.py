"""Evaluation in the standard model.

Bounded quantifiers are decided by enumeration.  An unbounded existential is
decided true by witness search under a fuel budget; falsity of an unbounded
existential, or anything about an unbounded universal, is never claimed.
"""

from __future__ import annotations

from typing import Callable, Mapping, Union

from .classes import bounded_exists, bounded_forall
from .primrec import Fuel, FuelExhausted, as_fuel
from .syntax import (
    And, Bot, Eq, Exists, Forall, Formula, Imp, Less, Num, Or, Plus, PRApp,
    Succ, Term, Times, Var,
)

Env = Union[Mapping[int, int], Callable[[int], int], None]


class Undecided(RuntimeError):
    """The formula is outside the fragment the evaluator can settle."""


def _lookup(env: Env) -> Callable[[int], int]:
    if env is None:
        def look(i):
            raise Undecided(f"free variable x{i} has no value")
        return look
    if callable(env):
        return env
    def look(i):
        try:
            return env[i]
        except KeyError:
            raise Undecided(f"free variable x{i} has no value") from None
    return look


def eval_term(t: Term, env: Env = None, fuel=None) -> int:
    return _term(t, _lookup(env), as_fuel(fuel))


def _term(t: Term, look, fuel: Fuel) -> int:
    fuel.spend()
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Var):
        return look(t.index)
    if isinstance(t, Succ):
        return _term(t.arg, look, fuel) + 1
    if isinstance(t, Plus):
        return _term(t.left, look, fuel) + _term(t.right, look, fuel)
    if isinstance(t, Times):
        a = _term(t.left, look, fuel)
        b = _term(t.right, look, fuel)
        fuel.spend((a.bit_length() * b.bit_length()) // 4096)
        return a * b
    if isinstance(t, PRApp):
        from .registry import SYMBOLS

        args = [_term(s, look, fuel) for s in t.args]
        return SYMBOLS[t.symbol].native(args, fuel)
    raise TypeError(f"not a term: {t!r}")


def evaluate(phi: Formula, env: Env = None, fuel=None) -> bool:
    """Truth value of ``phi`` in the standard model.

    Raises :class:`Undecided` for unbounded universals and free variables
    without a value, :class:`FuelExhausted` when witness search runs dry.
    """
    return _formula(phi, _lookup(env), as_fuel(fuel))


def _extend(look, i: int, v: int):
    def look2(j):
        return v if j == i else look(j)
    return look2


def _formula(phi: Formula, look, fuel: Fuel) -> bool:
    fuel.spend()
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, Eq):
        return _term(phi.left, look, fuel) == _term(phi.right, look, fuel)
    if isinstance(phi, Less):
        return _term(phi.left, look, fuel) < _term(phi.right, look, fuel)
    if isinstance(phi, Imp):
        return (not _formula(phi.left, look, fuel)) or _formula(phi.right, look, fuel)
    if isinstance(phi, And):
        return _formula(phi.left, look, fuel) and _formula(phi.right, look, fuel)
    if isinstance(phi, Or):
        return _formula(phi.left, look, fuel) or _formula(phi.right, look, fuel)
    if isinstance(phi, Forall):
        b = bounded_forall(phi)
        if b is None:
            raise Undecided("unbounded universal quantifier")
        y, bound, body = b
        k = _term(bound, look, fuel)
        return all(_formula(body, _extend(look, y.index, v), fuel) for v in range(k))
    if isinstance(phi, Exists):
        b = bounded_exists(phi)
        if b is not None:
            y, bound, body = b
            k = _term(bound, look, fuel)
            return any(_formula(body, _extend(look, y.index, v), fuel) for v in range(k))
        return find_witness(phi, look, fuel) is not None
    raise TypeError(f"not a formula: {phi!r}")


def find_witness(phi: Exists, look, fuel: Fuel) -> int | None:
    """Least witness of an unbounded existential; never returns None on its own,
    it raises FuelExhausted instead (falsity is not semi-decidable)."""
    v = 0
    while True:
        try:
            if _formula(phi.body, _extend(look, phi.var.index, v), fuel):
                return v
        except Undecided:
            pass
        v += 1
        fuel.spend()


def witness(phi: Exists, env: Env = None, fuel=None) -> int:
    return find_witness(phi, _lookup(env), as_fuel(fuel))


__all__ = ["evaluate", "eval_term", "witness", "Undecided", "FuelExhausted"]
