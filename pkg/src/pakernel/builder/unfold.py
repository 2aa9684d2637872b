"""Eval-free proofs of closed equations t = k from PA axioms and symbol clauses.

Arithmetic is unary in the right operand, so this is meant for small
operands only; ``UNFOLD_LIMIT`` bounds the numerals it will walk through.
"""

from __future__ import annotations

from .. import kernel as K
from ..primrec import Fuel, as_fuel
from ..semantics import eval_term
from ..syntax import Num, PRApp, Plus, Succ, Term, Times, to_sexp
from .logic import congruence, eq_refl, eq_trans
from .nd import BuildError, D, all_elim, all_elim_many, ax, mp

UNFOLD_LIMIT = 4096

# symbols whose value clause has id 9 and takes the arguments as parameters
_ARG_VALUE = {"get", "upd", "pair", "hd", "tl"}
# symbols with a unary value clause 0
_UNARY_VALUE = {"lst", "chk", "pnx", "negc"}


def _chain(d1: D, d2: D) -> D:
    if d1.formula.left is d1.formula.right:
        return d2
    if d2.formula.left is d2.formula.right:
        return d1
    return eq_trans(d1, d2)


def add_num(i: int, j: int) -> D:
    """i + j = i+j."""
    if j > UNFOLD_LIMIT:
        raise BuildError(f"operand {j} is too large to unfold")
    d = all_elim(ax(K.ADD_0), Num(i))
    s_ax = ax(K.ADD_S)
    for m in range(1, j + 1):
        step = all_elim_many(s_ax, (Num(i), Num(m - 1)))   # i + m = (i + (m-1))'
        d = eq_trans(step, congruence(d, step.formula.right))
    return d


def mul_num(i: int, j: int) -> D:
    """i * j = i*j."""
    if j > UNFOLD_LIMIT:
        raise BuildError(f"operand {j} is too large to unfold")
    d = all_elim(ax(K.MUL_0), Num(i))
    s_ax = ax(K.MUL_S)
    for m in range(1, j + 1):
        step = all_elim_many(s_ax, (Num(i), Num(m - 1)))   # i*m = i*(m-1) + i
        mid = congruence(d, step.formula.right)             # = i*(m-1) + i  -> v + i
        d = eq_trans(eq_trans(step, mid), add_num(i * (m - 1), i))
    return d


def _args_to_numerals(t: Term, fuel: Fuel) -> tuple[D, Term]:
    """t = t' where the immediate operands of t are replaced by their values."""
    subs = [t.left, t.right] if isinstance(t, (Plus, Times)) else list(t.args)
    d = eq_refl(t)
    cur = t
    for u in subs:
        e = _unfold(u, fuel)
        if e.formula.left is e.formula.right:
            continue
        step = congruence(e, cur)
        d = _chain(d, step)
        cur = step.formula.right
    return d, cur


def _apply(t: PRApp, fuel: Fuel) -> D:
    from ..registry import SYMBOLS

    sym = SYMBOLS[t.symbol]
    vals = [a.value for a in t.args]

    def clause(cid, *params):
        return ax(K.PRDEF, Num(sym.id), Num(cid), *map(Num, params))

    if sym.name in _ARG_VALUE:
        return clause(9, *vals)
    if sym.name in _UNARY_VALUE:
        return clause(0, vals[0])
    if sym.name == "eqb":
        i, j = vals
        if i == j:
            return mp(eq_refl(Num(i)), all_elim_many(clause(0), t.args))
        from .arith import _distinct_unary

        if min(i, j) > UNFOLD_LIMIT:
            raise BuildError("numerals too large to separate without Eval")
        return mp(_distinct_unary(i, j), all_elim_many(clause(1), t.args))
    if sym.name == "prf":
        d = all_elim_many(clause(0), t.args)                 # prf(a,b) = chk(a) * eqb(lst a, b)
        return eq_trans(d, _unfold(d.formula.right, fuel))
    raise BuildError(f"no Eval-free rule for symbol {sym.name}")


def _unfold(t: Term, fuel: Fuel) -> D:
    fuel.spend()
    if isinstance(t, Num):
        return eq_refl(t)
    if isinstance(t, Succ):
        return congruence(_unfold(t.arg, fuel), t)
    if not isinstance(t, (Plus, Times, PRApp)):
        raise BuildError(f"cannot unfold open term {to_sexp(t)}")
    d, cur = _args_to_numerals(t, fuel)
    if isinstance(cur, Plus):
        tail = add_num(cur.left.value, cur.right.value)
    elif isinstance(cur, Times):
        tail = mul_num(cur.left.value, cur.right.value)
    else:
        tail = _apply(cur, fuel)
        if not isinstance(tail.formula.right, Num):
            tail = eq_trans(tail, _unfold(tail.formula.right, fuel))
    return _chain(d, tail)


def unfold_fact(t: Term, fuel=None) -> D:
    """t = k without Eval lines; the value is cross-checked against the evaluator."""
    fuel = as_fuel(fuel)
    d = _unfold(t, fuel)
    k = eval_term(t, None, as_fuel(None))
    if d.formula.right is not Num(k):
        raise BuildError(f"unfolding disagrees with evaluation for {to_sexp(t)}")
    return d
