"""Arithmetic facts: closed computations, numeral (in)equalities, Sigma_1 completeness."""

from __future__ import annotations

from .. import kernel as K
from ..primrec import FuelExhausted, as_fuel
from ..semantics import Undecided, eval_term, evaluate
from ..syntax import (
    BOT, And, Bot, Eq, Exists, Forall, Formula, Imp, Less, Num, Or, PRApp, Plus,
    Succ, Term, Times, Var, free_vars, neg, substitute, to_sexp, ZERO,
)
from ..classes import Sigma, Pi, bounded_exists, bounded_forall, classify, class_le, is_delta0
from .nd import BuildError, D, all_elim, all_elim_many, ax, discharge, efq, evaluation, gen, hyp, mp
from .logic import congruence, eq_refl, eq_sym, eq_trans, ex_elim, ex_intro, rewrite_iff, fresh_var
from .prop import iff_fwd, iff_bwd, tauto_node

# numbers up to this size are handled by unary unfolding of the PA axioms
UNARY_LIMIT = 64


class EvaluatesFalse(BuildError):
    pass


# -- closed computations ---------------------------------------------------------------

def compute_fact(t: Term, fuel=None, unfold: bool = False) -> D:
    """t = k for a closed term t, with k its value."""
    if free_vars(t):
        raise BuildError(f"computeFact needs a closed term: {to_sexp(t)}")
    if isinstance(t, Num):
        return eq_refl(t)
    if unfold:
        from .unfold import unfold_fact

        return unfold_fact(t, as_fuel(fuel))
    k = eval_term(t, None, as_fuel(fuel))
    return evaluation(Eq(t, Num(k)))


def value_of(d: D) -> int:
    return d.formula.right.value


# -- numeral (in)equalities ---------------------------------------------------------------

def succ_ne_zero(k: int) -> D:
    """~(k+1 = 0)."""
    return all_elim(ax(K.SUCC_NZ), Num(k))


def numeral_distinct(j: int, k: int) -> D:
    """~(j = k) for j != k."""
    if j == k:
        raise BuildError(f"numerals {j} and {k} are equal")
    if min(j, k) > UNARY_LIMIT:
        return _distinct_by_eqb(j, k)
    return _distinct_unary(j, k)


def _distinct_unary(j: int, k: int) -> D:
    if k == 0:
        return succ_ne_zero(j - 1)
    if j == 0:
        d = succ_ne_zero(k - 1)          # ~(k = 0)
        h = hyp(Eq(ZERO, Num(k)))
        return discharge(mp(eq_sym(h), d), Eq(ZERO, Num(k)))
    inner = _distinct_unary(j - 1, k - 1)
    inj = all_elim_many(ax(K.SUCC_INJ), (Num(j - 1), Num(k - 1)))  # j = k -> j-1 = k-1
    h = hyp(Eq(Num(j), Num(k)))
    return discharge(mp(mp(h, inj), inner), Eq(Num(j), Num(k)))


def _distinct_by_eqb(j: int, k: int) -> D:
    from ..registry import clause_instance, eqb

    e = Eq(Num(j), Num(k))
    val = evaluation(Eq(eqb(Num(j), Num(k)), ZERO))        # eqb(j,k) = 0
    cl = prdef(6, 0)                                          # x=y -> eqb(x,y)=1
    h = hyp(e)
    one = mp(h, all_elim_many(cl, (Num(j), Num(k))))          # eqb(j,k) = 1
    one_zero = eq_trans(eq_sym(one), val)                    # 1 = 0
    return discharge(mp(one_zero, succ_ne_zero(0)), e)


def prdef(sym: int, cid: int, *params: int) -> D:
    """The defining clause of a registered symbol as an axiom node."""
    return ax(K.PRDEF, Num(sym), Num(cid), *map(Num, params))


def num_eq(j: int, k: int) -> D:
    """j = k or ~(j = k)."""
    return eq_refl(Num(j)) if j == k else numeral_distinct(j, k)


def less_num(i: int, k: int) -> D:
    """i < k for i < k (unary in k - i)."""
    if i >= k:
        raise BuildError(f"{i} < {k} is false")
    # i < i+1 from i = i
    l3 = all_elim_many(ax(K.LESS_S_INV), (Num(i), Num(i)))
    d = mp(mp(eq_refl(Num(i)), ax(K.OR_I2, Less(Num(i), Num(i)), Eq(Num(i), Num(i)))), l3)
    for m in range(i + 1, k):
        l3 = all_elim_many(ax(K.LESS_S_INV), (Num(i), Num(m)))
        d = mp(mp(d, ax(K.OR_I1, Less(Num(i), Num(m)), Eq(Num(i), Num(m)))), l3)
    return d


def not_less_num(i: int, k: int) -> D:
    """~(i < k) for i >= k (unary in k)."""
    if i < k:
        raise BuildError(f"~({i} < {k}) is false")
    d = all_elim(ax(K.LESS_0), Num(i))
    for m in range(1, k + 1):
        l2 = all_elim_many(ax(K.LESS_S), (Num(i), Num(m - 1)))  # i<m -> i<m-1 or i=m-1
        d = tauto_node(neg(Less(Num(i), Num(m))), [l2, d, numeral_distinct(i, m - 1)])
    return d


def less_cases(x: Term, k: int) -> D:
    """x < k -> (x=0 or x=1 or ... or x=k-1), left nested; x < 0 -> bot."""
    d = all_elim(ax(K.LESS_0), x)          # x < 0 -> bot
    disj: Formula = BOT
    for m in range(1, k + 1):
        l2 = all_elim_many(ax(K.LESS_S), (x, Num(m - 1)))
        e = Eq(x, Num(m - 1))
        new = e if m == 1 else Or(disj, e)
        goal = Imp(Less(x, Num(m)), new)
        d = tauto_node(goal, [l2, d], opaque={disj, e, Less(x, Num(m)), Less(x, Num(m - 1))})
        disj = new
    return d


def cases_to(d_cases: D, branches: list[D]) -> D:
    """Combine x<k -> P_k with branches[i]: x=i -> G into x<k -> G."""
    less = d_cases.formula.left
    if not branches:
        raise BuildError("cases_to needs at least one branch")
    goal = branches[0].formula.right
    acc = branches[0]                       # P_1 -> G
    disj = branches[0].formula.left
    for b in branches[1:]:
        e = b.formula.left
        acc = mp(b, mp(acc, ax(K.OR_E, disj, e, goal)))
        disj = Or(disj, e)
    h = hyp(less)
    return discharge(mp(mp(h, d_cases), acc), less)


# -- Delta0 and Sigma_1 completeness ---------------------------------------------------

class _Prover:
    def __init__(self, fuel, unfold: bool):
        self.fuel = as_fuel(fuel)
        self.unfold = unfold

    def fact(self, t: Term) -> D:
        return compute_fact(t, self.fuel, self.unfold)

    def truth(self, phi: Formula):
        """True/False, or None when the evaluator cannot settle it."""
        try:
            return evaluate(phi, None, self.fuel)
        except Undecided:
            return None

    def prove(self, phi: Formula, want: bool) -> D:
        """phi if want else ~phi."""
        self.fuel.spend()
        if isinstance(phi, Bot):
            if want:
                raise EvaluatesFalse("bot")
            from .nd import identity
            return identity(BOT)
        if isinstance(phi, (Eq, Less)):
            return self.atomic(phi, want)
        if isinstance(phi, (Imp, And, Or)):
            return self.connective(phi, want)
        if isinstance(phi, Forall):
            b = bounded_forall(phi)
            if b is not None and is_delta0(phi):
                return self.bounded(phi, b, want, universal=True)
            if want:
                raise BuildError(f"cannot prove an unbounded universal: {to_sexp(phi)}")
            return self.refute_forall(phi)
        if isinstance(phi, Exists):
            b = bounded_exists(phi)
            if b is not None and is_delta0(phi):
                return self.bounded(phi, b, want, universal=False)
            if not want:
                raise BuildError(f"cannot refute an unbounded existential: {to_sexp(phi)}")
            return self.witness_exists(phi)
        raise TypeError(phi)

    def atomic(self, phi, want: bool) -> D:
        ds, dt = self.fact(phi.left), self.fact(phi.right)
        a, b = value_of(ds), value_of(dt)
        if isinstance(phi, Eq):
            truth = a == b
            core = num_eq(a, b)
        else:
            truth = a < b
            core = less_num(a, b) if truth else not_less_num(a, b)
        if truth != want:
            raise EvaluatesFalse(to_sexp(phi))
        # core mentions numerals; rewrite them back into the terms
        target = phi if want else neg(phi)
        return _lift_atomic(core, ds, dt, target)

    def connective(self, phi, want: bool) -> D:
        a, b = phi.left, phi.right
        if isinstance(phi, And):
            if want:
                prems = [self.prove(a, True), self.prove(b, True)]
            else:
                prems = [self.prove(a, False)] if self.truth(a) is False else [self.prove(b, False)]
        elif isinstance(phi, Or):
            if want:
                prems = [self.prove(a, True)] if self.truth(a) is True else [self.prove(b, True)]
            else:
                prems = [self.prove(a, False), self.prove(b, False)]
        else:
            if want:
                tb = self.truth(b)
                prems = [self.prove(b, True)] if tb is True else [self.prove(a, False)]
            else:
                prems = [self.prove(a, True), self.prove(b, False)]
        goal = phi if want else neg(phi)
        return tauto_node(goal, prems, opaque={a, b})

    def bounded(self, phi, b, want: bool, universal: bool) -> D:
        x, bound, body = b
        dk = self.fact(bound)
        k = value_of(dk)
        inst = [substitute(body, x, Num(i)) for i in range(k)]
        guard = Less(x, bound)
        if universal == want:
            # all instances true (forall) or all false (not exists)
            ds = [self.prove(f, want) for f in inst]
            cases = less_cases(x, k)
            # x < bound -> x < k
            to_k = _rewrite_imp(guard, Less(x, Num(k)), dk)
            branches = []
            psi = body if want else neg(body)
            for i, di in enumerate(ds):
                e = Eq(x, Num(i))
                sub = ax(K.EQ_SUBST, psi, x, Num(i), x)   # i=x -> (psi(i) -> psi(x))
                branches.append(discharge(mp(di, mp(eq_sym(hyp(e)), sub)), e))
            if universal:
                if k == 0:
                    hg = hyp(guard)
                    core = discharge(efq(mp(mp(hg, to_k), cases), body), guard)
                else:
                    core = _compose(to_k, cases_to(cases, branches))
                return gen(core, x)
            # not exists: under x<bound and body, contradiction
            nb = neg(body)
            if k == 0:
                hg = hyp(guard)
                impl = discharge(efq(mp(mp(hg, to_k), cases), nb), guard)
            else:
                impl = _compose(to_k, cases_to(cases, branches))   # guard -> ~body
            conj = And(guard, body)
            hc = hyp(conj)
            g = mp(hc, ax(K.AND_E1, guard, body))
            bd = mp(hc, ax(K.AND_E2, guard, body))
            bot = mp(bd, mp(g, impl))
            ex = hyp(phi)
            out = ex_elim(ex, bot, conj)
            return discharge(out, phi)
        # a counterexample (forall) or a witness (exists)
        idx = None
        for i, f in enumerate(inst):
            if self.truth(f) is (not universal):
                idx = i
                break
        if idx is None:
            raise EvaluatesFalse(to_sexp(phi))
        di = self.prove(inst[idx], not universal)
        lt = _lift_less(less_num(idx, k), dk, Less(Num(idx), bound))
        if universal:
            # ~forall: instantiate at idx
            h = hyp(phi)
            imp = all_elim(h, Num(idx))
            bot = mp(mp(lt, imp), di)
            return discharge(bot, phi)
        conj = mp(di, mp(lt, ax(K.AND_I, lt.formula, di.formula)))
        return ex_intro(conj, And(guard, body), x, Num(idx))

    def witness_exists(self, phi: Exists) -> D:
        x, body = phi.var, phi.body
        n = 0
        while True:
            self.fuel.spend()
            inst = substitute(body, x, Num(n))
            if self.truth_sigma(inst):
                return ex_intro(self.prove(inst, True), body, x, Num(n))
            n += 1

    def truth_sigma(self, phi) -> bool:
        try:
            return evaluate(phi, None, self.fuel)
        except Undecided:
            return False

    def refute_forall(self, phi: Forall) -> D:
        x, body = phi.var, phi.body
        n = 0
        while True:
            self.fuel.spend()
            inst = substitute(body, x, Num(n))
            if self.truth(inst) is False:
                dn = self.prove(inst, False)
                h = hyp(phi)
                return discharge(mp(all_elim(h, Num(n)), dn), phi)
            n += 1


def _compose(d1: D, d2: D) -> D:
    a = d1.formula.left
    h = hyp(a)
    return discharge(mp(mp(h, d1), d2), a)


def _rewrite_imp(src: Formula, dst: Formula, d_eq: D) -> D:
    """src -> dst where dst replaces the bound term by its value (d_eq: t = k)."""
    h = hyp(src)
    out = mp(h, iff_fwd(rewrite_iff(d_eq, src)))
    if out.formula is not dst:
        raise BuildError("bound rewrite mismatch")
    return discharge(out, src)


def _lift_less(core: D, dk: D, target: Formula) -> D:
    """i < t from i < k and t = k."""
    out = mp(core, iff_fwd(rewrite_iff(eq_sym(dk), core.formula)))
    if out.formula is not target:
        raise BuildError("less lift mismatch")
    return out


def _lift_atomic(core: D, ds: D, dt: D, target: Formula) -> D:
    """Turn a fact about numerals a, b into one about s, t given s=a, t=b."""
    s, a = ds.formula.left, ds.formula.right
    t, b = dt.formula.left, dt.formula.right
    base = target.left if isinstance(target, Imp) and target.right is BOT else target
    mk = type(base)
    mid = mk(s, b)
    # a ? b  ->  s ? b  ->  s ? t   (rewrite one side at a time via congruence)
    step1 = _replace_side(core, mk(a, b), mid, ds, left=True)
    return _replace_side(step1, mid, mk(s, t), dt, left=False)


def _replace_side(d: D, old: Formula, new: Formula, d_eq: D, left: bool) -> D:
    if old is new:
        return d
    negated = d.formula is neg(old)
    x = fresh_var(old, new, d_eq.formula)
    mk = type(old)
    psi = mk(x, old.right) if left else mk(old.left, x)
    if negated:
        psi = neg(psi)
    t_val, t_term = d_eq.formula.right, d_eq.formula.left
    a = ax(K.EQ_SUBST, psi, x, t_val, t_term)
    return mp(d, mp(eq_sym(d_eq), a))


def sigma1_complete(phi: Formula, fuel=10**6, unfold: bool = False):
    """A Derivation of a true closed Sigma_1 sentence."""
    from .nd import derivation

    if free_vars(phi):
        raise BuildError("sigma1Complete needs a sentence")
    if not class_le(classify(phi), Sigma(1)):
        raise BuildError(f"not Sigma_1: {to_sexp(phi)}")
    p = _Prover(fuel, unfold)
    try:
        t = p.truth(phi)
    except FuelExhausted:
        raise
    if t is False:
        raise EvaluatesFalse(f"evaluates false: {to_sexp(phi)}")
    return derivation(p.prove(phi, True))


def prove_delta0(phi: Formula, fuel=None, unfold: bool = False) -> D:
    """phi or ~phi for a closed Delta0 sentence, whichever is true."""
    p = _Prover(fuel, unfold)
    return p.prove(phi, bool(p.truth(phi)))
