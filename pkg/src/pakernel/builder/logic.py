"""Quantifier and equality reasoning on derivation nodes."""

from __future__ import annotations

from .. import kernel as K
from ..syntax import (
    And, Eq, Exists, Forall, Formula, Imp, Less, Or, PRApp, Succ, Plus, Times,
    Term, Var, all_vars, free_vars, iff, subst_strict, substitute, to_sexp,
)
from .nd import BuildError, D, all_elim, ax, discharge, gen, hyp, mp
from .prop import iff_bwd, iff_fwd, iff_intro, iff_refl


def fresh_var(*objs, avoid=()) -> Var:
    used = set(avoid)
    for o in objs:
        used |= all_vars(o)
    i = 0
    while i in used:
        i += 1
    return Var(i)


# -- existentials -------------------------------------------------------------------------

def ex_intro(d: D, phi: Formula, x: Var, t: Term) -> D:
    """exists x phi from a derivation of phi[x := t]."""
    try:
        a = ax(K.EX_INTRO, phi, x, t)
    except K.SideCondition as exc:
        raise BuildError(str(exc)) from None
    return mp(d, a)


def ex_elim(d_ex: D, d_goal: D, assumption: Formula | None = None) -> D:
    """C from exists x A and a derivation of C under hypothesis A.

    x must not be free in C or in the other open hypotheses of ``d_goal``.
    """
    f = d_ex.formula
    a = f.body if assumption is None else assumption
    x = f.var
    c = d_goal.formula
    if x.index in free_vars(c):
        raise BuildError(f"{x.name} escapes its existential in {to_sexp(c)}")
    g = gen(discharge(d_goal, a), x)
    return mp(d_ex, mp(g, ax(K.EX_ELIM, a, c, x)))


def ex_elim_with(d_ex: D, build, avoid=()) -> D:
    """Like ex_elim but the witness variable is chosen fresh; ``build`` maps
    the hypothesis node A[x := v] to a derivation of the goal."""
    f = d_ex.formula
    x, body = f.var, f.body
    blocked = set(avoid) | set().union(*(free_vars(h) for h in d_ex.hyps)) if d_ex.hyps else set(avoid)
    if x.index not in blocked:
        return ex_elim(d_ex, build(hyp(body)))
    v = fresh_var(f, avoid=blocked)
    body_v = substitute(body, x, v)
    renamed = alpha_exists(d_ex, v)
    return ex_elim(renamed, build(hyp(body_v)))


def alpha_exists(d_ex: D, v: Var) -> D:
    """exists v A[x:=v] from exists x A, v fresh."""
    f = d_ex.formula
    x, body = f.var, f.body
    if v is x:
        return d_ex
    body_v = subst_strict(body, {x.index: v})
    if body_v is None or v.index in free_vars(f):
        raise BuildError("alpha_exists: variable not fresh")
    h = hyp(body)
    back = subst_strict(body_v, {v.index: x})
    if back is not body:
        raise BuildError("alpha_exists: renaming is not reversible")
    e = ex_intro(h, body_v, v, x)
    return ex_elim(d_ex, e)


def alpha_forall(d: D, v: Var) -> D:
    f = d.formula
    if v is f.var:
        return d
    if v.index in free_vars(f):
        raise BuildError("alpha_forall: variable not fresh")
    inst = all_elim(d, v)
    return gen(inst, v)


# -- quantifier congruence -------------------------------------------------------------

def forall_cong(d: D, x: Var) -> D:
    """forall x A <-> forall x B from A <-> B."""
    a, b = d.formula.left.left, d.formula.left.right
    if a is b:
        return iff_refl(Forall(x, a))
    ha = hyp(Forall(x, a))
    fwd = discharge(gen(mp(all_elim(ha, x), iff_fwd(d)), x), Forall(x, a))
    hb = hyp(Forall(x, b))
    bwd = discharge(gen(mp(all_elim(hb, x), iff_bwd(d)), x), Forall(x, b))
    return iff_intro(fwd, bwd)


def exists_cong(d: D, x: Var) -> D:
    """exists x A <-> exists x B from A <-> B."""
    a, b = d.formula.left.left, d.formula.left.right
    if a is b:
        return iff_refl(Exists(x, a))
    ea, eb = Exists(x, a), Exists(x, b)
    fwd = discharge(ex_elim(hyp(ea), ex_intro(mp(hyp(a), iff_fwd(d)), b, x, x)), ea)
    bwd = discharge(ex_elim(hyp(eb), ex_intro(mp(hyp(b), iff_bwd(d)), a, x, x)), eb)
    return iff_intro(fwd, bwd)


def quant_cong(cls, d: D, x: Var) -> D:
    return forall_cong(d, x) if cls is Forall else exists_cong(d, x)


def gen_iff(d: D, vs) -> D:
    """forall vs A <-> forall vs B (nested) from A <-> B."""
    for v in reversed(list(vs)):
        d = forall_cong(d, v)
    return d


# -- equality --------------------------------------------------------------------------

def eq_refl(t: Term) -> D:
    return ax(K.EQ_REFL, t)


def eq_sym(d: D) -> D:
    s, t = d.formula.left, d.formula.right
    x = fresh_var(s, t)
    a = ax(K.EQ_SUBST, Eq(x, s), x, s, t)   # s=t -> (s=s -> t=s)
    return mp(eq_refl(s), mp(d, a))


def eq_trans(d1: D, d2: D) -> D:
    r, s = d1.formula.left, d1.formula.right
    s2, t = d2.formula.left, d2.formula.right
    if s is not s2:
        raise BuildError(f"eq_trans: {to_sexp(s)} vs {to_sexp(s2)}")
    if r is s:
        return d2
    if s is t:
        return d1
    x = fresh_var(r, s, t)
    a = ax(K.EQ_SUBST, Eq(r, x), x, s, t)   # s=t -> (r=s -> r=t)
    return mp(d1, mp(d2, a))


def eq_chain(ds) -> D:
    ds = list(ds)
    out = ds[0]
    for d in ds[1:]:
        out = eq_trans(out, d)
    return out


def _abstract_term(t: Term, s: Term, x: Var) -> Term:
    if t is s:
        return x
    if isinstance(t, Succ):
        return Succ(_abstract_term(t.arg, s, x))
    if isinstance(t, (Plus, Times)):
        return type(t)(_abstract_term(t.left, s, x), _abstract_term(t.right, s, x))
    if isinstance(t, PRApp):
        return PRApp(t.symbol, [_abstract_term(a, s, x) for a in t.args])
    return t


def abstract(phi, s: Term, x: Var, blocked: frozenset):
    """Replace occurrences of ``s`` by ``x`` except under binders of ``blocked``."""
    if isinstance(phi, Term):
        return _abstract_term(phi, s, x)
    if isinstance(phi, (Eq, Less)):
        return type(phi)(_abstract_term(phi.left, s, x), _abstract_term(phi.right, s, x))
    if isinstance(phi, (Imp, And, Or)):
        return type(phi)(abstract(phi.left, s, x, blocked), abstract(phi.right, s, x, blocked))
    if isinstance(phi, (Forall, Exists)):
        if phi.var.index in blocked:
            return phi
        return type(phi)(phi.var, abstract(phi.body, s, x, blocked))
    return phi


def congruence(d_eq: D, ctx: Term) -> D:
    """C[s] = C[t] from s = t, replacing every occurrence of s in the term C."""
    s, t = d_eq.formula.left, d_eq.formula.right
    x = fresh_var(ctx, s, t)
    c_x = _abstract_term(ctx, s, x)
    if c_x is ctx:
        return eq_refl(ctx)
    a = ax(K.EQ_SUBST, Eq(ctx, c_x), x, s, t)
    return mp(eq_refl(ctx), mp(d_eq, a))


def rewrite_iff(d_eq: D, phi: Formula) -> D:
    """phi <-> phi' where phi' replaces the free occurrences of s by t."""
    s, t = d_eq.formula.left, d_eq.formula.right
    x = fresh_var(phi, s, t)
    blocked = free_vars(s) | free_vars(t)
    psi = abstract(phi, s, x, blocked)
    if psi is phi:
        return iff_refl(phi)
    fwd = mp(d_eq, ax(K.EQ_SUBST, psi, x, s, t))
    bwd = mp(eq_sym(d_eq), ax(K.EQ_SUBST, psi, x, t, s))
    return iff_intro(fwd, bwd)


def rewrite(d_eq: D, d_phi: D) -> D:
    """phi' from s = t and phi, replacing s by t."""
    return mp(d_phi, iff_fwd(rewrite_iff(d_eq, d_phi.formula)))


def rewrite_to(d_eq: D, d_phi: D, target: Formula) -> D:
    """Like rewrite but checks the result is ``target``."""
    out = rewrite(d_eq, d_phi)
    if out.formula is not target:
        raise BuildError(f"rewrite produced {to_sexp(out.formula)}, wanted {to_sexp(target)}")
    return out


def instantiate_all(d: D, ts) -> D:
    for t in ts:
        d = all_elim(d, t)
    return d


def iff_of(a: Formula, b: Formula) -> Formula:
    return iff(a, b)
