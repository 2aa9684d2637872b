"""Prenex equivalences: moving one quantifier across a connective, and renaming.

Each lemma returns a hypothesis-free node for a biconditional between open
formulas.  ``side`` says which operand carries the quantifier.
"""

from __future__ import annotations

from functools import lru_cache

from ..syntax import And, Exists, Forall, Formula, Imp, Or, Var, free_vars, neg, subst_strict
from .logic import alpha_exists, ex_elim, ex_intro
from .nd import BuildError, all_elim, discharge, dne, efq, gen, hyp, mp
from .prop import iff_intro, tauto_node


def _dual(q):
    return Forall if q is Exists else Exists


def pulled_quantifier(op, side: str, q):
    """The quantifier in front after pulling q out of the given operand."""
    return _dual(q) if (op is Imp and side == "left") else q


def _exI(d, body, x):
    return ex_intro(d, body, x, x)


@lru_cache(maxsize=None)
def pull(op, side: str, q, x: Var, a: Formula, b: Formula):
    """(Q x A) op B <-> Q' x (A op B) for side='left'; A op (Q x B) <-> Q x (A op B)
    for side='right'.  x must not be free in the other operand."""
    other = b if side == "left" else a
    if x.index in free_vars(other):
        raise BuildError(f"pull: {x.name} is free in the other operand")
    inner = a if side == "left" else b
    qin = q(x, inner)
    lhs = op(qin, b) if side == "left" else op(a, qin)
    c = op(a, b)
    q2 = pulled_quantifier(op, side, q)
    rhs = q2(x, c)
    atoms = {a, b, qin, rhs}

    def t(goal, *prems):
        return tauto_node(goal, list(prems), opaque=atoms)

    # link between the quantified operand and its body
    if q is Exists:
        h_in = hyp(inner)
        link = discharge(_exI(h_in, inner, x), inner)          # inner -> exists x inner
    else:
        link = discharge(all_elim(hyp(qin), x), qin)            # forall x inner -> inner

    if q2 is Forall:
        # lhs -> forall x c: c follows propositionally from lhs and the link
        hl = hyp(lhs)
        fwd = discharge(gen(t(c, hl, link), x), lhs)
        # forall x c -> lhs
        hr = hyp(rhs)
        c_x = all_elim(hr, x)
        if q is Forall:
            # need forall x inner: from c and the other side's failure
            if op is And:
                got = gen(t(inner, c_x), x)
                out = t(lhs, got, c_x)
            elif op is Or:
                n_other = neg(other)
                ho = hyp(n_other)
                got = discharge(gen(t(inner, c_x, ho), x), n_other)   # ~other -> forall x inner
                out = t(lhs, got)
            else:  # Imp, right side: A -> forall x B
                ha = hyp(a)
                got = discharge(gen(t(inner, c_x, ha), x), a)
                out = got
        else:  # exists on the left of ->: (exists x A) -> B
            he = hyp(qin)
            b_under = ex_elim(he, t(b, c_x, hyp(a)), a)
            out = discharge(b_under, qin)
        bwd = discharge(out, rhs)
        return iff_intro(fwd, bwd)

    # q2 is Exists: rhs -> lhs by eliminating the existential
    hr = hyp(rhs)
    hc = hyp(c)
    bwd = discharge(ex_elim(hr, t(lhs, hc, link), c), rhs)
    hl = hyp(lhs)
    if op is And:
        qpart = t(qin, hl)
        body_to = _exI(t(c, hyp(inner), hl), c, x)
        fwd_core = ex_elim(qpart, body_to, inner)
        fwd = discharge(fwd_core, lhs)
        return iff_intro(fwd, bwd)
    # ingredients X -> exists x c, then propositional glue
    ings = []
    if q is Exists:
        hx = hyp(qin)
        ings.append(discharge(ex_elim(hx, _exI(t(c, hyp(inner)), c, x), inner), qin))
        for xf in (other, neg(other)):
            try:
                hxf = hyp(xf)
                ings.append(discharge(_exI(t(c, hxf), c, x), xf))
            except BuildError:
                pass
    else:
        # (forall x A) -> B  ~>  exists x (A -> B)
        hb = hyp(b)
        ings.append(discharge(_exI(t(c, hb), c, x), b))
        nr = neg(rhs)
        hn = hyp(nr)
        ha = hyp(neg(a))
        bot = mp(_exI(t(c, ha), c, x), hn)
        a_d = dne(discharge(bot, neg(a)))
        ings.append(discharge(gen(a_d, x), nr))               # ~rhs -> forall x A
    fwd = discharge(t(rhs, hl, *ings), lhs)
    return iff_intro(fwd, bwd)


@lru_cache(maxsize=None)
def rename(q, x: Var, body: Formula, v: Var):
    """Q x A <-> Q v A[x:=v] for v not occurring free in Q x A."""
    new_body = subst_strict(body, {x.index: v})
    if new_body is None:
        raise BuildError("rename: capture")
    lhs, rhs = q(x, body), q(v, new_body)
    if lhs is rhs:
        from .prop import iff_refl

        return iff_refl(lhs)
    if q is Exists:
        fwd = discharge(alpha_exists(hyp(lhs), v), lhs)
        bwd = discharge(alpha_exists(hyp(rhs), x), rhs)
    else:
        hl = hyp(lhs)
        fwd = discharge(gen(all_elim(hl, v), v), lhs)
        hr = hyp(rhs)
        bwd = discharge(gen(all_elim(hr, x), x), rhs)
    return iff_intro(fwd, bwd)


@lru_cache(maxsize=None)
def neg_exists(x: Var, a: Formula):
    """forall x ~A <-> ~exists x A."""
    fa, ea, na = Forall(x, neg(a)), Exists(x, a), neg(a)
    h1 = hyp(fa)
    bot = ex_elim(hyp(ea), mp(hyp(a), all_elim(h1, x)), a)
    fwd = discharge(discharge(bot, ea), fa)
    h2 = hyp(neg(ea))
    bot2 = mp(_exI(hyp(a), a, x), h2)
    bwd = discharge(gen(discharge(bot2, a), x), neg(ea))
    return iff_intro(fwd, bwd)


@lru_cache(maxsize=None)
def neg_forall(x: Var, a: Formula):
    """exists x ~A <-> ~forall x A."""
    na = neg(a)
    en, fa = Exists(x, na), Forall(x, a)
    h_fa = hyp(fa)
    bot = ex_elim(hyp(en), mp(all_elim(h_fa, x), hyp(na)), na)
    fwd = discharge(discharge(bot, fa), en)
    h_nfa, h_nen = hyp(neg(fa)), hyp(neg(en))
    bot2 = mp(_exI(hyp(na), na, x), h_nen)
    a_d = dne(discharge(bot2, na))
    bot3 = mp(gen(a_d, x), h_nfa)
    bwd = discharge(dne(discharge(bot3, neg(en))), neg(fa))
    return iff_intro(fwd, bwd)
