"""Propositional reasoning by tableau refutation, emitting derivations.

Atoms are the maximal subformulas that are not built from Bot, ->, and, or
(plus anything listed as opaque).  A refutation works on a set of available
facts, each a derivation node, and closes a branch by deriving Bot.
Branch results are combined with the deduction theorem.
"""

from __future__ import annotations

from .. import kernel as K
from ..syntax import BOT, And, Bot, Formula, Imp, Or, neg, to_sexp
from .nd import BuildError, D, ax, discharge, dne, efq, hyp, mp


class NotTautology(BuildError):
    pass


def _is_neg(f: Formula) -> bool:
    return isinstance(f, Imp) and f.right is BOT


class _Refuter:
    def __init__(self, opaque: frozenset):
        self.opaque = opaque

    def compound(self, f: Formula) -> bool:
        return isinstance(f, (Imp, And, Or)) and f not in self.opaque

    def refute(self, facts: dict) -> D:
        """facts: formula -> node.  Returns a node for Bot or raises NotTautology."""
        facts = dict(facts)
        todo = list(facts)
        branching: list[Formula] = []
        while True:
            while todo:
                f = todo.pop()
                d = facts[f]
                if f is BOT:
                    return d
                if _is_neg(f) and f.left in facts:
                    return mp(facts[f.left], d)
                nf = neg(f)
                if nf in facts:
                    return mp(d, facts[nf])
                for g, dg in self.expand(f, d, facts):
                    if g not in facts:
                        facts[g] = dg
                        todo.append(g)
                if self.branches(f):
                    branching.append(f)
            # pick a branching fact that is still open
            live = []
            for f in branching:
                if isinstance(f, Imp):
                    if f.right in facts or neg(f.left) in facts:
                        continue
                    if f.left in facts:
                        facts[f.right] = mp(facts[f.left], facts[f])
                        todo.append(f.right)
                        break
                    nb = neg(f.right)
                    if nb in facts and neg(f.left) not in facts:
                        facts[neg(f.left)] = _contrapose(facts[f], facts[nb])
                        todo.append(neg(f.left))
                        break
                elif f.left in facts or f.right in facts:
                    continue
                live.append(f)
            else:
                if not live:
                    raise NotTautology("no contradiction among: " +
                                       ", ".join(to_sexp(x) for x in facts))
                return self.split(live[0], facts)
            continue

    def branches(self, f: Formula) -> bool:
        if f in self.opaque:
            return False
        if isinstance(f, Or):
            return True
        return isinstance(f, Imp) and not _is_neg(f)

    def expand(self, f: Formula, d: D, facts: dict):
        """Non-branching consequences of one fact."""
        if f in self.opaque:
            return
        if isinstance(f, And):
            yield f.left, mp(d, ax(K.AND_E1, f.left, f.right))
            yield f.right, mp(d, ax(K.AND_E2, f.left, f.right))
        elif _is_neg(f) and self.compound(f.left):
            g = f.left
            if _is_neg(g):          # ~~a
                yield g.left, dne(d)
            elif isinstance(g, Imp):  # ~(a -> b): a, ~b
                yield g.left, _neg_imp_left(d)
                yield neg(g.right), _neg_imp_right(d)
            elif isinstance(g, Or):   # ~(a or b): ~a, ~b
                for side, schema in ((g.left, K.OR_I1), (g.right, K.OR_I2)):
                    h = hyp(side)
                    bot = mp(mp(h, ax(schema, g.left, g.right)), d)
                    yield neg(side), discharge(bot, side)
            elif isinstance(g, And):  # ~(a and b): a -> ~b
                ha, hb = hyp(g.left), hyp(g.right)
                bot = mp(mp(hb, mp(ha, ax(K.AND_I, g.left, g.right))), d)
                yield Imp(g.left, neg(g.right)), discharge(discharge(bot, g.right), g.left)

    def split(self, f: Formula, facts: dict) -> D:
        if isinstance(f, Or):
            a, b = f.left, f.right
            left = discharge(self.refute({**facts, a: hyp(a)}), a)
            right = discharge(self.refute({**facts, b: hyp(b)}), b)
            return mp(facts[f], mp(right, mp(left, ax(K.OR_E, a, b, BOT))))
        # a -> b: either ~a closes, giving a, so b is available
        a, b = f.left, f.right
        na = neg(a)
        d_a = dne(discharge(self.refute({**facts, na: hyp(na)}), na))
        d_b = mp(d_a, facts[f])
        return self.refute({**facts, a: d_a, b: d_b})


def _neg_imp_left(d: D) -> D:
    """a from ~(a -> b)."""
    g = d.formula.left
    a, b = g.left, g.right
    na = neg(a)
    ha, hna = hyp(a), hyp(na)
    imp = discharge(efq(mp(ha, hna), b), a)       # under ~a: a -> b
    bot = mp(imp, d)
    return dne(discharge(bot, na))


def _neg_imp_right(d: D) -> D:
    """~b from ~(a -> b)."""
    g = d.formula.left
    a, b = g.left, g.right
    hb = hyp(b)
    imp = mp(hb, ax(K.K, b, a))
    return discharge(mp(imp, d), b)


def _contrapose(d_imp: D, d_nb: D) -> D:
    """~a from a -> b and ~b."""
    a = d_imp.formula.left
    ha = hyp(a)
    bot = mp(mp(ha, d_imp), d_nb)
    return discharge(bot, a)


def refute(nodes, opaque=()) -> D:
    """Bot from the given nodes, whose formulas must be propositionally inconsistent."""
    facts = {}
    for d in nodes:
        facts.setdefault(d.formula, d)
    return _Refuter(frozenset(opaque)).refute(facts)


def tauto_node(goal: Formula, premises=(), opaque=()) -> D:
    """Derive ``goal`` from premise nodes by propositional reasoning."""
    for d in premises:
        if d.formula is goal:
            return d
    opaque = frozenset(opaque)
    if goal not in opaque:
        # introduction rules first: they keep proofs short
        if isinstance(goal, Imp) and goal.right is not BOT:
            a = goal.left
            return discharge(tauto_node(goal.right, [*premises, hyp(a)], opaque), a)
        if isinstance(goal, And):
            da = tauto_node(goal.left, premises, opaque)
            db = tauto_node(goal.right, premises, opaque)
            return mp(db, mp(da, ax(K.AND_I, goal.left, goal.right)))
    if goal is BOT:
        return refute(premises, opaque)
    ng = neg(goal)
    bot = refute([*premises, hyp(ng)], opaque)
    if ng not in bot.hyps:
        return efq(bot, goal)
    return dne(discharge(bot, ng))


def tautology(phi: Formula, opaque=()):
    """A Derivation of a propositional tautology."""
    from .nd import derivation

    return derivation(tauto_node(phi, (), opaque))


def tauto_mp(premises, goal: Formula, opaque=()) -> D:
    return tauto_node(goal, premises, opaque)


# -- biconditional helpers ------------------------------------------------------------

def iff_intro(d1: D, d2: D) -> D:
    return mp(d2, mp(d1, ax(K.AND_I, d1.formula, d2.formula)))


def iff_fwd(d: D) -> D:
    f = d.formula
    return mp(d, ax(K.AND_E1, f.left, f.right))


def iff_bwd(d: D) -> D:
    f = d.formula
    return mp(d, ax(K.AND_E2, f.left, f.right))


def iff_mp(d_iff: D, d_a: D) -> D:
    return mp(d_a, iff_fwd(d_iff))


def iff_mpr(d_iff: D, d_b: D) -> D:
    return mp(d_b, iff_bwd(d_iff))


def iff_refl(a: Formula) -> D:
    from .nd import identity

    i = identity(a)
    return iff_intro(i, i)


def iff_sym(d: D) -> D:
    return iff_intro(iff_bwd(d), iff_fwd(d))


def imp_trans(d1: D, d2: D) -> D:
    """a -> c from a -> b and b -> c."""
    a = d1.formula.left
    h = hyp(a)
    return discharge(mp(mp(h, d1), d2), a)


def iff_trans(d1: D, d2: D) -> D:
    if d1.formula.left.right is not d2.formula.left.left:
        raise BuildError("iff_trans: middle formulas differ")
    return iff_intro(imp_trans(iff_fwd(d1), iff_fwd(d2)), imp_trans(iff_bwd(d2), iff_bwd(d1)))


def iff_chain(ds) -> D:
    ds = list(ds)
    out = ds[0]
    for d in ds[1:]:
        out = iff_trans(out, d)
    return out


def iff_cong(op, d1: D, d2: D) -> D:
    """(a op b) <-> (a' op b') from a <-> a' and b <-> b'."""
    a, a2 = d1.formula.left.left, d1.formula.left.right
    b, b2 = d2.formula.left.left, d2.formula.left.right
    lhs, rhs = op(a, b), op(a2, b2)
    if lhs is rhs:
        return iff_refl(lhs)
    facts = [iff_fwd(d1), iff_bwd(d1), iff_fwd(d2), iff_bwd(d2)]
    fwd = tauto_node(Imp(lhs, rhs), facts, opaque={a, a2, b, b2})
    bwd = tauto_node(Imp(rhs, lhs), facts, opaque={a, a2, b, b2})
    return iff_intro(fwd, bwd)


def is_iff(f: Formula) -> bool:
    return (isinstance(f, And) and isinstance(f.left, Imp) and isinstance(f.right, Imp)
            and f.left.left is f.right.right and f.left.right is f.right.left)


__all__ = ["NotTautology", "tautology", "tauto_node", "tauto_mp", "refute", "iff_intro",
           "iff_fwd", "iff_bwd", "iff_mp", "iff_mpr", "iff_refl", "iff_sym", "iff_trans",
           "iff_chain", "iff_cong", "imp_trans", "is_iff", "Bot"]
