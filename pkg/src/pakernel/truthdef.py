"""Partial truth definitions and per-formula proofs of their properties.

    Tr_1(x, y)     := exists z  eval0(x, y, z) = 1
    Tr_{n+1}(x, y) := exists z  ~Tr_n(negc(sb(x)), sa(x, y, z))

``sb`` strips the leading existential block of a normal form, ``sa`` loads
the witnesses packed in ``z`` into the assignment ``y`` and ``negc`` maps a
normal form to the normal form of its negation.  Variable ``x_i`` of a coded
formula is read from ``get(y, i)``.

Tarski's condition for a normal form theta at level n is the sentence

    forall y (Tr_n(code(theta), y) <-> theta*(y)),   theta*(y) = theta[x_i := get(y, i)],

and is proved by recursion on theta from the defining clauses of the symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import encoding as enc
from .builder.logic import (
    congruence, eq_chain, eq_trans, ex_elim, ex_intro, exists_cong, forall_cong,
    rewrite_iff,
)
from .builder.nd import (
    BuildError, D, Derivation, all_elim, all_elim_many, ax, derivation, gen, gen_many, hyp, mp,
)
from .builder.prop import (
    iff_bwd, iff_chain, iff_cong, iff_fwd, iff_mp, iff_mpr, iff_refl, iff_trans, tauto_node,
)
from .builder.qlemmas import neg_exists, neg_forall
from .classes import Sigma, bounded_exists, bounded_forall, class_le, classify, is_delta0, is_nf
from .hierarchy import ClassError, prenex_with_proof
from .registry import (
    dual_nf, ev, eval0, get, hd, negc, pair, sa, sb, strip_exists, tl, tv, upd, SYMBOLS,
)
from .syntax import (
    BOT, And, Bot, Eq, Exists, Forall, Formula, Imp, Less, Num, Or, PRApp, Plus, Succ, Term,
    Times, Var, ZERO, free_vars, iff, neg, subst, subst_strict, to_sexp,
)

X_SLOT = Var(1_000_000)
Y_SLOT = Var(1_000_001)
ONE = Num(1)


def z_var(n: int) -> Var:
    return Var(1_000_001 + n)


@dataclass(frozen=True)
class TruthDefinition:
    n: int
    formula: Formula
    x: Var = X_SLOT
    y: Var = Y_SLOT

    def apply(self, code: Term, assignment: Term) -> Formula:
        out = subst_strict(self.formula, {self.x.index: code, self.y.index: assignment})
        if out is None:
            raise BuildError("truth definition applied to a capturing term")
        return out


@lru_cache(maxsize=None)
def build_tr(n: int) -> TruthDefinition:
    if n < 1:
        raise ValueError("truth definitions start at level 1")
    z = z_var(n)
    if n == 1:
        body = Eq(eval0(X_SLOT, Y_SLOT, z), ONE)
    else:
        body = neg(build_tr(n - 1).apply(negc(sb(X_SLOT)), sa(X_SLOT, Y_SLOT, z)))
    return TruthDefinition(n, Exists(z, body))


def tr(n: int, code: Term, assignment: Term) -> Formula:
    return build_tr(n).apply(code, assignment)


def code_of(phi) -> Num:
    return Num(enc.encode(phi))


def star(phi: Formula, s: Term) -> Formula:
    """phi with every free x_i replaced by get(s, i)."""
    out = subst_strict(phi, {i: get(s, Num(i)) for i in free_vars(phi)})
    if out is None:
        raise BuildError(f"variable capture reading {to_sexp(phi)} from an assignment")
    return out


def clause(sym, cid: int, *params: int) -> D:
    from . import kernel as K

    return ax(K.PRDEF, Num(sym.id), Num(cid), *map(Num, params))


# -- assignments ------------------------------------------------------------------------

def _upd_parts(s: Term):
    if isinstance(s, PRApp) and s.symbol == upd.id:
        return s.args
    return None


@lru_cache(maxsize=None)
def reduce_get(s: Term, i: int) -> D:
    """get(s, i) = r where r looks through the upd layers of s."""
    parts = _upd_parts(s)
    if parts is None:
        from .builder.logic import eq_refl

        return eq_refl(get(s, Num(i)))
    base, j, w = parts
    if j.value == i:
        return all_elim_many(clause(get, 0, i), (base, w))
    step = all_elim_many(clause(get, 1, j.value, i), (base, w))   # get(s,i) = get(base,i)
    rest = reduce_get(base, i)
    if rest.formula.left is rest.formula.right:
        return step
    return eq_trans(step, rest)


@lru_cache(maxsize=None)
def reduce_get_top(s: Term, i: int) -> D:
    """get(upd(b, j, w), i) = w or get(b, i): one layer only."""
    base, j, w = _upd_parts(s)
    if j.value == i:
        return all_elim_many(clause(get, 0, i), (base, w))
    return all_elim_many(clause(get, 1, j.value, i), (base, w))


def reduce_gets(phi: Formula, s: Term, indices, top_only: bool = False) -> D:
    """phi <-> phi' where each get(s, i), i in indices, is reduced."""
    ds = []
    cur = phi
    for i in sorted(indices):
        e = reduce_get_top(s, i) if top_only else reduce_get(s, i)
        if e.formula.left is e.formula.right:
            continue
        r = rewrite_iff(e, cur)
        ds.append(r)
        cur = r.formula.left.right
    if not ds:
        return iff_refl(phi)
    return iff_chain(ds)


# -- Delta0 level: the ev and tv clauses ----------------------------------------------------

class _Engine:
    def __init__(self):
        self.tv_cache: dict = {}
        self.d0_cache: dict = {}
        self.tarski_cache: dict = {}
        self.dual_cache: dict = {}
        self.pnx_cache: dict = {}

    def tv_lemma(self, t: Term, s: Term) -> D:
        """tv(code t, s) = t*(s)."""
        key = (t, s)
        hit = self.tv_cache.get(key)
        if hit is not None:
            return hit
        c = enc.encode(t)
        base = all_elim(clause(tv, 0, c), s)        # tv(c, s) = rhs(s)
        rhs = base.formula.right
        eqs = [base]
        cur = rhs
        if isinstance(t, Succ):
            subs = [t.arg]
        elif isinstance(t, (Plus, Times)):
            subs = [t.left, t.right]
        elif isinstance(t, PRApp):
            subs = list(t.args)
        else:
            subs = []
        for u in subs:
            e = self.tv_lemma(u, s)
            if e.formula.left is e.formula.right:
                continue
            step = congruence(e, cur)
            eqs.append(step)
            cur = step.formula.right
        out = eq_chain(eqs)
        want = subst_strict(t, {i: get(s, Num(i)) for i in free_vars(t)})
        if out.formula.right is not want:
            raise BuildError(f"tv lemma mismatch for {to_sexp(t)}")
        self.tv_cache[key] = out
        return out

    def d0_lemma(self, m: Formula, s: Term) -> D:
        """ev(code m, s) = 1 <-> m*(s) for Delta0 m."""
        key = (m, s)
        hit = self.d0_cache.get(key)
        if hit is not None:
            return hit
        c = enc.encode(m)
        base = all_elim(clause(ev, 0, c), s)        # ev(c,s)=1 <-> rhs(s)
        rhs = base.formula.left.right
        if isinstance(m, Bot):
            step = iff_refl(BOT)
        elif isinstance(m, (Eq, Less)):
            r1 = rewrite_iff(self.tv_lemma(m.left, s), rhs)
            mid = r1.formula.left.right
            r2 = rewrite_iff(self.tv_lemma(m.right, s), mid)
            step = iff_trans(r1, r2)
        elif isinstance(m, (Imp, And, Or)):
            step = iff_cong(type(m), self.d0_lemma(m.left, s), self.d0_lemma(m.right, s))
        else:
            b = bounded_forall(m) or bounded_exists(m)
            v, bound, body = b
            guard_eq = rewrite_iff(self.tv_lemma(bound, s), rhs.body.left)
            s2 = upd(s, Num(v.index), v)
            inner = self.d0_lemma(body, s2)
            inner_red = iff_trans(inner, reduce_gets(inner.formula.left.right, s2, free_vars(body), top_only=True))
            op = Imp if isinstance(m, Forall) else And
            step = (forall_cong if isinstance(m, Forall) else exists_cong)(
                iff_cong(op, guard_eq, inner_red), v)
        out = iff_trans(base, step)
        if out.formula.left.right is not star(m, s):
            raise BuildError(f"Delta0 lemma mismatch for {to_sexp(m)}")
        self.d0_cache[key] = out
        return out

    # -- normal forms at level n ---------------------------------------------------

    def dual_lemma(self, m: Formula) -> D:
        """dual_nf(m) <-> ~m, open."""
        hit = self.dual_cache.get(m)
        if hit is not None:
            return hit
        if is_delta0(m) or not isinstance(m, (Exists, Forall)):
            out = iff_refl(neg(m))
        elif isinstance(m, Exists):
            inner = forall_cong(self.dual_lemma(m.body), m.var)
            out = iff_trans(inner, neg_exists(m.var, m.body))
        else:
            inner = exists_cong(self.dual_lemma(m.body), m.var)
            out = iff_trans(inner, neg_forall(m.var, m.body))
        if out.formula.left.left is not dual_nf(m):
            raise BuildError("dual lemma mismatch")
        self.dual_cache[m] = out
        return out

    def tarski(self, theta: Formula, n: int) -> D:
        """forall Y (Tr_n(code theta, Y) <-> theta*(Y)) for a Sigma(n) normal form."""
        key = (theta, n)
        hit = self.tarski_cache.get(key)
        if hit is not None:
            return hit
        if not is_nf(theta, Sigma(n)):
            raise ClassError(f"{to_sexp(theta)} is not a Sigma({n}) normal form")
        Y, Z = Y_SLOT, z_var(n)
        C = code_of(theta)
        vs, m = strip_exists(theta)
        if len({v.index for v in vs}) != len(vs):
            raise BuildError("repeated variable in an existential block")
        # sb(C) = code m, sa(C, Y, Z) = U
        layers = [theta]
        for _ in vs:
            layers.append(layers[-1].body)
        sb_eqs = [clause(sb, 0, enc.encode(f)) for f in layers[:-1]]
        sb_eqs.append(clause(sb, 1, enc.encode(m)))
        d_sb = eq_chain(sb_eqs)
        cur_y, cur_z = Y, Z
        sa_eqs = []
        ws = []
        for f, v in zip(layers, vs):
            sa_eqs.append(all_elim_many(clause(sa, 0, enc.encode(f)), (cur_y, cur_z)))
            ws.append(hd(cur_z))
            cur_y, cur_z = upd(cur_y, Num(v.index), hd(cur_z)), tl(cur_z)
        sa_eqs.append(all_elim_many(clause(sa, 1, enc.encode(m)), (cur_y, cur_z)))
        d_sa = eq_chain(sa_eqs)
        U = cur_y
        P = build_tr(n).apply(C, Y).body
        if n == 1:
            e0 = all_elim_many(clause(eval0, 0), (C, Y, Z))
            e1 = congruence(d_sb, e0.formula.right)
            e2 = congruence(d_sa, e1.formula.right)
            eq = eq_chain([e0, e1, e2])
            core = iff_trans(rewrite_iff(eq, P), self.d0_lemma(m, U))
        else:
            mbar = dual_nf(m)
            e1 = congruence(d_sb, negc(sb(C)))
            e2 = clause(negc, 0, enc.encode(m))
            i1 = rewrite_iff(eq_trans(e1, e2), P)
            i2 = rewrite_iff(d_sa, i1.formula.left.right)
            rec = all_elim(self.tarski(mbar, n - 1), U)
            neg_rec = iff_cong(Imp, rec, iff_refl(BOT))
            a, b = star(mbar, U), star(m, U)
            dl = self.instantiate_open(self.dual_lemma(m), U)      # a <-> ~b
            glue = tauto_node(iff(neg(a), b), [dl], opaque={b} if a is neg(b) else {a, b})
            core = iff_chain([i1, i2, neg_rec, glue])
        core = iff_trans(core, reduce_gets(core.formula.left.right, U, free_vars(m)))
        m_w = core.formula.left.right
        ex = exists_cong(core, Z)
        blk = self.block_lemma(theta, vs, m_w, Z)
        out = gen(iff_trans(ex, blk), Y)
        if out.formula is not Forall(Y, iff(tr(n, C, Y), star(theta, Y))):
            raise BuildError("Tarski lemma has an unexpected shape")
        self.tarski_cache[key] = out
        return out

    def instantiate_open(self, d: D, s: Term) -> D:
        """Instantiate every free x_i of an open lemma with get(s, i)."""
        fv = sorted(free_vars(d.formula))
        vs = [Var(i) for i in fv]
        return all_elim_many(gen_many(d, vs), [get(s, Num(i)) for i in fv])

    def block_lemma(self, theta, vs, m_w, Z) -> D:
        """exists Z m_w(Z) <-> theta*(Y) where m_w reads block variable j from hd(tl^j Z)."""
        Y = Y_SLOT
        target = star(theta, Y)
        k = len(vs)
        ws = []
        cur = Z
        for _ in vs:
            ws.append(hd(cur))
            cur = tl(cur)
        b0 = target
        for _ in vs:
            b0 = b0.body
        # F_j: first j block variables replaced by their projections
        fs = [b0]
        for j in range(k):
            fs.append(subst_strict(fs[-1], {vs[j].index: ws[j]}))
        if fs[-1] is not m_w:
            raise BuildError("block lemma: matrix mismatch")

        def prefix(j, f):
            for v in reversed(vs[j:]):
                f = Exists(v, f)
            return f

        # forward: witnesses are the projections of Z
        d = hyp(m_w)
        for j in range(k - 1, -1, -1):
            phi_j = prefix(j + 1, fs[j])
            d = ex_intro(d, phi_j, vs[j], ws[j])
        ez = Exists(Z, m_w)
        fwd_core = ex_elim(hyp(ez), d, m_w) if k or Z.index not in free_vars(m_w) else None
        from .builder.nd import discharge

        fwd = discharge(fwd_core, ez)
        # backward: pack the block variables into Z
        zt: Term = ZERO
        for v in reversed(vs):
            zt = pair(v, zt)
        t_form = subst_strict(m_w, {Z.index: zt})
        chain = []
        cur_f = t_form
        r = zt
        tl_eq = None                                # tl^j(zt) = r_j
        for j, v in enumerate(vs):
            # hd(tl^j zt) = v
            rest = r.args[1]
            hd_eq = all_elim_many(clause(hd, 0), (v, rest))          # hd(pair(v,rest)) = v
            if tl_eq is not None:
                hd_eq = eq_trans(congruence(tl_eq, hd(tl_eq.formula.left)), hd_eq)
            step = rewrite_iff(hd_eq, cur_f)
            chain.append(step)
            cur_f = step.formula.left.right
            tl_step = all_elim_many(clause(tl, 0), (v, rest))         # tl(pair(v,rest)) = rest
            if tl_eq is not None:
                tl_step = eq_trans(congruence(tl_eq, tl(tl_eq.formula.left)), tl_step)
            tl_eq = tl_step
            r = rest
        if cur_f is not b0:
            raise BuildError("block lemma: projection rewriting mismatch")
        h0 = hyp(b0)
        got = iff_mpr(iff_chain(chain), h0) if chain else h0
        d = ex_intro(got, m_w, Z, zt)
        gs = [b0]
        for v in reversed(vs):
            gs.append(Exists(v, gs[-1]))
        gs.reverse()                                 # gs[j] = exists v_j .. v_{k-1} b0
        for j in range(k - 1, -1, -1):
            d = ex_elim(hyp(gs[j]), d, gs[j + 1])
        bwd = discharge(d, target)
        from .builder.prop import iff_intro

        return iff_intro(fwd, bwd)

    # -- prenex bridges at an assignment ------------------------------------------------

    def prenex(self, phi: Formula):
        """(phi_hat, open node phi <-> phi_hat)."""
        hit = self.pnx_cache.get(phi)
        if hit is None:
            hit = prenex_with_proof(phi)
            self.pnx_cache[phi] = hit
        return hit

    def bridge(self, phi: Formula, s: Term) -> tuple[Formula, D]:
        """(phi_hat, phi*(s) <-> phi_hat*(s))."""
        nf, d = self.prenex(phi)
        if nf is phi:
            return nf, iff_refl(star(phi, s))
        return nf, self.instantiate_open(d, s)

    def read(self, d: D, s: Term) -> D:
        """phi*(s) for a hypothesis-free node proving phi."""
        return self.instantiate_open(d, s)

    def lemma(self, phi: Formula, n: int, s: Term = Y_SLOT):
        """(phi_hat, Tr_n(code phi_hat, s) <-> phi_hat*(s))."""
        nf, _ = self.prenex(phi)
        if not class_le(classify(nf), Sigma(n)):
            raise ClassError(f"{to_sexp(phi)} is above Sigma({n})")
        return nf, all_elim(self.tarski(nf, n), s)


ENGINE = _Engine()


def _level_check(phi: Formula, n: int):
    if n < 1:
        raise ValueError("level must be at least 1")
    if not class_le(classify(phi), Sigma(n)):
        raise ClassError(f"{to_sexp(phi)} is in {classify(phi)!r}, above Sigma({n})")


# -- public operations ------------------------------------------------------------------

def tarski_node(phi: Formula, n: int) -> tuple[Formula, D]:
    _level_check(phi, n)
    nf, _ = ENGINE.prenex(phi)
    return nf, ENGINE.tarski(nf, n)


def tarski_proof(phi: Formula, n: int, y_map=None) -> Derivation:
    """forall y (Tr_n(code phi_hat, y) <-> phi_hat*(y)), phi_hat the normal form of phi.

    Variable x_i is read from position i of the assignment; ``y_map`` may only
    restate that convention.
    """
    if y_map is not None and any(k != v for k, v in dict(y_map).items()):
        raise ValueError("only the identity variable-to-position map is supported")
    return derivation(tarski_node(phi, n)[1])


def bot_exclusion_node(n: int) -> D:
    t = all_elim(ENGINE.tarski(BOT, n), Y_SLOT)
    return gen(iff_fwd(t), Y_SLOT)


def bot_exclusion(n: int) -> Derivation:
    """forall y ~Tr_n(code bot, y)."""
    return derivation(bot_exclusion_node(n))


def truth_from_fact(d_phi: D, n: int) -> D:
    """forall Y Tr_n(code phi_hat, Y) from a hypothesis-free proof of phi."""
    phi = d_phi.formula
    _level_check(phi, n)
    s = Y_SLOT
    nf, br = ENGINE.bridge(phi, s)
    fact = ENGINE.read(d_phi, s)
    nf_fact = iff_mp(br, fact)
    _, tl_ = ENGINE.lemma(phi, n, s)
    return gen(iff_mpr(tl_, nf_fact), s)


def axiom_truth_node(d_axiom: D, n: int) -> D:
    if d_axiom.kind not in ("ax", "eval"):
        raise BuildError("not an axiom line")
    return truth_from_fact(d_axiom, n)


def axiom_truth(a, n: int) -> Derivation:
    """forall y Tr_n(code A_hat, y) for an axiom instance A.

    ``a`` is an axiom node or a kernel (schema, instantiation) pair.
    """
    from .builder.nd import ax_inst

    if isinstance(a, D):
        node = a
    elif isinstance(a, tuple) and len(a) == 2:
        node = ax_inst(a[0], tuple(a[1]))
    else:
        raise BuildError("axiomTruth needs an axiom instance, not a bare formula")
    return derivation(axiom_truth_node(node, n))


def _unpack(lemma: D, phi: Formula, n: int, s: Term) -> D:
    """phi*(s) from forall Y Tr_n(code phi_hat, Y)."""
    nf, t = ENGINE.lemma(phi, n, s)
    expected = Forall(Y_SLOT, tr(n, code_of(nf), Y_SLOT))
    if lemma.formula is not expected:
        raise BuildError(f"premise lemma is not about {to_sexp(phi)}")
    nf_fact = iff_mp(t, all_elim(lemma, s))
    _, br = ENGINE.bridge(phi, s)
    return iff_mpr(br, nf_fact)


def _pack(d_star: D, phi: Formula, n: int, s: Term) -> D:
    nf, br = ENGINE.bridge(phi, s)
    _, t = ENGINE.lemma(phi, n, s)
    return iff_mpr(t, iff_mp(br, d_star))


def rule_respect_node(rule, premises, conclusion: Formula, n: int, var: Var | None = None) -> D:
    """forall Y Tr_n(code conclusion_hat, Y) from the premise lemmas.

    ``rule`` is "mp" (premises: lemma for A, lemma for A -> B) or "gen"
    (premises: lemma for A, ``var`` the generalized variable).
    """
    _level_check(conclusion, n)
    Y = Y_SLOT
    if rule == "mp":
        la, lab = premises
        imp = lab.formula
        a = _formula_of_lemma(la)
        ab = Imp(a, conclusion)
        d_a = _unpack(la, a, n, Y)
        d_ab = _unpack(lab, ab, n, Y)
        d_b = mp(d_a, d_ab)
        return gen(_pack(d_b, conclusion, n, Y), Y)
    if rule == "gen":
        (la,) = premises
        if not isinstance(conclusion, Forall) or (var is not None and conclusion.var is not var):
            raise BuildError("Gen conclusion must quantify the generalized variable")
        x = conclusion.var
        a = conclusion.body
        s = upd(Y, Num(x.index), x)
        d_a = _unpack(la, a, n, s)
        red = reduce_gets(d_a.formula, s, free_vars(a))
        d_ax = iff_mp(red, d_a)
        d_all = gen(d_ax, x)
        if d_all.formula is not star(conclusion, Y):
            raise BuildError("Gen lemma: assignment rewriting mismatch")
        return gen(_pack(d_all, conclusion, n, Y), Y)
    raise BuildError(f"unknown rule {rule!r}")


_LEMMA_FORMULAS: dict = {}


def _formula_of_lemma(lemma: D) -> Formula:
    f = _LEMMA_FORMULAS.get(lemma.formula)
    if f is None:
        raise BuildError("premise lemma was not produced by this module")
    return f


def register_lemma(lemma: D, phi: Formula) -> D:
    _LEMMA_FORMULAS[lemma.formula] = phi
    return lemma


def line_lemma(phi: Formula, n: int) -> Formula:
    """The statement forall Y Tr_n(code phi_hat, Y)."""
    nf, _ = ENGINE.prenex(phi)
    return Forall(Y_SLOT, tr(n, code_of(nf), Y_SLOT))


def rule_respect(rule, premises, conclusion: Formula, n: int, var: Var | None = None) -> Derivation:
    return derivation(rule_respect_node(rule, premises, conclusion, n, var))
