"""Prenex normal forms with checked equivalence proofs, and derivation levels.

The normal form of a formula in class Sigma(n) is a block of unbounded
existentials over a Pi(n-1) normal form (dually for Pi(n)); Delta0 formulas
are their own normal form.  ``prenex_with_proof`` runs one algorithm in two
modes: without proofs (used by the ``pnx`` symbol) and with a derivation of
``phi <-> nf`` for open formulas.
"""

from __future__ import annotations

from .classes import (
    DELTA0, HClass, Pi, Sigma, class_le, classify, dual, is_delta0, lead_block,
    lower, sigma_level,
)
from .syntax import (
    And, Exists, Forall, Formula, Imp, Or, Var, all_vars, closure, free_vars,
    subst_strict, to_sexp,
)


class ClassError(ValueError):
    """The formula's class is above the requested target."""


def _q(kind: str):
    return Exists if kind == "S" else Forall


class _NF:
    def __init__(self, proofs: bool):
        self.proofs = proofs
        self.cache: dict = {}

    # proof helpers are imported lazily: the no-proof mode must stay light
    def refl(self, phi):
        if not self.proofs:
            return None
        from .builder.prop import iff_refl

        return iff_refl(phi)

    def trans(self, d1, d2):
        if not self.proofs:
            return None
        from .builder.prop import iff_trans

        return iff_trans(d1, d2)

    def qcong(self, q, d, x):
        if not self.proofs:
            return None
        from .builder.logic import quant_cong

        return quant_cong(q, d, x)

    def cong(self, op, d1, d2):
        if not self.proofs:
            return None
        from .builder.prop import iff_cong

        return iff_cong(op, d1, d2)

    def nf(self, phi: Formula, target: HClass):
        key = (phi, target)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        out = self._nf(phi, target)
        self.cache[key] = out
        return out

    def _nf(self, phi: Formula, target: HClass):
        if is_delta0(phi):
            return phi, self.refl(phi)
        if not class_le(classify(phi), target) or target.kind == "D":
            raise ClassError(f"{to_sexp(phi)} is not in {target!r}")
        q = _q(target.kind)
        if isinstance(phi, q):
            body, d = self.nf(phi.body, target)
            return q(phi.var, body), self.qcong(q, d, phi.var)
        if isinstance(phi, (Forall, Exists)):
            # the dual quantifier: phi already sits one level down
            return self.nf(phi, lower(target) if target.n > 1 else DELTA0)
        op = type(phi)
        left_target = dual(target) if op is Imp else target
        a, da = self.nf(phi.left, left_target)
        b, db = self.nf(phi.right, target)
        d0 = self.cong(op, da, db)
        res, d1 = self.merge(op, a, b, target)
        return res, (self.trans(d0, d1) if self.proofs else None)

    def merge(self, op, a: Formula, b: Formula, target: HClass):
        """Normal form of (a op b) where a and b are normal forms."""
        akind = ("P" if target.kind == "S" else "S") if op is Imp else target.kind
        va, ma = lead_block(a, akind)
        vb, mb = lead_block(b, target.kind)
        phi = op(a, b)
        if not va and not vb:
            sub = lower(target)
            if is_delta0(phi):
                return phi, self.refl(phi)
            return self.nf(phi, sub)
        # rename block variables that would clash
        d_a = d_b = None
        used = set(all_vars(a) | all_vars(b))
        clash_a = free_vars(b) | {v.index for v in vb}
        new_va = []
        for v in va:
            if v.index in clash_a or v.index in {w.index for w in new_va}:
                w = Var(_fresh(used))
                used.add(w.index)
                new_va.append(w)
            else:
                new_va.append(v)
        if new_va != va:
            a, d_a = self.rename_block(a, akind, va, new_va)
            va, ma = lead_block(a, akind)
        clash_b = free_vars(ma) | {v.index for v in va}
        new_vb = []
        for v in vb:
            if v.index in clash_b or v.index in {w.index for w in new_vb}:
                w = Var(_fresh(used))
                used.add(w.index)
                new_vb.append(w)
            else:
                new_vb.append(v)
        if new_vb != vb:
            b, d_b = self.rename_block(b, target.kind, vb, new_vb)
            vb, mb = lead_block(b, target.kind)
        d_ren = None
        if self.proofs:
            from .builder.prop import iff_refl

            d_ren = self.cong(op, d_a or iff_refl(phi.left), d_b or iff_refl(phi.right))
        # pull the left block, then the right block
        qa = _q(akind)
        qt = _q(target.kind)
        matrix = op(ma, mb)
        m_nf, d_m = self.nf(matrix, lower(target)) if not is_delta0(matrix) else (matrix, self.refl(matrix))
        result = m_nf
        for v in reversed(vb):
            result = qt(v, result)
        for v in reversed(va):
            result = qt(v, result)
        if not self.proofs:
            return result, None
        return result, self.pull_proof(op, a, b, va, vb, qa, qt, d_ren, d_m)

    def pull_proof(self, op, a, b, va, vb, qa, qt, d_ren, d_m):
        from .builder.prop import iff_trans
        from .builder.qlemmas import pull

        # chain: a op b  <->  Q va (ma op b)  <->  Q va Q vb (ma op mb)  <->  ... (m_nf)
        def go_left(cur_a, rest_b, i):
            if i == len(va):
                return go_right(cur_a, rest_b, 0)
            x = cur_a.var
            d1 = pull(op, "left", qa, x, cur_a.body, rest_b)
            return iff_trans(d1, self.qcong(qt, go_left(cur_a.body, rest_b, i + 1), x))

        def go_right(ma_, cur_b, i):
            if i == len(vb):
                return d_m
            x = cur_b.var
            d1 = pull(op, "right", qt, x, ma_, cur_b.body)
            return iff_trans(d1, self.qcong(qt, go_right(ma_, cur_b.body, i + 1), x))

        d = go_left(a, b, 0)
        return iff_trans(d_ren, d) if d_ren is not None else d

    def rename_block(self, phi, kind, old, new):
        q = _q(kind)

        def go(f, i):
            if i == len(old):
                return f, self.refl(f)
            x, v = old[i], new[i]
            body, d_in = go(f.body, i + 1)
            # rename inner first, then this binder
            mid = q(x, body)
            d_c = self.qcong(q, d_in, x)
            if x is v:
                return mid, d_c
            renamed = subst_strict(body, {x.index: v})
            if not self.proofs:
                return q(v, renamed), None
            from .builder.qlemmas import rename

            return q(v, renamed), self.trans(d_c, rename(q, x, body, v))

        return go(phi, 0)


def _fresh(used) -> int:
    i = 0
    while i in used:
        i += 1
    return i


_PLAIN = _NF(False)


def prenex_with_proof(phi: Formula, target: HClass | None = None, proofs: bool = True):
    """(nf, derivation-node of phi <-> nf or None).

    Default target is the minimal class of ``phi``, so the normal form does not
    depend on which level the caller works at.
    """
    c = classify(phi)
    if target is not None and not class_le(c, target):
        raise ClassError(f"{to_sexp(phi)} is in {c!r}, above {target!r}")
    t = c
    if t.kind == "D":
        return phi, (_NF(True).refl(phi) if proofs else None)
    if proofs:
        engine = _NF(True)
        nf_, d = engine.nf(phi, t)
        plain = _PLAIN.nf(phi, t)[0]
        if plain is not nf_:
            raise AssertionError("prenex modes disagree")
        return nf_, d
    return _PLAIN.nf(phi, t)


def prenex_to_sigma(phi: Formula, n: int):
    """(nf, Derivation of closure(phi <-> nf)) for classify(phi) <= Sigma(n)."""
    from .builder.logic import gen_iff
    from .builder.nd import derivation, gen_many
    from .syntax import Var, iff

    if n < 1:
        raise ClassError("level must be at least 1")
    if not class_le(classify(phi), Sigma(n)):
        raise ClassError(f"{to_sexp(phi)} is not in Sigma({n})")
    nf_, d = prenex_with_proof(phi, Sigma(n))
    fv = sorted(free_vars(iff(phi, nf_)))
    return nf_, derivation(gen_many(d, [Var(i) for i in fv]))


def derivation_level(p) -> int:
    """Least n >= 1 with every line of the checked proof in Sigma(n)."""
    from .kernel import check_proof

    if not check_proof(p).accepted:
        raise ValueError("derivation level needs a checked proof")
    return max([1] + [sigma_level(classify(line.formula)) for line in p.lines])


__all__ = ["classify", "prenex_with_proof", "prenex_to_sigma", "derivation_level",
           "ClassError", "HClass", "Sigma", "Pi", "DELTA0"]
