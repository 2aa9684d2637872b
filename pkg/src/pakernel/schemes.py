"""Schemes, scheme proofs <t, p> and their transformations.

A numeral scheme is a formula with a designated variable; its n-th instance
substitutes the numeral n.  A formula scheme maps the code of psi to the
code of S(psi).  A scheme proof pairs a selector program t, which maps an
instance index to the code of a proof of that instance, with an optional
universal proof p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from . import encoding as enc
from . import kernel as K
from .builder.logic import eq_sym, fresh_var, rewrite_to
from .builder.nd import (
    BuildError, Derivation, all_elim, all_elim_many, ax, derivation, discharge, efq, from_proof, gen, hyp, mp,
)
from .builder.prop import tauto_node
from .primrec import (
    BinRec, BoundedSearch, Compose, FuelExhausted, IfZero, Native, PrimRec, PRProgram, Proj,
    SuccF, Zero, as_fuel, eval_pr, pr_parse, pr_to_sexp, register_native,
)
from .proofs import MP, Axiom, Line, Proof
from .registry import certsel, ciproof, cimap, prf
from .syntax import (
    BOT, And, Eq, Exists, Forall, Formula, Imp, Less, Num, Or, Succ, Var, ZERO, all_vars,
    free_vars, forall_lt, parse, subst_strict, to_sexp,
)

INSTANCE_SAMPLED = "InstanceSampled"
FULL_UNIVERSAL = "FullUniversal"
DEFAULT_SAMPLE = tuple(range(21))


class SchemeError(ValueError):
    pass


@dataclass(frozen=True)
class NumeralScheme:
    phi: Formula
    x: Var

    def __post_init__(self):
        extra = free_vars(self.phi) - {self.x.index}
        if extra:
            raise SchemeError(f"scheme formula has free variables besides {self.x.name}")

    def instance(self, n: int) -> Formula:
        out = subst_strict(self.phi, {self.x.index: Num(n)})
        if out is None:
            raise SchemeError("numeral substitution failed")
        return out


@dataclass(frozen=True)
class FormulaScheme:
    s_map: PRProgram

    def instance(self, c: int) -> Formula:
        phi = enc.try_decode(eval_pr(self.s_map, [c]))
        if not isinstance(phi, Formula):
            raise SchemeError("scheme map did not produce a formula")
        return phi


Scheme = Union[NumeralScheme, FormulaScheme]


@dataclass(frozen=True)
class SchemeProof:
    t: PRProgram
    p: Proof | None = None
    cert_level: str = INSTANCE_SAMPLED

    def __post_init__(self):
        if self.cert_level == FULL_UNIVERSAL:
            if self.p is None or not K.check_proof(self.p).accepted:
                raise SchemeError("a universal scheme proof needs a checked proof")
            if not isinstance(self.p.conclusion, Forall):
                raise SchemeError("a universal scheme proof must end in a universal statement")


@dataclass(frozen=True)
class InstanceVerdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_scheme_instance(sp: SchemeProof, sch: Scheme, n: int, fuel=None) -> InstanceVerdict:
    """Does t(n) code a checked proof of the n-th instance?"""
    try:
        c = eval_pr(sp.t, [n], as_fuel(fuel if fuel is not None else 10**7))
    except FuelExhausted:
        return InstanceVerdict(False, "selector ran out of fuel")
    except Exception as exc:
        return InstanceVerdict(False, f"selector failed: {exc}")
    p = enc.try_decode(c) if c > 0 else None
    if not isinstance(p, Proof):
        return InstanceVerdict(False, f"t({n}) = {c} does not decode to a proof")
    try:
        goal = sch.instance(n)
    except Exception as exc:
        return InstanceVerdict(False, f"no instance at {n}: {exc}")
    if not K.prf_check(p, goal):
        return InstanceVerdict(False, "decoded proof does not prove the instance")
    return InstanceVerdict(True)


# -- strongly provable -> provable -> weakly provable ----------------------------------------

def _append_instance(params, xs, fuel):
    q = enc.decode(params[0])
    n = xs[0]
    last = q.lines[-1].formula
    inst = K.make_axiom(K.ALL_ELIM, last.body, last.var, Num(n))
    k = len(q.lines)
    out = Proof(q.lines + (inst, Line(inst.formula.right, MP(k - 1, k))))
    return enc.encode(out)


register_native("s2p", 1, _append_instance)


def strong_to_provable(q) -> SchemeProof:
    """Selector for the instances of forall x phi from a proof of it."""
    p = q.proof if isinstance(q, Derivation) else q
    if not isinstance(p, Proof) or not K.check_proof(p).accepted:
        raise SchemeError("input proof does not check")
    if not isinstance(p.conclusion, Forall):
        raise SchemeError("input proof does not end in a universal statement")
    if free_vars(p.conclusion):
        raise SchemeError("universal statement must be closed")
    return SchemeProof(Native("s2p", (enc.encode(p),)), p, INSTANCE_SAMPLED)


def scheme_of(sp: SchemeProof) -> NumeralScheme:
    """The numeral scheme a universal proof is about."""
    if sp.p is None or not isinstance(sp.p.conclusion, Forall):
        raise SchemeError("no universal statement attached")
    f = sp.p.conclusion
    return NumeralScheme(f.body, f.var)


def instance_extract(sp: SchemeProof, sch: NumeralScheme, n: int, fuel=None) -> Derivation:
    v = check_scheme_instance(sp, sch, n, fuel)
    if not v.ok:
        raise SchemeError(f"instance {n} fails: {v.reason}")
    p = enc.decode(eval_pr(sp.t, [n], as_fuel(fuel)))
    return Derivation(p.conclusion, p)


# -- the consistency scheme ---------------------------------------------------------------

def consistency_scheme() -> NumeralScheme:
    x = Var(0)
    return NumeralScheme(Eq(prf(x, Num(enc.encode(BOT))), Num(0)), x)


def consistency_selector() -> SchemeProof:
    """The certificate selector, registered as an opaque symbol."""
    return SchemeProof(certsel.program)


def box(code_term) -> Formula:
    """Exists u prf(u, y) = 1 for the given code term."""
    u = fresh_var(code_term) if not isinstance(code_term, int) else Var(0)
    if isinstance(code_term, int):
        code_term = Num(code_term)
    return Exists(u, Eq(prf(u, code_term), Num(1)))


def box_bot_instances(ns=DEFAULT_SAMPLE):
    """Proofs of prf(n, code(box bot)) = 0: each n fails to prove box bot."""
    from .builder.arith import sigma1_complete

    c = enc.encode(box(enc.encode(BOT)))
    out = []
    for n in ns:
        out.append(sigma1_complete(Eq(prf(Num(n), Num(c)), Num(0))))
    return out


# -- complete induction --------------------------------------------------------------------

def ci_formula(psi: Formula, x: Var, y: Var) -> Formula:
    phi = forall_lt(y, x, _rename(psi, x, y))
    return Imp(Forall(x, Imp(phi, psi)), Forall(x, psi))


def _rename(psi, x, y):
    out = subst_strict(psi, {x.index: y})
    if out is None:
        raise SchemeError("variable clash")
    return out


def ci_node(psi: Formula, x: Var = Var(0), y: Var | None = None):
    """CI(psi) by ordinary induction on phi(x) := forall y < x psi(y)."""
    if y is None:
        y = fresh_var(psi, x)
    if y is x or y.index in all_vars(psi):
        raise SchemeError(f"{y.name} is not fresh for psi")
    psi_y = _rename(psi, x, y)
    phi = forall_lt(y, x, psi_y)
    prog = Forall(x, Imp(phi, psi))
    h = hyp(prog)
    # base: forall y (y < 0 -> psi(y))
    ly = Less(y, ZERO)
    base_in = discharge(efq(mp(hyp(ly), all_elim(ax(K.LESS_0), y)), psi_y), ly)
    base = gen(base_in, y)
    # step: phi(x) -> phi(x')
    hphi = hyp(phi)
    lys = Less(y, Succ(x))
    cases = mp(hyp(lys), all_elim_many(ax(K.LESS_S), (y, x)))   # y < x or y = x
    c1 = Less(y, x)
    d1 = discharge(mp(hyp(c1), all_elim(hphi, y)), c1)
    c2 = Eq(y, x)
    psi_x = mp(hphi, all_elim(h, x))
    d2 = discharge(rewrite_to(eq_sym(hyp(c2)), psi_x, psi_y), c2)
    got = mp(cases, mp(d2, mp(d1, ax(K.OR_E, c1, c2, psi_y))))
    step_in = discharge(gen(discharge(got, lys), y), phi)
    step = gen(step_in, x)
    ind = ax(K.IND, phi, x)
    all_phi = mp(tauto_node(And(base.formula, step.formula), [base, step]), ind)
    concl = gen(mp(all_elim(all_phi, x), all_elim(h, x)), x)
    out = discharge(concl, prog)
    if out.formula is not ci_formula(psi, x, y):
        raise BuildError("complete induction has an unexpected shape")
    return out


def ci_selector(psi: Formula, x: Var = Var(0), y: Var | None = None) -> Derivation:
    return derivation(ci_node(psi, x, y))


@lru_cache(maxsize=None)
def ci_selector_code(c: int) -> int:
    """Code of the CI proof for the formula coded by c (designated variable x0)."""
    psi = enc.try_decode(c) if c > 0 else None
    if not isinstance(psi, Formula):
        return 0
    try:
        return enc.encode(ci_selector(psi).proof)
    except (BuildError, SchemeError):
        return 0


@lru_cache(maxsize=None)
def ci_scheme_code(c: int) -> int:
    """Code of CI(psi) for the formula coded by c, or 0."""
    psi = enc.try_decode(c) if c > 0 else None
    if not isinstance(psi, Formula):
        return 0
    x = Var(0)
    return enc.encode(ci_formula(psi, x, fresh_var(psi, x)))


def ci_scheme() -> FormulaScheme:
    return FormulaScheme(cimap.program)


def ci_scheme_proof() -> SchemeProof:
    return SchemeProof(ciproof.program)


__all__ = ["NumeralScheme", "FormulaScheme", "SchemeProof", "InstanceVerdict", "SchemeError",
           "check_scheme_instance", "strong_to_provable", "instance_extract", "scheme_of",
           "consistency_scheme", "consistency_selector", "box", "box_bot_instances",
           "ci_formula", "ci_selector", "ci_selector_code", "ci_scheme_code", "ci_scheme",
           "ci_scheme_proof", "eval_pr", "pr_parse", "pr_to_sexp", "Zero", "SuccF", "Proj",
           "Compose", "PrimRec", "IfZero", "BoundedSearch", "BinRec", "Native",
           "INSTANCE_SAMPLED", "FULL_UNIVERSAL", "DEFAULT_SAMPLE"]
