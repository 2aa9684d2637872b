"""The trusted core: a Hilbert calculus for arithmetic with registered PR symbols.

Rules are modus ponens, generalization, axiom instances of the fixed schema
catalog below, and Eval: a closed equation ``t = k`` accepted when the
meta-evaluator computes ``t`` to ``k``.  Checking never raises on bad input;
it returns a report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from .primrec import Fuel, FuelExhausted, as_fuel
from .proofs import MP, Axiom, Eval, Gen, Line, Proof
from .registry import SideCondition, clause_instance
from .syntax import (
    BOT, And, Eq, Exists, Forall, Formula, Imp, Less, Num, Or, Plus, Succ,
    Term, Times, Var, free_vars, neg, parse, subst_strict, to_sexp, ZERO,
)

# schema ids
K, S, DNE = 1, 2, 3
ALL_ELIM, ALL_DIST, EX_INTRO, EX_ELIM = 4, 5, 6, 7
AND_I, AND_E1, AND_E2, OR_I1, OR_I2, OR_E = 8, 9, 10, 11, 12, 13
EQ_REFL, EQ_SUBST = 14, 15
SUCC_NZ, SUCC_INJ, ADD_0, ADD_S, MUL_0, MUL_S, LESS_0, LESS_S, LESS_S_INV = range(20, 29)
IND = 29
PRDEF = 30

_x, _y = Var(0), Var(1)

PA_AXIOMS: dict[int, Formula] = {
    SUCC_NZ: Forall(_x, neg(Eq(Succ(_x), ZERO))),
    SUCC_INJ: Forall(_x, Forall(_y, Imp(Eq(Succ(_x), Succ(_y)), Eq(_x, _y)))),
    ADD_0: Forall(_x, Eq(Plus(_x, ZERO), _x)),
    ADD_S: Forall(_x, Forall(_y, Eq(Plus(_x, Succ(_y)), Succ(Plus(_x, _y))))),
    MUL_0: Forall(_x, Eq(Times(_x, ZERO), ZERO)),
    MUL_S: Forall(_x, Forall(_y, Eq(Times(_x, Succ(_y)), Plus(Times(_x, _y), _x)))),
    LESS_0: Forall(_x, neg(Less(_x, ZERO))),
    LESS_S: Forall(_x, Forall(_y, Imp(Less(_x, Succ(_y)), Or(Less(_x, _y), Eq(_x, _y))))),
    LESS_S_INV: Forall(_x, Forall(_y, Imp(Or(Less(_x, _y), Eq(_x, _y)), Less(_x, Succ(_y))))),
}

# slot kinds: f formula, t term, v variable, n numeral
SLOTS: dict[int, str] = {
    K: "ff", S: "fff", DNE: "f",
    ALL_ELIM: "fvt", ALL_DIST: "ffv", EX_INTRO: "fvt", EX_ELIM: "ffv",
    AND_I: "ff", AND_E1: "ff", AND_E2: "ff", OR_I1: "ff", OR_I2: "ff", OR_E: "fff",
    EQ_REFL: "t", EQ_SUBST: "fvtt", IND: "fv",
    **{k: "" for k in PA_AXIOMS},
}

SCHEMA_NAMES = {
    K: "K", S: "S", DNE: "DNE", ALL_ELIM: "ALL_ELIM", ALL_DIST: "ALL_DIST",
    EX_INTRO: "EX_INTRO", EX_ELIM: "EX_ELIM", AND_I: "AND_I", AND_E1: "AND_E1",
    AND_E2: "AND_E2", OR_I1: "OR_I1", OR_I2: "OR_I2", OR_E: "OR_E",
    EQ_REFL: "EQ_REFL", EQ_SUBST: "EQ_SUBST", SUCC_NZ: "SUCC_NZ", SUCC_INJ: "SUCC_INJ",
    ADD_0: "ADD_0", ADD_S: "ADD_S", MUL_0: "MUL_0", MUL_S: "MUL_S", LESS_0: "LESS_0",
    LESS_S: "LESS_S", LESS_S_INV: "LESS_S_INV", IND: "IND", PRDEF: "PRDEF",
}


class KernelError(ValueError):
    pass


def _slot_ok(kind: str, obj) -> bool:
    if kind == "f":
        return isinstance(obj, Formula)
    if kind == "t":
        return isinstance(obj, Term)
    if kind == "v":
        return isinstance(obj, Var)
    if kind == "n":
        return isinstance(obj, Num)
    return False


def _strict(phi: Formula, x: Var, t: Term) -> Formula:
    out = subst_strict(phi, {x.index: t})
    if out is None:
        raise SideCondition(f"{to_sexp(t)} is not free for {x.name}")
    return out


def axiom_instance(schema: int, inst: dict[int, Union[Term, Formula]]) -> Formula:
    """The axiom a schema produces under an instantiation (slot -> object)."""
    if schema == PRDEF:
        vals = [inst.get(i) for i in range(len(inst))]
        if len(vals) < 2 or not all(isinstance(v, Num) for v in vals):
            raise SideCondition("PRDEF slots must be numerals 0..k")
        return clause_instance(vals[0].value, vals[1].value, [v.value for v in vals[2:]])
    kinds = SLOTS.get(schema)
    if kinds is None:
        raise SideCondition(f"unknown schema id {schema}")
    if set(inst) != set(range(len(kinds))):
        raise SideCondition(f"schema {SCHEMA_NAMES[schema]} needs slots 0..{len(kinds) - 1}")
    for i, kind in enumerate(kinds):
        if not _slot_ok(kind, inst[i]):
            raise SideCondition(f"slot {i} of {SCHEMA_NAMES[schema]} has the wrong sort")
    a = [inst[i] for i in range(len(kinds))]
    if schema in PA_AXIOMS:
        return PA_AXIOMS[schema]
    if schema == K:
        return Imp(a[0], Imp(a[1], a[0]))
    if schema == S:
        p, q, r = a
        return Imp(Imp(p, Imp(q, r)), Imp(Imp(p, q), Imp(p, r)))
    if schema == DNE:
        return Imp(neg(neg(a[0])), a[0])
    if schema == ALL_ELIM:
        phi, x, t = a
        return Imp(Forall(x, phi), _strict(phi, x, t))
    if schema == ALL_DIST:
        p, q, x = a
        if x.index in free_vars(p):
            raise SideCondition(f"{x.name} is free in the antecedent")
        return Imp(Forall(x, Imp(p, q)), Imp(p, Forall(x, q)))
    if schema == EX_INTRO:
        phi, x, t = a
        return Imp(_strict(phi, x, t), Exists(x, phi))
    if schema == EX_ELIM:
        p, q, x = a
        if x.index in free_vars(q):
            raise SideCondition(f"{x.name} is free in the conclusion")
        return Imp(Forall(x, Imp(p, q)), Imp(Exists(x, p), q))
    if schema == AND_I:
        return Imp(a[0], Imp(a[1], And(a[0], a[1])))
    if schema == AND_E1:
        return Imp(And(a[0], a[1]), a[0])
    if schema == AND_E2:
        return Imp(And(a[0], a[1]), a[1])
    if schema == OR_I1:
        return Imp(a[0], Or(a[0], a[1]))
    if schema == OR_I2:
        return Imp(a[1], Or(a[0], a[1]))
    if schema == OR_E:
        p, q, r = a
        return Imp(Imp(p, r), Imp(Imp(q, r), Imp(Or(p, q), r)))
    if schema == EQ_REFL:
        return Eq(a[0], a[0])
    if schema == EQ_SUBST:
        phi, x, s, t = a
        return Imp(Eq(s, t), Imp(_strict(phi, x, s), _strict(phi, x, t)))
    if schema == IND:
        phi, x = a
        step = Forall(x, Imp(phi, _strict(phi, x, Succ(x))))
        return Imp(And(_strict(phi, x, ZERO), step), Forall(x, phi))
    raise SideCondition(f"unknown schema id {schema}")


def make_axiom(schema: int, *objs) -> Line:
    """A checked axiom line for the given slot objects in order."""
    inst = tuple(enumerate(objs))
    return Line(axiom_instance(schema, dict(inst)), Axiom(schema, inst))


# -- checking ------------------------------------------------------------------------------

class Theorem:
    """A formula with a checked proof.  Only :func:`check_proof` creates these."""

    __slots__ = ("formula", "proof")
    _token = object()

    def __init__(self, formula: Formula, proof: Proof, _token=None):
        if _token is not Theorem._token:
            raise TypeError("Theorems are produced by check_proof only")
        self.formula = formula
        self.proof = proof

    def __repr__(self):
        return f"Theorem({to_sexp(self.formula)})"


@dataclass
class CheckResult:
    accepted: bool
    theorem: Theorem | None = None
    errors: list[tuple[int, str]] = field(default_factory=list)

    def __bool__(self):
        return self.accepted


def is_eval_equation(phi: Formula) -> bool:
    return isinstance(phi, Eq) and isinstance(phi.right, Num) and not free_vars(phi.left)


def _check_line(lines, k: int, fuel: Fuel) -> str | None:
    line = lines[k]
    phi, j = line.formula, line.just
    if not isinstance(phi, Formula):
        return "line is not a formula"
    if isinstance(j, Axiom):
        inst = dict(j.inst)
        if len(inst) != len(j.inst):
            return "duplicate instantiation slot"
        try:
            expected = axiom_instance(j.schema, inst)
        except (SideCondition, KeyError, ValueError) as exc:
            return f"bad axiom instance: {exc}"
        return None if expected is phi else "formula is not the stated axiom instance"
    if isinstance(j, MP):
        if not (isinstance(j.minor, int) and isinstance(j.major, int)):
            return "bad MP indices"
        if not (0 <= j.minor < k and 0 <= j.major < k):
            return "MP must reference earlier lines"
        major = lines[j.major].formula
        if major is not Imp(lines[j.minor].formula, phi):
            return "MP premises do not match"
        return None
    if isinstance(j, Gen):
        if not (isinstance(j.premise, int) and 0 <= j.premise < k):
            return "Gen must reference an earlier line"
        if phi is not Forall(j.var, lines[j.premise].formula):
            return "Gen conclusion does not match"
        return None
    if isinstance(j, Eval):
        if not is_eval_equation(phi):
            return "Eval needs a closed equation with a numeral on the right"
        from .semantics import eval_term

        try:
            value = eval_term(phi.left, None, fuel)
        except FuelExhausted:
            return "Eval ran out of fuel"
        return None if value == phi.right.value else f"Eval computes {value}"
    return "unknown justification"


def check_proof(p: Proof, fuel=None) -> CheckResult:
    """Check every line; accept iff all lines are justified and there is at least one."""
    fuel = as_fuel(fuel)
    if not isinstance(p, Proof):
        return CheckResult(False, errors=[(-1, "not a proof object")])
    if not p.lines:
        return CheckResult(False, errors=[(-1, "no lines")])
    errors = []
    for k in range(len(p.lines)):
        try:
            err = _check_line(p.lines, k, fuel)
        except Exception as exc:  # totality: malformed input is a rejection
            err = f"malformed line: {type(exc).__name__}: {exc}"
        if err is not None:
            errors.append((k, err))
    if errors:
        return CheckResult(False, errors=errors)
    return CheckResult(True, Theorem(p.lines[-1].formula, p, Theorem._token))


def prf_check(p: Proof, phi: Formula, fuel=None) -> bool:
    """True iff ``p`` is an accepted proof whose last line is ``phi``."""
    try:
        if not isinstance(p, Proof) or not p.lines or p.lines[-1].formula is not phi:
            return False
        return check_proof(p, fuel).accepted
    except Exception:
        return False


# -- proof files -----------------------------------------------------------------------------

def _obj_text(obj) -> str:
    return to_sexp(obj)


def proof_to_json(p: Proof) -> dict:
    lines = []
    for line in p.lines:
        j = line.just
        if isinstance(j, Axiom):
            just = {"kind": "axiom", "args": [j.schema, [[s, _obj_text(o)] for s, o in j.inst]]}
        elif isinstance(j, MP):
            just = {"kind": "mp", "args": [j.minor, j.major]}
        elif isinstance(j, Gen):
            just = {"kind": "gen", "args": [j.premise, j.var.name]}
        else:
            just = {"kind": "eval", "args": []}
        lines.append({"formula": to_sexp(line.formula), "just": just})
    return {"lines": lines}


def proof_from_json(doc: dict) -> Proof:
    try:
        out = []
        for item in doc["lines"]:
            phi = parse(item["formula"])
            kind, args = item["just"]["kind"], item["just"]["args"]
            if kind == "axiom":
                just = Axiom(int(args[0]), tuple((int(s), parse(o)) for s, o in args[1]))
            elif kind == "mp":
                just = MP(int(args[0]), int(args[1]))
            elif kind == "gen":
                v = parse(args[1])
                if not isinstance(v, Var):
                    raise KernelError("gen variable must be a variable")
                just = Gen(int(args[0]), v)
            elif kind == "eval":
                just = Eval()
            else:
                raise KernelError(f"unknown justification kind {kind!r}")
            out.append(Line(phi, just))
        return Proof(tuple(out))
    except (KeyError, TypeError, IndexError) as exc:
        raise KernelError(f"malformed proof file: {exc}") from None


def dump_proof(p: Proof) -> str:
    return json.dumps(proof_to_json(p), indent=1)


def load_proof(text: str) -> Proof:
    return proof_from_json(json.loads(text))
