"""Consistency certificates for concrete derivations.

An invariant certificate proves ``prf(d, code bot) = 0`` from the fact that
every line of the derivation coded by ``d`` is Tr_n-true under every
assignment, with the line lemmas built from axiom truth and rule respect.
An evaluation certificate just computes the proof predicate.  Both end in
the same statement; only the first carries a reason.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import encoding as enc
from . import kernel as K
from .builder.arith import compute_fact
from .builder.logic import congruence, eq_chain, eq_sym, eq_trans, rewrite_to
from .builder.nd import (
    BuildError, D, Derivation, all_elim, all_elim_many, ax, ax_inst, derivation, discharge,
    evaluation, hyp, mp,
)
from .hierarchy import derivation_level
from .primrec import Fuel, FuelExhausted, as_fuel
from .proofs import MP, Axiom, Eval, Gen, Proof
from .registry import chk, eqb, lst, pnx, prf
from .syntax import BOT, Eq, Forall, Formula, Num, Var, iff, neg, parse, to_sexp
from . import truthdef as T

BOT_CODE = enc.encode(BOT)
INVARIANT = "invariant"
EVALUATION = "evaluation"


class CertificationError(RuntimeError):
    """Certification could not finish; ``transcript`` holds the steps done so far."""

    def __init__(self, msg: str, transcript=()):
        super().__init__(msg)
        self.transcript = list(transcript)


@dataclass(frozen=True)
class ConsistencyStatement:
    d: int

    @property
    def formula(self) -> Formula:
        return Eq(prf(Num(self.d), Num(BOT_CODE)), Num(0))


def con_pa() -> Formula:
    """forall x ~(prf(x, code bot) = 1): constructible, never proved here."""
    x = Var(0)
    return Forall(x, neg(Eq(prf(x, Num(BOT_CODE)), Num(1))))


@dataclass(frozen=True)
class LineLemma:
    formula: Formula
    prenex: Formula
    tarski: Derivation
    closure: Derivation


@dataclass
class Certificate:
    kind: str
    d: int
    final: Derivation
    level: int | None = None
    line_lemmas: list[LineLemma] = field(default_factory=list)
    bot_exclusion: Derivation | None = None
    transcript: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "d": str(self.d),
            "level": self.level,
            "lineLemmas": [
                {"formula": to_sexp(l.formula), "prenex": to_sexp(l.prenex),
                 "tarski": K.proof_to_json(l.tarski.proof),
                 "closure": K.proof_to_json(l.closure.proof)}
                for l in self.line_lemmas
            ],
            "botExclusion": None if self.bot_exclusion is None else K.proof_to_json(self.bot_exclusion.proof),
            "finalDerivation": K.proof_to_json(self.final.proof),
            "transcript": list(self.transcript),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json(doc: dict) -> "Certificate":
        def der(pj):
            p = K.proof_from_json(pj)
            return Derivation(p.conclusion, p)

        lemmas = [LineLemma(parse(l["formula"]), parse(l["prenex"]), der(l["tarski"]), der(l["closure"]))
                  for l in doc.get("lineLemmas", [])]
        bx = doc.get("botExclusion")
        return Certificate(doc["kind"], int(doc["d"]), der(doc["finalDerivation"]), doc.get("level"),
                           lemmas, None if bx is None else der(bx), list(doc.get("transcript", [])))

    @staticmethod
    def loads(text: str) -> "Certificate":
        return Certificate.from_json(json.loads(text))


# -- invariant certificates ----------------------------------------------------------

def _line_node(lines, i: int, lemmas: list[D], n: int) -> D:
    line = lines[i]
    j = line.just
    if isinstance(j, Axiom):
        return T.axiom_truth_node(ax_inst(j.schema, j.inst), n)
    if isinstance(j, Eval):
        return T.axiom_truth_node(evaluation(line.formula), n)
    if isinstance(j, MP):
        return T.rule_respect_node("mp", [lemmas[j.minor], lemmas[j.major]], line.formula, n)
    if isinstance(j, Gen):
        return T.rule_respect_node("gen", [lemmas[j.premise]], line.formula, n, j.var)
    raise BuildError("unknown justification")


def code_ne_bot(phi: Formula, lemma: D, n: int, botx: D) -> D:
    """~(code phi = code bot) from the line lemma of phi and bot exclusion."""
    c = enc.encode(phi)
    if c == BOT_CODE:
        raise BuildError("a line equal to bot contradicts its own lemma")
    nf = T.ENGINE.prenex(phi)[0]
    Y = T.Y_SLOT
    assumption = Eq(Num(c), Num(BOT_CODE))
    h = hyp(assumption)
    v1 = T.clause(pnx, 0, c)                       # pnx(c) = code nf
    v2 = T.clause(pnx, 0, BOT_CODE)                # pnx(bot) = code bot
    if v1.formula.right is not T.code_of(nf):
        raise BuildError("pnx clause disagrees with the prenex normal form")
    cg = congruence(h, pnx(Num(c)))                # pnx(c) = pnx(bot)
    e = eq_chain([eq_sym(v1), cg, v2])             # code nf = code bot
    lemma_bot = rewrite_to(e, lemma, Forall(Y, T.tr(n, Num(BOT_CODE), Y)))
    bot = mp(all_elim(lemma_bot, Y), all_elim(botx, Y))
    return discharge(bot, assumption)


def final_node(d: int, last: Formula, ineq: D) -> D:
    """prf(d, code bot) = 0 from ~(code last = code bot)."""
    dn, bn, cn = Num(d), Num(BOT_CODE), Num(enc.encode(last))
    p1 = all_elim_many(T.clause(prf, 0), (dn, bn))            # prf = chk * eqb(lst d, bot)
    lv = T.clause(lst, 0, d)                                   # lst(d) = c
    if lv.formula.right is not cn:
        raise BuildError("lst clause disagrees with the last line")
    p2 = congruence(lv, p1.formula.right)
    zero = mp(ineq, all_elim_many(T.clause(eqb, 1), (cn, bn)))  # eqb(c, bot) = 0
    p3 = congruence(zero, p2.formula.right)
    p4 = all_elim(ax(K.MUL_0), chk(dn))
    return eq_chain([p1, p2, p3, p4])


def invariant_certify(s: Proof, fuel=None) -> Certificate:
    """Certificate that the checked derivation ``s`` does not prove bot."""
    fuel = as_fuel(fuel)
    if not K.check_proof(s, fuel).accepted:
        raise CertificationError("derivation does not kernel-check")
    d = enc.encode(s)
    n = derivation_level(s)
    log = [f"d={d}", f"level={n}", f"lines={len(s.lines)}"]
    nodes: list[D] = []
    lemmas: list[LineLemma] = []
    try:
        botx = T.bot_exclusion_node(n)
        log.append("botExclusion")
        for i, line in enumerate(s.lines):
            node = T.register_lemma(_line_node(s.lines, i, nodes, n), line.formula)
            nodes.append(node)
            nf, tk = T.tarski_node(line.formula, n)
            closure = derivation(node)
            fuel.spend(len(closure.proof.lines))
            lemmas.append(LineLemma(line.formula, nf, derivation(tk), closure))
            log.append(f"line {i}: {type(line.just).__name__.lower()} -> Tr_{n} lemma "
                       f"({len(closure.proof.lines)} lines)")
        ineqs = [code_ne_bot(line.formula, node, n, botx) for line, node in zip(s.lines, nodes)]
        root = final_node(d, s.lines[-1].formula, ineqs[-1])
        final = derivation(root, extra=ineqs[:-1])
        fuel.spend(len(final.proof.lines))
        log.append(f"final: prf(d, bot) = 0 ({len(final.proof.lines)} lines)")
    except FuelExhausted:
        raise CertificationError("fuel exhausted", log) from None
    except BuildError as exc:
        raise CertificationError(f"construction failed: {exc}", log) from exc
    return Certificate(INVARIANT, d, final, n, lemmas, derivation(botx), log)


# -- evaluation certificates ---------------------------------------------------------

def evaluation_certify(d: int, fuel=None, unfold: bool = False) -> Certificate:
    """Certificate by computing prf(d, code bot); works for any natural d."""
    fuel = as_fuel(fuel)
    try:
        value = prf.impl([d, BOT_CODE], fuel)
    except FuelExhausted:
        raise CertificationError("fuel exhausted", [f"d={d}"]) from None
    if value != 0:
        # the branch that would derive the statement from bot; no bot proof exists to use
        raise CertificationError("d codes a proof of bot: refusing to fabricate the other branch",
                                 [f"d={d}", "prf=1"])
    stmt = ConsistencyStatement(d).formula
    try:
        final = derivation(compute_fact(stmt.left, fuel, unfold))
    except FuelExhausted:
        raise CertificationError("fuel exhausted", [f"d={d}", "prf=0"]) from None
    return Certificate(EVALUATION, d, final, None, [], None,
                       [f"d={d}", "prf=0", f"final ({len(final.proof.lines)} lines)"])


# -- checking -------------------------------------------------------------------------

@dataclass
class Verdict:
    components: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.components) and all(ok for _, ok, _ in self.components)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.components.append((name, bool(ok), detail))

    def failures(self):
        return [(name, detail) for name, ok, detail in self.components if not ok]


def _proof_ok(der: Derivation, goal: Formula | None = None) -> tuple[bool, str]:
    p = der.proof
    if not p.lines:
        return False, "empty proof"
    if goal is not None and p.conclusion is not goal:
        return False, "conclusion differs from the stated goal"
    res = K.check_proof(p)
    if not res.accepted:
        k, why = res.errors[0]
        return False, f"line {k}: {why}"
    return True, ""


def _mentions_pp(phi) -> bool:
    from .syntax import PRApp

    stack = [phi]
    while stack:
        a = stack.pop()
        if isinstance(a, PRApp) and a.symbol in (prf.id, chk.id):
            return True
        for f in a._fields:
            val = getattr(a, f)
            if isinstance(val, tuple):
                stack.extend(val)
            elif hasattr(val, "_fields"):
                stack.append(val)
    return False


def _evaluates_pp(der: Derivation) -> bool:
    return any(isinstance(l.just, Eval) and _mentions_pp(l.formula) for l in der.proof.lines)


def structural_kind(c: Certificate) -> str:
    """Kind read off the content: Tr lemmas built on the truth definition or not."""
    if not c.line_lemmas or c.level is None or c.bot_exclusion is None:
        return EVALUATION
    n = c.level
    for l in c.line_lemmas:
        if l.closure.proof.conclusion is not T.line_lemma(l.formula, n):
            return EVALUATION
    return INVARIANT


def verify_certificate(c: Certificate) -> Verdict:
    v = Verdict()
    stmt = ConsistencyStatement(c.d).formula
    ok, why = _proof_ok(c.final, stmt)
    v.add("finalDerivation", ok, why)
    if c.kind == EVALUATION:
        v.add("structure", not c.line_lemmas and c.bot_exclusion is None and c.level is None,
              "evaluation certificates carry no Tr lemmas")
        return v
    if c.kind != INVARIANT:
        v.add("structure", False, f"unknown kind {c.kind!r}")
        return v
    s = enc.try_decode(c.d)
    if not isinstance(s, Proof) or not K.check_proof(s).accepted:
        v.add("structure", False, "d does not code a checked derivation")
        return v
    try:
        n = derivation_level(s)
    except ValueError as exc:
        v.add("structure", False, str(exc))
        return v
    shape = (c.level == n and len(c.line_lemmas) == len(s.lines) and c.bot_exclusion is not None)
    v.add("structure", shape, f"level {c.level} vs {n}, {len(c.line_lemmas)} lemmas for {len(s.lines)} lines")
    if not shape:
        return v
    Y = T.Y_SLOT
    ok, why = _proof_ok(c.bot_exclusion, Forall(Y, neg(T.tr(n, Num(BOT_CODE), Y))))
    v.add("botExclusion", ok, why)
    for i, (l, line) in enumerate(zip(c.line_lemmas, s.lines)):
        try:
            nf = T.ENGINE.prenex(line.formula)[0]
            same = l.formula is line.formula and l.prenex is nf
            t_goal = Forall(Y, iff(T.tr(n, T.code_of(nf), Y), T.star(nf, Y)))
            c_goal = T.line_lemma(line.formula, n)
        except (BuildError, ValueError) as exc:
            v.add(f"lemma {i}", False, str(exc))
            continue
        ok1, why1 = _proof_ok(l.tarski, t_goal)
        ok2, why2 = _proof_ok(l.closure, c_goal)
        honest = not _evaluates_pp(l.closure)
        v.add(f"lemma {i}", same and ok1 and ok2 and honest,
              "; ".join(x for x in (why1, why2, "" if same else "line mismatch",
                                    "" if honest else "evaluates the proof predicate") if x))
    v.add("final uses no evaluation of prf", not _evaluates_pp(c.final))
    return v


# -- the selector ------------------------------------------------------------------------

def certify(d: int, fuel=None) -> Certificate:
    """Invariant certificate when d codes a checked derivation, else evaluation."""
    s = enc.try_decode(d) if d > 0 else None
    if isinstance(s, Proof) and K.check_proof(s, fuel).accepted:
        return invariant_certify(s, fuel)
    return evaluation_certify(d, fuel)


def ccon_instance(d: int, fuel=None) -> tuple[Proof, bool]:
    """A proof of prf(d, code bot) = 0 and whether it checks."""
    cert = certify(d, fuel)
    y = cert.final.proof
    return y, K.prf_check(y, ConsistencyStatement(d).formula)


def selector_code(d: int, fuel=None) -> int:
    return enc.encode(ccon_instance(d, fuel)[0])


__all__ = ["ConsistencyStatement", "Certificate", "CertificationError", "LineLemma", "Verdict",
           "invariant_certify", "evaluation_certify", "verify_certificate", "structural_kind",
           "ccon_instance", "selector_code", "certify", "con_pa", "INVARIANT", "EVALUATION"]
