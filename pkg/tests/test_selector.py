import dataclasses

import pytest

from pakernel.corpus import ind_refl
from pakernel.encoding import decode, encode
from pakernel.kernel import check_proof, prf_check
from pakernel.proofs import Proof
from pakernel.builder import Derivation
from pakernel.selector import (
    EVALUATION, INVARIANT, Certificate, CertificationError, ConsistencyStatement, ccon_instance, certify,
    con_pa, evaluation_certify, invariant_certify, structural_kind, verify_certificate,
)
from pakernel.syntax import BOT, Eq, Num, free_vars
from pakernel.primrec import Fuel
from pakernel.registry import prf

BOT_CODE = encode(BOT)


@pytest.fixture(scope="module")
def inv(two_line):
    return invariant_certify(two_line)


@pytest.fixture(scope="module")
def ev(two_line):
    return evaluation_certify(encode(two_line))


def test_statement_shape():
    f = ConsistencyStatement(7).formula
    assert f is Eq(prf(Num(7), Num(266)), Num(0))
    assert not free_vars(f)


def test_invariant_certificate(inv, two_line):
    assert inv.kind == INVARIANT
    assert inv.level == 2
    assert len(inv.line_lemmas) == len(two_line.lines)
    assert inv.final.goal is ConsistencyStatement(encode(two_line)).formula
    v = verify_certificate(inv)
    assert v.ok, v.failures()


def test_invariant_certificate_for_induction_proof():
    c = invariant_certify(ind_refl())
    assert c.level >= 1
    assert verify_certificate(c).ok


def test_invariant_rejects_unchecked():
    with pytest.raises(CertificationError):
        invariant_certify(Proof(()))


def test_evaluation_certificate(ev):
    assert ev.kind == EVALUATION and ev.line_lemmas == []
    assert verify_certificate(ev).ok


@pytest.mark.parametrize("d", [0, BOT_CODE])
def test_evaluation_on_non_proofs(d):
    c = evaluation_certify(d)
    assert c.final.goal is ConsistencyStatement(d).formula
    assert verify_certificate(c).ok


def test_agreement(inv, ev):
    assert inv.final.goal is ev.final.goal


def test_structural_classifier(inv, ev):
    assert structural_kind(inv) == INVARIANT
    assert structural_kind(ev) == EVALUATION


def test_truncated_lemma_fails_at_that_lemma(inv):
    l0 = inv.line_lemmas[1]
    bad_proof = Proof(l0.closure.proof.lines[:-1])
    bad = dataclasses.replace(l0, closure=Derivation(l0.closure.goal, bad_proof))
    c = dataclasses.replace(inv, line_lemmas=[inv.line_lemmas[0], bad] + inv.line_lemmas[2:])
    v = verify_certificate(c)
    assert not v.ok
    assert [name for name, _ in v.failures()] == ["lemma 1"]


def test_mislabeled_evaluation_certificate(ev):
    c = dataclasses.replace(ev, kind=INVARIANT)
    v = verify_certificate(c)
    assert not v.ok
    assert "structure" in [name for name, _ in v.failures()]


def test_invariant_lemmas_do_not_evaluate_prf(inv):
    from pakernel.selector import _evaluates_pp

    assert not any(_evaluates_pp(l.closure) for l in inv.line_lemmas)
    assert not _evaluates_pp(inv.final)


def test_deterministic_bytes(two_line, inv):
    again = invariant_certify(two_line)
    assert again.dumps() == inv.dumps()


def test_json_roundtrip(inv):
    text = inv.dumps()
    back = Certificate.loads(text)
    assert back.dumps() == text
    assert verify_certificate(back).ok
    doc = inv.to_json()
    assert {"kind", "d", "level", "lineLemmas", "finalDerivation", "transcript"} <= set(doc)
    assert doc["d"] == str(inv.d)


def test_ccon_instances(two_line):
    for d in (encode(two_line), 0, 5):
        y, ok = ccon_instance(d)
        assert ok
        assert prf_check(y, ConsistencyStatement(d).formula)


def test_ccon_fuel_starved(two_line):
    with pytest.raises(CertificationError):
        ccon_instance(encode(two_line), fuel=50)
    with pytest.raises(CertificationError):
        ccon_instance(encode(two_line) + 1, fuel=2)


def test_certify_picks_kind(two_line):
    assert certify(3).kind == EVALUATION
    assert certify(encode(two_line)).kind == INVARIANT


def test_soundness_cross_check(two_line):
    # meta level: the decoded object is a checked proof, and not of bot
    s = decode(encode(two_line))
    assert check_proof(s).accepted and s.conclusion is not BOT
    assert prf.impl([encode(two_line), BOT_CODE], Fuel()) == 0


def test_con_pa_is_closed_and_not_an_instance():
    c = con_pa()
    assert not free_vars(c)
    assert c is not ConsistencyStatement(0).formula
