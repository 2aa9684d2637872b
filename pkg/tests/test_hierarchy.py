import random

import pytest
from hypothesis import given, settings

import oracles
from pakernel.classes import DELTA0, Pi, Sigma, class_le, is_nf
from pakernel.hierarchy import ClassError, classify, derivation_level, prenex_to_sigma, prenex_with_proof
from pakernel.proofs import Proof
from pakernel.syntax import BOT, And, Eq, Exists, Forall, Imp, Less, Plus, Var, ZERO, exists_lt

x0, x1, x2 = Var(0), Var(1), Var(2)


def test_classify_examples():
    assert classify(BOT) == DELTA0
    assert classify(Exists(x0, Eq(Plus(x0, x1), x2))) == Sigma(1)
    assert classify(Forall(x0, Exists(x1, Eq(x1, x0)))) == Pi(2)


def test_classify_bounded_is_delta0():
    assert classify(exists_lt(x0, x1, Eq(x0, ZERO))) == DELTA0


def test_class_order():
    assert class_le(Sigma(1), Pi(2)) and class_le(Pi(1), Sigma(2))
    assert not class_le(Pi(1), Sigma(1))


def test_prenex_delta0_is_itself():
    nf, d = prenex_to_sigma(Eq(ZERO, ZERO), 1)
    assert nf is Eq(ZERO, ZERO) and d.check()


def test_prenex_pi1_at_sigma1_fails():
    with pytest.raises(ClassError):
        prenex_to_sigma(Imp(Exists(x0, Eq(x0, ZERO)), BOT), 1)


def test_prenex_merge_two_existentials():
    phi = And(Exists(x0, Eq(x0, ZERO)), Exists(x1, Less(x1, x2)))
    nf, d = prenex_to_sigma(phi, 1)
    assert d.check()
    assert is_nf(nf, Sigma(1))
    assert classify(nf) == Sigma(1)
    for env in ({2: 0}, {2: 3}):
        assert oracles.truth(phi, env, 6) == oracles.truth(nf, env, 6)


def test_prenex_level_zero():
    with pytest.raises(ClassError):
        prenex_to_sigma(BOT, 0)


def test_derivation_level(golden, two_line):
    assert derivation_level(two_line) == 2
    assert derivation_level(golden["03_identity_imp"]) == 1
    assert derivation_level(golden["02_ind_refl"]) == 2


def test_derivation_level_delta0_maps_to_one(golden):
    assert derivation_level(golden["04_eval_times"]) == 1


def test_derivation_level_rejected():
    with pytest.raises(ValueError):
        derivation_level(Proof(()))


@given(oracles.formulas())
def test_exists_monotone(phi):
    c = classify(phi)
    assert class_le(c, classify(Exists(x0, phi)))
    assert class_le(c, classify(Forall(x0, phi)))


@settings(max_examples=30)
@given(oracles.formulas(oracles.terms(2), max_leaves=4))
def test_prenex_equivalence_is_checked_and_sound(phi):
    nf, node = prenex_with_proof(phi)
    assert classify(nf) == classify(phi)
    rng = random.Random(hash(phi))
    for _ in range(3):
        env = {i: rng.randrange(4) for i in range(4)}
        assert oracles.truth(phi, env, 4) == oracles.truth(nf, env, 4)


@settings(max_examples=15)
@given(oracles.formulas(oracles.terms(2), max_leaves=4))
def test_prenex_derivation_kernel_checks(phi):
    c = classify(phi)
    if c.kind == "P":
        phi, c = Exists(x0, phi), classify(Exists(x0, phi))
    n = max(1, c.n)
    nf, d = prenex_to_sigma(phi, n)
    assert d.check()
