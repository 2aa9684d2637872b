import random

import pytest
from hypothesis import given, strategies as st

import oracles
from pakernel import kernel as K
from pakernel.kernel import axiom_instance, check_proof, dump_proof, load_proof, prf_check
from pakernel.mutation import mutants
from pakernel.proofs import MP, Axiom, Eval, Gen, Line, Proof
from pakernel.registry import SideCondition
from pakernel.syntax import (
    BOT, And, Eq, Exists, Forall, Imp, Num, Plus, Succ, Var, ZERO, free_vars, to_sexp,
)

x0, x1 = Var(0), Var(1)


def test_ind_instance():
    phi = Eq(x0, x0)
    expected = Imp(And(Eq(ZERO, ZERO), Forall(x0, Imp(Eq(x0, x0), Eq(Succ(x0), Succ(x0))))), Forall(x0, Eq(x0, x0)))
    assert axiom_instance(K.IND, {0: phi, 1: x0}) is expected


def test_add_zero_is_closed():
    a = axiom_instance(K.ADD_0, {})
    assert a is Forall(x0, Eq(Plus(x0, ZERO), x0))
    assert not free_vars(a)


def test_all_elim_capture_is_side_condition():
    with pytest.raises(SideCondition):
        axiom_instance(K.ALL_ELIM, {0: Exists(x1, Eq(x1, x0)), 1: x0, 2: x1})


def test_unknown_schema():
    with pytest.raises(SideCondition):
        axiom_instance(99, {})


def test_all_dist_side_condition():
    with pytest.raises(SideCondition):
        axiom_instance(K.ALL_DIST, {0: Eq(x0, ZERO), 1: BOT, 2: x0})


def test_check_add_zero_one(two_line):
    res = check_proof(two_line)
    assert res.accepted
    thm = res.theorem.formula
    assert thm is Eq(Plus(Num(1), ZERO), Num(1))
    assert oracles.truth(thm)


def test_empty_proof():
    res = check_proof(Proof(()))
    assert not res.accepted
    assert res.errors == [(-1, "no lines")]


def test_bot_replacement_rejected_at_line(two_line):
    for k in range(len(two_line.lines)):
        lines = list(two_line.lines)
        lines[k] = Line(BOT, lines[k].just)
        res = check_proof(Proof(tuple(lines)))
        assert not res.accepted
        assert k in [i for i, _ in res.errors]


def test_prf_check(two_line):
    assert prf_check(two_line, Eq(Plus(Num(1), ZERO), Num(1)))
    assert not prf_check(two_line, BOT)
    assert not prf_check(Proof(()), BOT)
    assert not prf_check("junk", BOT)


def test_theorem_not_constructible():
    with pytest.raises(TypeError):
        K.Theorem(BOT, Proof(()))


def test_eval_rule():
    assert check_proof(Proof((Line(Eq(Plus(Num(2), Num(2)), Num(4)), Eval()),))).accepted
    assert not check_proof(Proof((Line(Eq(Plus(Num(2), Num(2)), Num(5)), Eval()),))).accepted
    assert not check_proof(Proof((Line(Eq(Plus(x0, Num(2)), Num(2)), Eval()),))).accepted


def test_golden_corpus_checks_and_is_true(golden):
    for name, p in golden.items():
        res = check_proof(p)
        assert res.accepted, (name, res.errors)
        phi = res.theorem.formula
        if not free_vars(phi):
            assert oracles.truth(phi, bound=12), name


def test_mutants_rejected(golden):
    total = 0
    for p in golden.values():
        for label, m in mutants(p, random.Random(1)):
            total += 1
            assert not check_proof(m).accepted, label
    assert total >= 200


def test_proof_file_roundtrip(golden):
    for p in golden.values():
        text = dump_proof(p)
        assert load_proof(text) == p


idx = st.integers(-3, 8)
just = st.one_of(
    st.tuples(idx, idx).map(lambda t: MP(*t)),
    st.tuples(idx, oracles.VARS).map(lambda t: Gen(*t)),
    st.just(Eval()),
    st.tuples(st.integers(0, 40), st.lists(st.tuples(st.integers(0, 4), oracles.formulas(max_leaves=2)),
                                           max_size=3).map(tuple)).map(lambda t: Axiom(*t)),
)


@given(st.lists(st.tuples(oracles.formulas(max_leaves=3), just), max_size=6))
def test_checker_total_on_adversarial_input(lines):
    p = Proof(tuple(Line(f, j) for f, j in lines))
    res = check_proof(p, fuel=10**5)
    assert isinstance(res.accepted, bool)
    if res.accepted:
        phi = res.theorem.formula
        if not free_vars(phi) and "forall" not in to_sexp(phi) and "exists" not in to_sexp(phi):
            assert oracles.truth(phi)
