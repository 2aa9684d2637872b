import pytest
from hypothesis import given, settings, strategies as st

import oracles
from pakernel.builder import (
    BuildError, EvaluatesFalse, NotTautology, compute_fact, deduce, instantiate, numeral_distinct,
    prove_delta0, sigma1_complete, tautology,
)
from pakernel.builder.nd import ax, derivation, gen, hyp, mp
from pakernel import kernel as K
from pakernel.encoding import encode
from pakernel.kernel import check_proof
from pakernel.proofs import Eval
from pakernel.registry import prf
from pakernel.syntax import (
    BOT, And, Eq, Exists, Forall, Imp, Less, Num, Or, Plus, Times, Var, ZERO, exists_lt, forall_lt, neg,
)

x0, x1 = Var(0), Var(1)
A, B = Eq(x0, ZERO), Less(x1, Num(3))


def eval_free(d):
    return not any(isinstance(line.just, Eval) for line in d.proof.lines)


@pytest.mark.parametrize("phi", [Imp(BOT, BOT), Imp(A, Imp(B, A)), Or(A, neg(A)),
                                 Imp(And(A, B), And(B, A)), Imp(neg(neg(A)), A)])
def test_tautology(phi):
    d = tautology(phi)
    assert d.goal is phi and d.check()


def test_not_tautology():
    with pytest.raises(NotTautology):
        tautology(Eq(ZERO, ZERO))


def test_deduce_identity():
    d = deduce([A], A, hyp(A))
    assert d.goal is Imp(A, A) and d.check()


def test_deduce_mp():
    sk = mp(hyp(A), hyp(Imp(A, B)))
    d = deduce([A, Imp(A, B)], B, sk)
    assert d.goal is Imp(A, Imp(Imp(A, B), B)) and d.check()


def test_deduce_gen_over_hypothesis_variable():
    with pytest.raises(BuildError):
        deduce([A], Forall(x0, A), gen(hyp(A), x0))


def test_deduce_unlisted_hypothesis():
    with pytest.raises(BuildError):
        deduce([], A, hyp(A))


def test_instantiate():
    d = instantiate(derivation(ax(K.ADD_0)), Num(2))
    assert d.goal is Eq(Plus(Num(2), ZERO), Num(2)) and d.check()


def test_instantiate_variable():
    refl = derivation(gen(ax(K.EQ_REFL, x0), x0))
    d = instantiate(refl, x1)
    assert d.goal is Eq(x1, x1) and d.check()


def test_instantiate_capture():
    phi = Forall(x0, Exists(x1, Eq(x1, x0)))
    # a derivation of phi is not needed to trigger the side condition; build one anyway
    d_body = mp(ax(K.EQ_REFL, x0), ax(K.EX_INTRO, Eq(x1, x0), x1, x0))
    d = derivation(gen(d_body, x0))
    assert d.goal is phi
    with pytest.raises(BuildError):
        instantiate(d, x1)


def test_sigma1_ground():
    d = sigma1_complete(Eq(Plus(Num(2), Num(2)), Num(4)))
    assert d.check()


def test_sigma1_witness():
    phi = Exists(x0, Eq(Plus(x0, Num(1)), Num(3)))
    d = sigma1_complete(phi)
    assert d.goal is phi and d.check()
    # the witness is the one an independent brute-force search finds
    w = next(k for k in range(10) if oracles.truth(Eq(Plus(Num(k), Num(1)), Num(3))))
    assert any(line.formula is Eq(Plus(Num(w), Num(1)), Num(3)) for line in d.proof.lines)


def test_sigma1_false():
    with pytest.raises(EvaluatesFalse):
        sigma1_complete(Eq(ZERO, Num(1)))


def test_sigma1_rejects_pi():
    with pytest.raises(BuildError):
        sigma1_complete(Forall(x0, Eq(x0, x0)))


def test_compute_fact_unfold_one_plus_one():
    d = derivation(compute_fact(Plus(Num(1), Num(1)), unfold=True))
    assert d.goal is Eq(Plus(Num(1), Num(1)), Num(2))
    assert d.check() and eval_free(d)


def test_compute_fact_zero_times_seven():
    d = derivation(compute_fact(Times(Num(0), Num(7)), unfold=True))
    assert d.goal is Eq(Times(Num(0), Num(7)), ZERO)
    assert d.check() and eval_free(d)


def test_compute_fact_prf(two_line):
    t = prf(Num(encode(two_line)), Num(encode(BOT)))
    d = derivation(compute_fact(t))
    assert d.goal is Eq(t, ZERO) and d.check()


@pytest.mark.parametrize("j,k", [(0, 1), (2, 5), (7, 3), (400, 401)])
def test_numeral_distinct(j, k):
    d = derivation(numeral_distinct(j, k))
    assert d.goal is neg(Eq(Num(j), Num(k))) and d.check()


def test_numeral_distinct_equal():
    with pytest.raises(BuildError):
        numeral_distinct(3, 3)


@settings(max_examples=40)
@given(oracles.closed_terms())
def test_compute_fact_agrees_with_oracle(t):
    d = derivation(compute_fact(t))
    assert d.check()
    assert d.goal.right.value == oracles.value(t)


@settings(max_examples=15)
@given(st.integers(0, 4), st.integers(0, 4))
def test_compute_fact_unfold_small(a, b):
    t = Plus(Times(Num(a), Num(b)), Num(b))
    d = derivation(compute_fact(t, unfold=True))
    assert d.check() and eval_free(d)
    assert d.goal.right.value == a * b + b


def _bounded_sentences():
    t = oracles.closed_terms(3)
    atom = st.one_of(st.tuples(t, t).map(lambda p: Eq(*p)), st.tuples(t, t).map(lambda p: Less(*p)))
    body_atom = st.one_of(st.tuples(t).map(lambda p: Eq(x0, p[0])), st.tuples(t).map(lambda p: Less(p[0], x0)))

    def ext(ch):
        return st.one_of(
            st.tuples(ch, ch).map(lambda p: And(*p)),
            st.tuples(ch, ch).map(lambda p: Or(*p)),
            st.tuples(ch, ch).map(lambda p: Imp(*p)),
        )
    closed = st.recursive(atom, ext, max_leaves=3)
    quant = st.tuples(st.integers(0, 4), body_atom, st.booleans()).map(
        lambda p: (exists_lt if p[2] else forall_lt)(x0, Num(p[0]), p[1]))
    return st.one_of(closed, quant, st.tuples(closed, quant).map(lambda p: And(*p)))


@settings(max_examples=40)
@given(_bounded_sentences())
def test_sigma1_agrees_with_evaluator(phi):
    truth = oracles.truth(phi)
    if truth:
        assert sigma1_complete(phi).check()
    else:
        with pytest.raises(EvaluatesFalse):
            sigma1_complete(phi)


@settings(max_examples=25)
@given(_bounded_sentences())
def test_prove_delta0_decides(phi):
    d = derivation(prove_delta0(phi))
    assert d.check()
    assert d.goal is (phi if oracles.truth(phi) else neg(phi))
