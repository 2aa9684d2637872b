import pytest
from hypothesis import given, settings, strategies as st

from pakernel.primrec import (
    BinRec, BoundedSearch, Compose, Fuel, FuelExhausted, IfZero, PrimRec, Proj, SuccF, Zero,
    const, elaborate, eval_pr, is_core, pr_parse, pr_to_sexp,
)

PRED = PrimRec(Zero(0), Proj(0, 2))
ADD = PrimRec(Proj(0, 1), Compose(SuccF(), (Proj(2, 3),)))
MUL = PrimRec(Zero(1), Compose(ADD, (Proj(2, 3), Proj(0, 3))))
# bit count: f(0) = 0, f(n) = f(n // 2) + 1
BITS = BinRec(Zero(0), Compose(SuccF(), (Proj(1, 2),)))
# least z < b with x + z == 0
EQ_SEARCH = BoundedSearch(IfZero(Compose(ADD, (Proj(0, 2), Proj(1, 2))), Zero(2), const(1, 2)))


def test_succ():
    assert eval_pr(SuccF(), [4]) == 5


def test_compose_succ_succ():
    assert eval_pr(Compose(SuccF(), (SuccF(),)), [0]) == 2


def test_predecessor_by_hand():
    # f(0) = 0, f(n+1) = n, so f(3) = 2
    assert eval_pr(PRED, [3]) == 2
    assert eval_pr(PRED, [0]) == 0


def test_arity_mismatch():
    with pytest.raises(ValueError):
        eval_pr(SuccF(), [1, 2])


def test_negative_argument():
    with pytest.raises(ValueError):
        eval_pr(SuccF(), [-1])


def test_bad_constructions():
    with pytest.raises(ValueError):
        Proj(2, 2)
    with pytest.raises(ValueError):
        PrimRec(Zero(0), Proj(0, 1))


def test_fuel():
    with pytest.raises(FuelExhausted):
        eval_pr(MUL, [50, 50], Fuel(100))


@given(st.integers(0, 30), st.integers(0, 30))
def test_add_mul(a, b):
    assert eval_pr(ADD, [a, b]) == a + b
    assert eval_pr(MUL, [a, b]) == a * b


@given(st.integers(0, 10**30))
def test_binrec_is_logarithmic(n):
    assert eval_pr(BITS, [n], Fuel(10**4)) == n.bit_length()


@settings(max_examples=10)
@given(st.integers(0, 12))
def test_binrec_elaborates(n):
    # the core form runs in unary, so keep n small
    core = elaborate(BITS)
    assert is_core(core)
    assert eval_pr(core, [n]) == n.bit_length()


@given(st.integers(0, 6), st.integers(0, 8))
def test_bounded_search(x, b):
    # pred(x, z) = 0 iff x + z == 0
    expect = 0 if (x == 0 and b > 0) else b
    assert eval_pr(EQ_SEARCH, [x, b]) == expect
    assert eval_pr(elaborate(EQ_SEARCH), [x, b]) == expect


def test_const():
    assert eval_pr(const(3, 2), [9, 9]) == 3


@pytest.mark.parametrize("prog", [PRED, ADD, MUL, BITS, EQ_SEARCH, const(2, 1)])
def test_sexp_roundtrip(prog):
    assert pr_parse(pr_to_sexp(prog)) == prog
