import pytest
from hypothesis import given

import oracles
from pakernel.syntax import (
    BOT, Eq, Exists, Forall, Imp, Less, Num, ParseError, Plus, Succ, Var, ZERO,
    closure, free_vars, is_free_for, neg, numeral, parse, substitute, to_sexp,
)

x0, x1, x2 = Var(0), Var(1), Var(2)


def test_parse_bot():
    assert parse("(bot)") is BOT


def test_parse_forall():
    assert parse("(forall x0 (= (plus x0 zero) x0))") is Forall(x0, Eq(Plus(x0, ZERO), x0))


@pytest.mark.parametrize("text", ["(= zero)", "(", "(foo zero)", "(= zero zero) extra", "(forall zero (bot))"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_print_examples():
    assert to_sexp(BOT) == "(bot)"
    assert to_sexp(numeral(2)) == "(succ (succ zero))"
    assert to_sexp(Imp(BOT, BOT)) == "(-> (bot) (bot))"


def test_numeral_three_is_succ_chain():
    assert numeral(3) is Succ(Succ(Succ(ZERO)))


def test_hash_consing():
    assert Eq(x0, ZERO) is Eq(Var(0), Num(0))


def test_substitute_renames_bound_variable():
    phi = Exists(x1, Eq(x1, x0))
    assert substitute(phi, x0, x1) is Exists(x2, Eq(x2, x1))


def test_substitute_bound_occurrence_untouched():
    phi = Forall(x0, Eq(x0, x0))
    assert substitute(phi, x0, Num(5)) is phi


def test_free_vars():
    assert free_vars(Eq(x0, x1)) == {0, 1}
    assert free_vars(Forall(x0, Eq(x0, x1))) == {1}
    assert free_vars(Exists(x1, Less(x1, ZERO))) == set()


def test_is_free_for():
    assert not is_free_for(x1, x0, Exists(x1, Eq(x1, x0)))
    assert is_free_for(x2, x0, Exists(x1, Eq(x1, x0)))


def test_closure_and_neg():
    assert free_vars(closure(Eq(x0, x1))) == set()
    assert neg(BOT) is Imp(BOT, BOT)


@given(oracles.formulas())
def test_print_parse_roundtrip(phi):
    assert parse(to_sexp(phi)) is phi


@given(oracles.formulas(), oracles.closed_terms())
def test_substitution_semantics(phi, t):
    # substituting a closed term for x0 equals evaluating with x0 assigned to its value
    env = {1: 2, 2: 0, 3: 1}
    lhs = oracles.truth(substitute(phi, x0, t), env, bound=4)
    rhs = oracles.truth(phi, {**env, 0: oracles.value(t)}, bound=4)
    assert lhs == rhs
