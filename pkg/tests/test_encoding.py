import pytest
from hypothesis import given, strategies as st

import oracles
from pakernel.encoding import (
    DecodeError, InvalidPrefix, Malformed, Truncated, UnknownTag, assign_get, assign_update,
    decode, encode, pair, seq_decode, seq_encode, seq_get, seq_len, serialize, try_decode, unpair,
)
from pakernel.syntax import BOT, Eq, Forall, Imp, Num, Plus, Var, ZERO, parse


def test_bot_bytes_and_code():
    assert serialize(BOT) == bytes([0x0A])
    assert encode(BOT) == 266


def test_zero_bytes_and_code():
    assert serialize(ZERO) == bytes([0x02])
    assert encode(ZERO) == 258


def test_eq_zero_zero():
    e = Eq(ZERO, ZERO)
    assert serialize(e) == bytes([0x08, 0x02, 0x02])
    assert encode(e) == 17302018


def test_decode_zero_is_invalid_prefix():
    with pytest.raises(InvalidPrefix):
        decode(0)


def test_decode_bad_leading_byte():
    with pytest.raises(InvalidPrefix):
        decode(0x020A)


def test_decode_truncated_and_unknown():
    with pytest.raises(Truncated):
        decode(int.from_bytes(b"\x01\x08\x02", "big"))
    with pytest.raises(UnknownTag):
        decode(int.from_bytes(b"\x01\x7f", "big"))
    with pytest.raises(Malformed):
        decode(int.from_bytes(b"\x01\x0a\x0a", "big"))


def test_try_decode_total():
    assert try_decode(0) is None
    assert try_decode(266) is BOT


def test_sequence_examples():
    assert seq_encode([]) == 0
    s = seq_encode([3, 5])
    assert seq_get(s, 1) == 5
    assert seq_get(s, 0) == 3
    assert seq_len(s) == 2
    with pytest.raises(IndexError):
        seq_get(s, 2)


def test_assignment_defaults_to_zero():
    s = assign_update(0, 3, 7)
    assert assign_get(s, 3) == 7
    assert assign_get(s, 0) == 0
    assert assign_get(s, 10) == 0


@given(oracles.formulas())
def test_serialize_matches_oracle(phi):
    assert list(serialize(phi)) == oracles.ser(phi)
    assert encode(phi) == oracles.code(phi)


@given(oracles.terms())
def test_term_roundtrip(t):
    assert decode(encode(t)) is t


@given(oracles.formulas())
def test_formula_roundtrip(phi):
    assert decode(encode(phi)) is phi


@given(st.lists(st.integers(0, 10**6), max_size=8))
def test_seq_matches_oracle(es):
    s = seq_encode(es)
    assert s == oracles.seq_code(es)
    assert seq_decode(s) == es
    for i, e in enumerate(es):
        assert seq_get(s, i) == e


@given(st.integers(0, 10**12), st.integers(0, 10**12))
def test_pair_inverse(a, b):
    assert pair(a, b) == oracles.cantor(a, b)
    assert unpair(pair(a, b)) == (a, b)


@given(st.integers(0, 10**9))
def test_seq_decode_total(s):
    es = seq_decode(s)
    assert seq_decode(seq_encode(es)) == es


def test_big_numeral_uses_uleb():
    assert list(serialize(Num(300))) == [0x10, 0xAC, 0x02]


def test_proof_roundtrip(golden):
    for p in golden.values():
        assert decode(encode(p)) == p


def test_decode_errors_are_value_errors():
    assert issubclass(DecodeError, ValueError)


def test_parse_then_encode_stable():
    phi = parse("(forall x0 (= (plus x0 zero) x0))")
    assert phi is Forall(Var(0), Eq(Plus(Var(0), ZERO), Var(0)))
    assert decode(encode(phi)) is phi
    assert encode(Imp(BOT, BOT)) == oracles.code(Imp(BOT, BOT))
