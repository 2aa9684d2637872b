"""Goedel numbering: a prefix byte serialization read as a base-256 number.

Tag table::

    0x02 Zero        0x08 Eq     0x0E Forall + idx + body
    0x03 Succ        0x09 Less   0x0F Exists + idx + body
    0x04 Plus        0x0A Bot    0x10 numeral k >= 1 + k
    0x05 Times       0x0B Imp    0x11 Proof + count + lines
    0x06 Var + idx   0x0C And    0x12 Axiom line + schema + count + (slot, obj)*
    0x07 PRApp + sym + arity + args
                     0x0D Or     0x13 MP line + i + j
                                 0x14 Gen line + premise + idx
                                 0x15 Eval line

Integers are ULEB128.  Every line is followed by its serialized formula.
A code is the number whose big-endian digits are 0x01 followed by the
serialization.
"""

from __future__ import annotations

from math import isqrt
from typing import Union

from .proofs import MP, Axiom, Eval, Gen, Line, Proof
from .syntax import (
    BOT, And, Bot, Eq, Exists, Forall, Formula, Imp, Less, Num, Or, Plus,
    PRApp, Succ, Term, Times, Var, pr_arity,
)

Encodable = Union[Term, Formula, Proof]

T_ZERO, T_SUCC, T_PLUS, T_TIMES, T_VAR, T_PR = 0x02, 0x03, 0x04, 0x05, 0x06, 0x07
T_EQ, T_LESS, T_BOT, T_IMP, T_AND, T_OR = 0x08, 0x09, 0x0A, 0x0B, 0x0C, 0x0D
T_FORALL, T_EXISTS, T_NUM = 0x0E, 0x0F, 0x10
T_PROOF, T_AXIOM, T_MP, T_GEN, T_EVAL = 0x11, 0x12, 0x13, 0x14, 0x15

_BIN = {Plus: T_PLUS, Times: T_TIMES, Eq: T_EQ, Less: T_LESS,
        Imp: T_IMP, And: T_AND, Or: T_OR}
_BIN_INV = {v: k for k, v in _BIN.items()}


class DecodeError(ValueError):
    pass


class InvalidPrefix(DecodeError):
    pass


class Truncated(DecodeError):
    pass


class UnknownTag(DecodeError):
    pass


class Malformed(DecodeError):
    """Well-tagged but not a serialization produced by ``serialize``."""


def uleb(n: int, out: bytearray) -> None:
    if n < 0:
        raise ValueError("ULEB128 of a negative number")
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return


# -- serialization -----------------------------------------------------------

def _ser(a, out: bytearray) -> None:
    # explicit stack: long implication chains would overflow recursion
    stack = [a]
    while stack:
        a = stack.pop()
        if isinstance(a, bytes):
            out += a
            continue
        cls = type(a)
        if cls is Num:
            if a.value == 0:
                out.append(T_ZERO)
            else:
                out.append(T_NUM)
                uleb(a.value, out)
        elif cls is Var:
            out.append(T_VAR)
            uleb(a.index, out)
        elif cls is Bot:
            out.append(T_BOT)
        elif cls is Succ:
            out.append(T_SUCC)
            stack.append(a.arg)
        elif cls is PRApp:
            out.append(T_PR)
            uleb(a.symbol, out)
            uleb(len(a.args), out)
            stack.extend(reversed(a.args))
        elif cls in (Forall, Exists):
            out.append(T_FORALL if cls is Forall else T_EXISTS)
            uleb(a.var.index, out)
            stack.append(a.body)
        elif cls in _BIN:
            out.append(_BIN[cls])
            stack.append(a.right)
            stack.append(a.left)
        else:
            raise TypeError(f"cannot serialize {a!r}")


def _ser_line(line: Line, out: bytearray) -> None:
    j = line.just
    if isinstance(j, Axiom):
        out.append(T_AXIOM)
        uleb(j.schema, out)
        uleb(len(j.inst), out)
        for slot, obj in j.inst:
            uleb(slot, out)
            _ser(obj, out)
    elif isinstance(j, MP):
        out.append(T_MP)
        uleb(j.minor, out)
        uleb(j.major, out)
    elif isinstance(j, Gen):
        out.append(T_GEN)
        uleb(j.premise, out)
        uleb(j.var.index, out)
    elif isinstance(j, Eval):
        out.append(T_EVAL)
    else:
        raise TypeError(f"bad justification {j!r}")
    _ser(line.formula, out)


def serialize(a: Encodable) -> bytes:
    """Prefix (Polish) byte form of a term, formula or proof."""
    out = bytearray()
    if isinstance(a, Proof):
        out.append(T_PROOF)
        uleb(len(a.lines), out)
        for line in a.lines:
            _ser_line(line, out)
    else:
        _ser(a, out)
    return bytes(out)


def encode(a: Encodable) -> int:
    return int.from_bytes(b"\x01" + serialize(a), "big")


# -- decoding ----------------------------------------------------------------

class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def byte(self) -> int:
        if self.pos >= len(self.data):
            raise Truncated(f"truncated serialization at byte {self.pos}")
        b = self.data[self.pos]
        self.pos += 1
        return b

    def uleb(self) -> int:
        n = shift = 0
        while True:
            b = self.byte()
            n |= (b & 0x7F) << shift
            shift += 7
            if not b & 0x80:
                if b == 0 and shift > 7:
                    raise Malformed("non-minimal ULEB128")
                return n

    def obj(self):
        tag = self.byte()
        if tag == T_ZERO:
            return Num(0)
        if tag == T_NUM:
            k = self.uleb()
            if k == 0:
                raise Malformed("numeral 0 must use the Zero tag")
            return Num(k)
        if tag == T_VAR:
            return Var(self.uleb())
        if tag == T_BOT:
            return BOT
        if tag == T_SUCC:
            arg = self.term()
            if isinstance(arg, Num):
                raise Malformed("successor of a numeral must use the numeral tag")
            return Succ(arg)
        if tag == T_PR:
            sym = self.uleb()
            k = self.uleb()
            try:
                arity = pr_arity(sym)
            except KeyError:
                raise Malformed(f"unknown PR symbol {sym}") from None
            if k != arity:
                raise Malformed(f"arity mismatch for PR symbol {sym}")
            return PRApp(sym, [self.term() for _ in range(k)])
        if tag in (T_FORALL, T_EXISTS):
            v = Var(self.uleb())
            body = self.formula()
            return (Forall if tag == T_FORALL else Exists)(v, body)
        if tag in _BIN_INV:
            cls = _BIN_INV[tag]
            if cls in (Plus, Times, Eq, Less):
                return cls(self.term(), self.term())
            return cls(self.formula(), self.formula())
        if tag in (T_PROOF, T_AXIOM, T_MP, T_GEN, T_EVAL):
            raise Malformed(f"proof tag 0x{tag:02X} inside a formula")
        raise UnknownTag(f"unknown tag 0x{tag:02X} at byte {self.pos - 1}")

    def term(self) -> Term:
        a = self.obj()
        if not isinstance(a, Term):
            raise Malformed("expected a term")
        return a

    def formula(self) -> Formula:
        a = self.obj()
        if not isinstance(a, Formula):
            raise Malformed("expected a formula")
        return a

    def line(self) -> Line:
        tag = self.byte()
        if tag == T_AXIOM:
            schema = self.uleb()
            inst = tuple((self.uleb(), self.obj()) for _ in range(self.uleb()))
            just = Axiom(schema, inst)
        elif tag == T_MP:
            just = MP(self.uleb(), self.uleb())
        elif tag == T_GEN:
            just = Gen(self.uleb(), Var(self.uleb()))
        elif tag == T_EVAL:
            just = Eval()
        elif tag in _BIN_INV or tag < T_ZERO or tag > T_EVAL:
            raise UnknownTag(f"expected a line tag, got 0x{tag:02X}")
        else:
            raise Malformed(f"expected a line tag, got 0x{tag:02X}")
        return Line(self.formula(), just)

    def top(self) -> Encodable:
        if self.data and self.data[0] == T_PROOF:
            self.pos = 1
            n = self.uleb()
            return Proof(tuple(self.line() for _ in range(n)))
        return self.obj()


def deserialize(data: bytes) -> Encodable:
    r = _Reader(data)
    try:
        a = r.top()
    except RecursionError:
        raise Malformed("nesting too deep") from None
    if r.pos != len(data):
        raise Malformed(f"trailing bytes after position {r.pos}")
    return a


def code_bytes(c: int) -> bytes:
    if c <= 0:
        raise InvalidPrefix("code must be positive")
    data = c.to_bytes((c.bit_length() + 7) // 8, "big")
    if data[0] != 0x01:
        raise InvalidPrefix(f"leading byte 0x{data[0]:02X}, expected 0x01")
    return data[1:]


def decode(c: int) -> Encodable:
    """Inverse of :func:`encode`; raises a :class:`DecodeError` subclass."""
    return deserialize(code_bytes(c))


def try_decode(c: int):
    try:
        return decode(c)
    except DecodeError:
        return None


# -- sequence coding ---------------------------------------------------------

def pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def seq_encode(es: list[int]) -> int:
    if not es:
        return 0
    fold = es[0]
    for e in es[1:]:
        fold = pair(fold, e)
    return pair(len(es), fold) + 1


def seq_decode(s: int) -> list[int]:
    """Total decoding: every natural denotes some sequence."""
    if s == 0:
        return []
    n, fold = unpair(s - 1)
    if n == 0:
        return []
    out = []
    for _ in range(n - 1):
        fold, e = unpair(fold)
        out.append(e)
    out.append(fold)
    out.reverse()
    return out


def seq_len(s: int) -> int:
    if s == 0:
        return 0
    return unpair(s - 1)[0]


def seq_get(s: int, i: int) -> int:
    if s == 0:
        raise IndexError(f"sequence index {i} out of range (length 0)")
    n, fold = unpair(s - 1)
    if i >= n:
        raise IndexError(f"sequence index {i} out of range (length {n})")
    steps = n - 1 - i
    while steps and fold:
        fold, _ = unpair(fold)
        steps -= 1
    if not fold:
        return 0
    return unpair(fold)[1] if i else fold


def assign_get(s: int, i: int) -> int:
    """Value of variable ``i`` under assignment ``s``; 0 past the end."""
    try:
        return seq_get(s, i)
    except IndexError:
        return 0


def assign_update(s: int, i: int, w: int) -> int:
    es = seq_decode(s)
    if len(es) <= i:
        es.extend([0] * (i + 1 - len(es)))
    es[i] = w
    return seq_encode(es)
