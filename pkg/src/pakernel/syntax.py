"""Terms and formulas of arithmetic, with parsing, printing and substitution.

Every node is hash-consed: constructing the same tree twice yields the same
object, so equality is identity and hashing is O(1).  Numerals are stored
compactly as ``Num(k)``; ``Succ`` applied to a numeral normalizes to the next
numeral, so ``Succ(Succ(Num(0))) is Num(2)``.
"""

from __future__ import annotations

import re
import threading
from typing import Iterable, Mapping, Union

__all__ = [
    "Node", "Term", "Formula", "Var", "Num", "Succ", "Plus", "Times", "PRApp",
    "Bot", "Eq", "Less", "Imp", "And", "Or", "Forall", "Exists",
    "ZERO", "BOT", "numeral", "neg", "iff", "forall_lt", "exists_lt",
    "closure", "free_vars", "all_vars", "substitute", "subst", "subst_strict",
    "is_free_for", "parse", "to_sexp", "ParseError", "register_pr_symbol",
    "pr_arity", "term_size",
]

_TABLE: dict = {}
_LOCK = threading.Lock()

# symbol id -> (arity, name); filled in by the registry
_PR_SYMBOLS: dict[int, tuple[int, str]] = {}


def register_pr_symbol(sym: int, arity: int, name: str) -> None:
    old = _PR_SYMBOLS.get(sym)
    if old is not None and old != (arity, name):
        raise ValueError(f"PR symbol {sym} already registered as {old}")
    _PR_SYMBOLS[sym] = (arity, name)


def pr_arity(sym: int) -> int:
    try:
        return _PR_SYMBOLS[sym][0]
    except KeyError:
        raise KeyError(f"unknown PR symbol id {sym}") from None


class Node:
    __slots__ = ("_fv", "_av", "__weakref__")
    _fields: tuple[str, ...] = ()

    def __new__(cls, *args):
        key = (cls, *args)
        obj = _TABLE.get(key)
        if obj is not None:
            return obj
        with _LOCK:
            obj = _TABLE.get(key)
            if obj is None:
                obj = object.__new__(cls)
                for name, val in zip(cls._fields, args):
                    object.__setattr__(obj, name, val)
                object.__setattr__(obj, "_fv", None)
                object.__setattr__(obj, "_av", None)
                _TABLE[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("syntax nodes are immutable")

    def __reduce__(self):
        return (type(self), tuple(getattr(self, f) for f in self._fields))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __repr__(self):
        return to_sexp(self)

    def __lt__(self, other):
        return to_sexp(self) < to_sexp(other)


class Term(Node):
    __slots__ = ()


class Formula(Node):
    __slots__ = ()


class Var(Term):
    __slots__ = ("index",)
    _fields = ("index",)
    __match_args__ = _fields

    def __new__(cls, index: int):
        if not isinstance(index, int) or index < 0:
            raise ValueError(f"bad variable index {index!r}")
        return super().__new__(cls, index)

    @property
    def name(self) -> str:
        return f"x{self.index}"


class Num(Term):
    """The numeral ``k``: zero under k successors."""

    __slots__ = ("value",)
    _fields = ("value",)
    __match_args__ = _fields

    def __new__(cls, value: int):
        if not isinstance(value, int) or value < 0:
            raise ValueError(f"bad numeral {value!r}")
        return super().__new__(cls, value)


class Succ(Term):
    __slots__ = ("arg",)
    _fields = ("arg",)
    __match_args__ = _fields

    def __new__(cls, arg: Term):
        if isinstance(arg, Num):
            return Num(arg.value + 1)
        return super().__new__(cls, arg)


class Plus(Term):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = _fields


class Times(Term):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = _fields


class PRApp(Term):
    __slots__ = ("symbol", "args")
    _fields = ("symbol", "args")
    __match_args__ = _fields

    def __new__(cls, symbol: int, args: Iterable[Term]):
        args = tuple(args)
        arity = pr_arity(symbol)
        if len(args) != arity:
            raise ValueError(f"PR symbol {symbol} takes {arity} arguments, got {len(args)}")
        return super().__new__(cls, symbol, args)


class Bot(Formula):
    __slots__ = ()
    __match_args__ = ()


class Eq(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = _fields


class Less(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = _fields


class Imp(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = _fields


class And(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = _fields


class Or(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = _fields


class Forall(Formula):
    __slots__ = ("var", "body")
    _fields = ("var", "body")
    __match_args__ = _fields


class Exists(Formula):
    __slots__ = ("var", "body")
    _fields = ("var", "body")
    __match_args__ = _fields


AST = Union[Term, Formula]
ZERO = Num(0)
BOT = Bot()

_BINARY_TERMS = (Plus, Times)
_BINARY_FORMULAS = (Eq, Less, Imp, And, Or)
_QUANTIFIERS = (Forall, Exists)


def numeral(k: int) -> Num:
    return Num(k)


def neg(phi: Formula) -> Formula:
    return Imp(phi, BOT)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def forall_lt(y: Var, bound: Term, phi: Formula) -> Formula:
    if y.index in free_vars(bound):
        raise ValueError("bounded variable occurs in its bound")
    return Forall(y, Imp(Less(y, bound), phi))


def exists_lt(y: Var, bound: Term, phi: Formula) -> Formula:
    if y.index in free_vars(bound):
        raise ValueError("bounded variable occurs in its bound")
    return Exists(y, And(Less(y, bound), phi))


# -- variables ---------------------------------------------------------------

def free_vars(a: AST) -> frozenset[int]:
    """Indices of the free variables of a term or formula."""
    fv = a._fv
    if fv is not None:
        return fv
    if isinstance(a, Var):
        fv = frozenset((a.index,))
    elif isinstance(a, (Num, Bot)):
        fv = frozenset()
    elif isinstance(a, Succ):
        fv = free_vars(a.arg)
    elif isinstance(a, PRApp):
        fv = frozenset().union(*(free_vars(t) for t in a.args))
    elif isinstance(a, _QUANTIFIERS):
        fv = free_vars(a.body) - {a.var.index}
    else:
        fv = free_vars(a.left) | free_vars(a.right)
    object.__setattr__(a, "_fv", fv)
    return fv


def all_vars(a: AST) -> frozenset[int]:
    """Indices of every variable occurring in ``a``, bound or free."""
    av = a._av
    if av is not None:
        return av
    if isinstance(a, Var):
        av = frozenset((a.index,))
    elif isinstance(a, (Num, Bot)):
        av = frozenset()
    elif isinstance(a, Succ):
        av = all_vars(a.arg)
    elif isinstance(a, PRApp):
        av = frozenset().union(*(all_vars(t) for t in a.args))
    elif isinstance(a, _QUANTIFIERS):
        av = all_vars(a.body) | {a.var.index}
    else:
        av = all_vars(a.left) | all_vars(a.right)
    object.__setattr__(a, "_av", av)
    return av


def closure(phi: Formula) -> Formula:
    """Universal closure; the smallest free index ends up outermost."""
    for i in sorted(free_vars(phi), reverse=True):
        phi = Forall(Var(i), phi)
    return phi


def term_size(a: AST) -> int:
    if isinstance(a, (Var, Num, Bot)):
        return 1
    if isinstance(a, Succ):
        return 1 + term_size(a.arg)
    if isinstance(a, PRApp):
        return 1 + sum(term_size(t) for t in a.args)
    if isinstance(a, _QUANTIFIERS):
        return 1 + term_size(a.body)
    return 1 + term_size(a.left) + term_size(a.right)


# -- substitution ------------------------------------------------------------

_SUBST_CACHE: dict = {}


def _subst_term(t: Term, m: Mapping[int, Term]) -> Term:
    if not (free_vars(t) & m.keys()):
        return t
    if isinstance(t, Var):
        return m.get(t.index, t)
    if isinstance(t, Succ):
        return Succ(_subst_term(t.arg, m))
    if isinstance(t, PRApp):
        return PRApp(t.symbol, [_subst_term(s, m) for s in t.args])
    return type(t)(_subst_term(t.left, m), _subst_term(t.right, m))


def _subst(a: AST, m: dict[int, Term], strict: bool) -> AST:
    m = {k: v for k, v in m.items() if k in free_vars(a)}
    if not m:
        return a
    if isinstance(a, Term):
        return _subst_term(a, m)
    key = (a, tuple(sorted(m.items(), key=lambda kv: kv[0])), strict)
    hit = _SUBST_CACHE.get(key)
    if hit is not None:
        return hit
    if isinstance(a, (Eq, Less)):
        out = type(a)(_subst_term(a.left, m), _subst_term(a.right, m))
    elif isinstance(a, (Imp, And, Or)):
        out = type(a)(_subst(a.left, m, strict), _subst(a.right, m, strict))
    else:
        v = a.var.index
        incoming = frozenset().union(*(free_vars(t) for t in m.values()))
        if v in incoming:
            if strict:
                raise _Capture()
            used = all_vars(a) | incoming | m.keys()
            fresh = 0
            while fresh in used:
                fresh += 1
            body = _subst(a.body, {v: Var(fresh)}, False)
            out = type(a)(Var(fresh), _subst(body, m, strict))
        else:
            out = type(a)(a.var, _subst(a.body, m, strict))
    _SUBST_CACHE[key] = out
    return out


class _Capture(Exception):
    pass


def subst(a: AST, mapping: Mapping[int, Term]) -> AST:
    """Simultaneous capture-avoiding substitution of terms for free variables."""
    return _subst(a, dict(mapping), False)


def substitute(phi: AST, v: Var, t: Term) -> AST:
    """Capture-avoiding ``phi[v := t]``; binders are renamed to the smallest
    index not occurring in ``phi`` or ``t`` when capture threatens."""
    return _subst(phi, {v.index: t}, False)


def subst_strict(phi: AST, mapping: Mapping[int, Term]) -> AST | None:
    """Substitution without renaming; None if some term is not free for its variable."""
    try:
        return _subst(phi, dict(mapping), True)
    except _Capture:
        return None


def is_free_for(t: Term, v: Var, phi: Formula) -> bool:
    return subst_strict(phi, {v.index: t}) is not None


# -- printing ----------------------------------------------------------------

UNARY_PRINT_LIMIT = 64

_NAMES = {Plus: "plus", Times: "times", Eq: "=", Less: "<", Imp: "->",
          And: "and", Or: "or", Forall: "forall", Exists: "exists"}


def to_sexp(a: AST) -> str:
    """Canonical s-expression text of a term or formula."""
    out: list[str] = []
    _emit(a, out)
    return "".join(out)


def _emit(a: AST, out: list[str]) -> None:
    if isinstance(a, Var):
        out.append(a.name)
    elif isinstance(a, Num):
        k = a.value
        if k > UNARY_PRINT_LIMIT:
            out.append(f"(num {k})")
        else:
            out.append("(succ " * k + "zero" + ")" * k)
    elif isinstance(a, Bot):
        out.append("(bot)")
    elif isinstance(a, Succ):
        out.append("(succ ")
        _emit(a.arg, out)
        out.append(")")
    elif isinstance(a, PRApp):
        out.append(f"(pr {a.symbol}")
        for t in a.args:
            out.append(" ")
            _emit(t, out)
        out.append(")")
    elif isinstance(a, _QUANTIFIERS):
        out.append(f"({_NAMES[type(a)]} {a.var.name} ")
        _emit(a.body, out)
        out.append(")")
    else:
        out.append(f"({_NAMES[type(a)]} ")
        _emit(a.left, out)
        out.append(" ")
        _emit(a.right, out)
        out.append(")")


# -- parsing -----------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at byte {offset}")
        self.offset = offset


_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_VAR = re.compile(r"x(\d+)\Z")


def _tokenize(text: str) -> list[tuple[str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError("unexpected character", pos)
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is None:
            break
        toks.append((tok, m.start(m.lastindex)))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.end = len(text.encode())

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, self.end)

    def next(self):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input", tok[1])
        self.i += 1
        return tok

    def expect_close(self, head: str, start: int):
        tok, off = self.next()
        if tok != ")":
            raise ParseError(f"wrong number of arguments to '{head}'", start)

    def node(self) -> AST:
        tok, off = self.next()
        if tok == "(":
            return self.compound(off)
        if tok == ")":
            raise ParseError("unexpected ')'", off)
        if tok == "zero":
            return ZERO
        m = _VAR.match(tok)
        if m:
            return Var(int(m.group(1)))
        raise ParseError(f"unexpected atom '{tok}'", off)

    def var(self) -> Var:
        tok, off = self.next()
        if tok == "(":
            head, _ = self.next()
            if head != "var":
                raise ParseError("expected variable", off)
            n = self.natural()
            self.expect_close("var", off)
            return Var(n)
        m = _VAR.match(tok or "")
        if not m:
            raise ParseError("expected variable", off)
        return Var(int(m.group(1)))

    def natural(self) -> int:
        tok, off = self.next()
        if tok is None or not tok.isdigit():
            raise ParseError("expected natural number", off)
        return int(tok)

    def args(self, k: int, head: str, start: int) -> list[AST]:
        out = []
        for _ in range(k):
            if self.peek()[0] in (")", None):
                raise ParseError(f"wrong number of arguments to '{head}'", start)
            out.append(self.node())
        self.expect_close(head, start)
        return out

    def term(self, a: AST, off: int) -> Term:
        if not isinstance(a, Term):
            raise ParseError("expected a term", off)
        return a

    def formula(self, a: AST, off: int) -> Formula:
        if not isinstance(a, Formula):
            raise ParseError("expected a formula", off)
        return a

    def compound(self, start: int) -> AST:
        head, off = self.next()
        if head == "bot":
            self.expect_close(head, start)
            return BOT
        if head == "zero":
            self.expect_close(head, start)
            return ZERO
        if head == "var":
            n = self.natural()
            self.expect_close(head, start)
            return Var(n)
        if head == "num":
            n = self.natural()
            self.expect_close(head, start)
            return Num(n)
        if head == "succ":
            (a,) = self.args(1, head, start)
            return Succ(self.term(a, start))
        if head in ("plus", "times"):
            a, b = self.args(2, head, start)
            cls = Plus if head == "plus" else Times
            return cls(self.term(a, start), self.term(b, start))
        if head in ("=", "<"):
            a, b = self.args(2, head, start)
            cls = Eq if head == "=" else Less
            return cls(self.term(a, start), self.term(b, start))
        if head in ("->", "and", "or"):
            a, b = self.args(2, head, start)
            cls = {"->": Imp, "and": And, "or": Or}[head]
            return cls(self.formula(a, start), self.formula(b, start))
        if head in ("forall", "exists"):
            v = self.var()
            (body,) = self.args(1, head, start)
            cls = Forall if head == "forall" else Exists
            return cls(v, self.formula(body, start))
        if head == "pr":
            sym = self.natural()
            if sym not in _PR_SYMBOLS:
                raise ParseError(f"unknown PR symbol id {sym}", start)
            args = []
            while self.peek()[0] not in (")", None):
                args.append(self.term(self.node(), start))
            self.expect_close(head, start)
            if len(args) != pr_arity(sym):
                raise ParseError(f"arity mismatch for PR symbol {sym}", start)
            return PRApp(sym, args)
        raise ParseError(f"unknown head '{head}'", off)


def parse(text: str) -> AST:
    """Parse canonical s-expression text into a term or formula."""
    p = _Parser(text)
    a = p.node()
    tok, off = p.peek()
    if tok is not None:
        raise ParseError("trailing input", off)
    return a
