"""Registered primitive recursive symbols.

Each symbol carries a native implementation (what the meta-evaluator runs),
a PR program, and its defining clauses.  A clause is a closed formula built
from integer parameters; clauses whose parameter is a concrete code apply one
step of recursion on the syntax the code denotes, and the kernel decides the
side condition by decoding.  Every clause instance is true in the standard
model; the tests check this on samples.

Heavy syntactic symbols (term value, formula evaluation, proof checking) are
registered with opaque ``Native`` programs.  Their definitions are primitive
recursive by construction (structural recursion over codes with all searches
bounded by the code), but no core transcription is provided.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import encoding as enc
from .classes import bounded_exists, bounded_forall, is_delta0
from .primrec import (
    Compose, Fuel, IfZero, Native, PRProgram, Proj, const, elaborate,
    register_native, _monus, _add,
)
from .syntax import (
    BOT, And, Bot, Eq, Exists, Forall, Formula, Imp, Less, Num, Or, Plus,
    PRApp, Succ, Term, Times, Var, iff, neg, register_pr_symbol,
)


class SideCondition(ValueError):
    """A clause or schema was instantiated outside its side condition."""


@dataclass
class Symbol:
    id: int
    name: str
    arity: int
    impl: Callable  # (args, fuel) -> int
    program: PRProgram | None = None
    clauses: dict[int, Callable[..., Formula]] = field(default_factory=dict)
    # clause id -> number of integer parameters
    clause_params: dict[int, int] = field(default_factory=dict)

    def native(self, args, fuel: Fuel) -> int:
        fuel.spend()
        return self.impl(args, fuel)

    def __call__(self, *args: Term) -> PRApp:
        return PRApp(self.id, args)


SYMBOLS: dict[int, Symbol] = {}
BY_NAME: dict[str, Symbol] = {}


def _register(sym_id: int, name: str, arity: int, impl: Callable, program=None) -> Symbol:
    register_pr_symbol(sym_id, arity, name)
    if program is None:
        register_native("sym:" + name, arity, lambda params, xs, fuel, _f=impl: _f(list(xs), fuel))
        program = Native("sym:" + name)
    s = Symbol(sym_id, name, arity, impl, program)
    SYMBOLS[sym_id] = s
    BY_NAME[name] = s
    return s


def clause(sym: Symbol, cid: int, nparams: int):
    def deco(fn):
        sym.clauses[cid] = fn
        sym.clause_params[cid] = nparams
        return fn
    return deco


def clause_instance(sym_id: int, cid: int, params: list[int]) -> Formula:
    sym = SYMBOLS.get(sym_id)
    if sym is None or cid not in sym.clauses:
        raise SideCondition(f"no clause {cid} for PR symbol {sym_id}")
    if len(params) != sym.clause_params[cid]:
        raise SideCondition("wrong number of clause parameters")
    return sym.clauses[cid](*params)


ONE = Num(1)
# clause variables live far above anything user formulas mention, so
# instantiating a clause at an open term cannot capture
CLAUSE_VAR = 3_000_000
y0, y1, y2 = Var(CLAUSE_VAR), Var(CLAUSE_VAR + 1), Var(CLAUSE_VAR + 2)


def _decode(c: int):
    return enc.try_decode(c) if c > 0 else None


def _code(a) -> Num:
    return Num(enc.encode(a))


# -- sequences and pairing -------------------------------------------------------

get = _register(1, "get", 2, lambda a, f: enc.assign_get(a[0], a[1]))
upd = _register(2, "upd", 3, lambda a, f: enc.assign_update(a[0], a[1], a[2]))
pair = _register(3, "pair", 2, lambda a, f: enc.pair(a[0], a[1]))
hd = _register(4, "hd", 1, lambda a, f: enc.unpair(a[0])[0])
tl = _register(5, "tl", 1, lambda a, f: enc.unpair(a[0])[1])

_eqb_prog = IfZero(
    Compose(_add(), (Compose(_monus(), (Proj(0, 2), Proj(1, 2))),
                     Compose(_monus(), (Proj(1, 2), Proj(0, 2))))),
    const(1, 2), const(0, 2))
eqb = _register(6, "eqb", 2, lambda a, f: int(a[0] == a[1]), _eqb_prog)


def _value_clause(sym: Symbol, cid: int):
    """Clause sym(a1..ak) = value for concrete numerals (arithmetical symbols only)."""
    @clause(sym, cid, sym.arity)
    def _val(*args):
        return Eq(sym(*map(Num, args)), Num(sym.impl(list(args), Fuel(10**6))))
    return _val


for _s in (get, upd, pair, hd, tl):
    _value_clause(_s, 9)


@clause(get, 0, 1)
def _get_same(i):
    return Forall(y0, Forall(y1, Eq(get(upd(y0, Num(i), y1), Num(i)), y1)))


@clause(get, 1, 2)
def _get_other(i, j):
    if i == j:
        raise SideCondition("get/upd clause needs distinct indices")
    return Forall(y0, Forall(y1, Eq(get(upd(y0, Num(i), y1), Num(j)), get(y0, Num(j)))))


@clause(hd, 0, 0)
def _hd_pair():
    return Forall(y0, Forall(y1, Eq(hd(pair(y0, y1)), y0)))


@clause(tl, 0, 0)
def _tl_pair():
    return Forall(y0, Forall(y1, Eq(tl(pair(y0, y1)), y1)))


@clause(eqb, 0, 0)
def _eqb_eq():
    return Forall(y0, Forall(y1, Imp(Eq(y0, y1), Eq(eqb(y0, y1), ONE))))


@clause(eqb, 1, 0)
def _eqb_ne():
    return Forall(y0, Forall(y1, Imp(neg(Eq(y0, y1)), Eq(eqb(y0, y1), Num(0)))))


# -- term values and Delta0 truth under an assignment ----------------------------

def _tv_impl(a, fuel):
    from .semantics import eval_term

    t = _decode(a[0])
    if not isinstance(t, Term):
        return 0
    y = a[1]
    return eval_term(t, lambda i: enc.assign_get(y, i), fuel)


def _ev_impl(a, fuel):
    from .semantics import evaluate

    phi = _decode(a[0])
    if not isinstance(phi, Formula) or not is_delta0(phi):
        return 0
    y = a[1]
    return int(evaluate(phi, lambda i: enc.assign_get(y, i), fuel))


tv = _register(7, "tv", 2, _tv_impl)
ev = _register(8, "ev", 2, _ev_impl)


@clause(tv, 0, 1)
def _tv_step(c):
    t = _decode(c)
    if not isinstance(t, Term):
        raise SideCondition("tv clause: not a term code")
    y = y0
    if isinstance(t, Num):
        rhs = t
    elif isinstance(t, Var):
        rhs = get(y, Num(t.index))
    elif isinstance(t, Succ):
        rhs = Succ(tv(_code(t.arg), y))
    elif isinstance(t, (Plus, Times)):
        rhs = type(t)(tv(_code(t.left), y), tv(_code(t.right), y))
    else:
        rhs = PRApp(t.symbol, [tv(_code(s), y) for s in t.args])
    return Forall(y, Eq(tv(Num(c), y), rhs))


def ev_true(code: Term, y: Term) -> Formula:
    return Eq(ev(code, y), ONE)


@clause(ev, 0, 1)
def _ev_step(c):
    phi = _decode(c)
    if not isinstance(phi, Formula) or not is_delta0(phi):
        raise SideCondition("ev clause: not a Delta0 formula code")
    bf, be = bounded_forall(phi), bounded_exists(phi)
    y = y0
    lhs = ev_true(Num(c), y)
    if isinstance(phi, Bot):
        rhs = BOT
    elif isinstance(phi, (Eq, Less)):
        rhs = type(phi)(tv(_code(phi.left), y), tv(_code(phi.right), y))
    elif isinstance(phi, (Imp, And, Or)):
        rhs = type(phi)(ev_true(_code(phi.left), y), ev_true(_code(phi.right), y))
    else:
        v, bound, body = bf or be
        inner = ev_true(_code(body), upd(y, Num(v.index), v))
        guard = Less(v, tv(_code(bound), y))
        rhs = Forall(v, Imp(guard, inner)) if bf else Exists(v, And(guard, inner))
    return Forall(y, iff(lhs, rhs))


# -- Sigma block peeling -----------------------------------------------------------

def strip_exists(phi: Formula) -> tuple[list[Var], Formula]:
    vs = []
    while isinstance(phi, Exists) and not is_delta0(phi):
        vs.append(phi.var)
        phi = phi.body
    return vs, phi


def _sb_impl(a, fuel):
    phi = _decode(a[0])
    if not isinstance(phi, Formula):
        return a[0]
    return enc.encode(strip_exists(phi)[1])


def _sa_impl(a, fuel):
    phi = _decode(a[0])
    y, z = a[1], a[2]
    if not isinstance(phi, Formula):
        return y
    for v in strip_exists(phi)[0]:
        fuel.spend()
        h, z = enc.unpair(z)
        y = enc.assign_update(y, v.index, h)
    return y


sb = _register(9, "sb", 1, _sb_impl)
sa = _register(10, "sa", 3, _sa_impl)


def _peelable(c):
    phi = _decode(c)
    if isinstance(phi, Exists) and not is_delta0(phi):
        return phi
    return None


@clause(sb, 0, 1)
def _sb_step(c):
    phi = _peelable(c)
    if phi is None:
        raise SideCondition("sb clause 0: not an unbounded existential")
    return Eq(sb(Num(c)), sb(_code(phi.body)))


@clause(sb, 1, 1)
def _sb_stop(c):
    if _peelable(c) is not None:
        raise SideCondition("sb clause 1: code is an unbounded existential")
    return Eq(sb(Num(c)), Num(c))


@clause(sa, 0, 1)
def _sa_step(c):
    phi = _peelable(c)
    if phi is None:
        raise SideCondition("sa clause 0: not an unbounded existential")
    i = Num(phi.var.index)
    return Forall(y0, Forall(y1, Eq(sa(Num(c), y0, y1),
                                    sa(_code(phi.body), upd(y0, i, hd(y1)), tl(y1)))))


@clause(sa, 1, 1)
def _sa_stop(c):
    if _peelable(c) is not None:
        raise SideCondition("sa clause 1: code is an unbounded existential")
    return Forall(y0, Forall(y1, Eq(sa(Num(c), y0, y1), y0)))


# -- dual normal form, Sigma_1 evaluator, prenex map ---------------------------------

def dual_nf(phi: Formula) -> Formula:
    """Normal form of the negation of a normal form."""
    if is_delta0(phi):
        return neg(phi)
    if isinstance(phi, Exists):
        return Forall(phi.var, dual_nf(phi.body))
    if isinstance(phi, Forall):
        return Exists(phi.var, dual_nf(phi.body))
    return neg(phi)


def _negc_impl(a, fuel):
    phi = _decode(a[0])
    if not isinstance(phi, Formula):
        return 0
    return enc.encode(dual_nf(phi))


negc = _register(11, "negc", 1, _negc_impl)


@clause(negc, 0, 1)
def _negc_val(c):
    return Eq(negc(Num(c)), Num(_negc_impl([c], None)))


def _eval0_impl(a, fuel):
    return _ev_impl([_sb_impl([a[0]], fuel), _sa_impl(a, fuel)], fuel)


eval0 = _register(12, "eval0", 3, _eval0_impl)


@clause(eval0, 0, 0)
def _eval0_def():
    return Forall(y0, Forall(y1, Forall(y2, Eq(eval0(y0, y1, y2), ev(sb(y0), sa(y0, y1, y2))))))


def _pnx_impl(a, fuel):
    from .classes import prenex

    phi = _decode(a[0])
    if not isinstance(phi, Formula):
        return a[0]
    return enc.encode(prenex(phi))


pnx = _register(13, "pnx", 1, _pnx_impl)


@clause(pnx, 0, 1)
def _pnx_val(c):
    return Eq(pnx(Num(c)), Num(_pnx_impl([c], None)))


# -- the proof predicate ----------------------------------------------------------------

def _spend_decode(c, fuel):
    if fuel is not None:
        fuel.spend(1 + c.bit_length() // 64)


def _lst_impl(a, fuel):
    from .proofs import Proof

    _spend_decode(a[0], fuel)
    p = _decode(a[0])
    if isinstance(p, Proof) and p.lines:
        return enc.encode(p.lines[-1].formula)
    return 0


def _chk_impl(a, fuel):
    from .kernel import check_proof
    from .proofs import Proof

    _spend_decode(a[0], fuel)
    p = _decode(a[0])
    if not isinstance(p, Proof):
        return 0
    return int(check_proof(p, fuel=fuel).accepted)


def _prf_impl(a, fuel):
    if _lst_impl([a[0]], fuel) != a[1]:
        return 0
    return _chk_impl([a[0]], fuel)


lst = _register(14, "lst", 1, _lst_impl)
chk = _register(15, "chk", 1, _chk_impl)
prf = _register(16, "prf", 2, _prf_impl)


@clause(lst, 0, 1)
def _lst_val(c):
    return Eq(lst(Num(c)), Num(_lst_impl([c], None)))


@clause(chk, 0, 1)
def _chk_val(c):
    return Eq(chk(Num(c)), Num(_chk_impl([c], Fuel(10**9))))


@clause(prf, 0, 0)
def _prf_def():
    return Forall(y0, Forall(y1, Eq(prf(y0, y1), Times(chk(y0), eqb(lst(y0), y1)))))


# -- selectors registered as opaque symbols -------------------------------------------------

def _certsel_impl(a, fuel):
    from .selector import selector_code

    return selector_code(a[0], fuel=fuel)


certsel = _register(17, "certsel", 1, _certsel_impl)


def _ciproof_impl(a, fuel):
    from .schemes import ci_selector_code

    return ci_selector_code(a[0])


def _cimap_impl(a, fuel):
    from .schemes import ci_scheme_code

    return ci_scheme_code(a[0])


ciproof = _register(18, "ciproof", 1, _ciproof_impl)
cimap = _register(19, "cimap", 1, _cimap_impl)


def is_closed_pr_term(t: Term) -> bool:
    from .syntax import free_vars

    return not free_vars(t)


__all__ = ["SYMBOLS", "BY_NAME", "Symbol", "SideCondition", "clause_instance",
           "get", "upd", "pair", "hd", "tl", "eqb", "tv", "ev", "sb", "sa", "negc",
           "eval0", "pnx", "lst", "chk", "prf", "certsel", "ciproof", "cimap",
           "dual_nf", "strip_exists", "ev_true"]
