"""The golden corpus: small hand-written derivations, levels 1 and 2."""

from __future__ import annotations

from pathlib import Path

from . import kernel as K
from .proofs import MP, Eval, Gen, Line, Proof
from .registry import eqb
from .syntax import (
    And, Eq, Exists, Forall, Imp, Less, Num, Or, Plus, Succ, Times, Var, ZERO, neg,
)

x0, x1 = Var(0), Var(1)


def _ax(schema, *objs) -> Line:
    return K.make_axiom(schema, *objs)


def _mp(lines, i, j) -> Line:
    return Line(lines[j].formula.right, MP(i, j))


def _build(steps) -> Proof:
    lines: list[Line] = []
    for st in steps:
        if isinstance(st, Line):
            lines.append(st)
        elif st[0] == "mp":
            lines.append(_mp(lines, st[1], st[2]))
        elif st[0] == "gen":
            lines.append(Line(Forall(st[2], lines[st[1]].formula), Gen(st[1], st[2])))
        elif st[0] == "eval":
            lines.append(Line(st[1], Eval()))
    return Proof(tuple(lines))


def add_zero_one() -> Proof:
    """1 + 0 = 1 from the axiom x + 0 = x."""
    return _build([
        _ax(K.ADD_0),
        _ax(K.ALL_ELIM, Eq(Plus(x0, ZERO), x0), x0, Num(1)),
        ("mp", 0, 1),
    ])


def ind_refl() -> Proof:
    """forall x0 (x0 = x0) by induction."""
    phi = Eq(x0, x0)
    sx = Succ(x0)
    step = Forall(x0, Imp(phi, Eq(sx, sx)))
    return _build([
        _ax(K.EQ_REFL, sx),
        _ax(K.K, Eq(sx, sx), phi),
        ("mp", 0, 1),
        ("gen", 2, x0),
        _ax(K.EQ_REFL, ZERO),
        _ax(K.AND_I, Eq(ZERO, ZERO), step),
        ("mp", 4, 5),
        ("mp", 3, 6),
        _ax(K.IND, phi, x0),
        ("mp", 7, 8),
    ])


def identity_imp() -> Proof:
    """A -> A from K and S."""
    a = Eq(ZERO, ZERO)
    aa = Imp(a, a)
    return _build([
        _ax(K.S, a, aa, a),
        _ax(K.K, a, aa),
        ("mp", 1, 0),
        _ax(K.K, a, a),
        ("mp", 3, 2),
    ])


def eval_times() -> Proof:
    e = Eq(Times(Num(2), Num(3)), Num(6))
    return _build([
        ("eval", e),
        _ax(K.K, e, Eq(ZERO, ZERO)),
        ("mp", 0, 1),
    ])


def succ_ne_zero() -> Proof:
    return _build([
        _ax(K.SUCC_NZ),
        _ax(K.ALL_ELIM, neg(Eq(Succ(x0), ZERO)), x0, ZERO),
        ("mp", 0, 1),
    ])


def less_zero_gen() -> Proof:
    return _build([
        _ax(K.LESS_0),
        _ax(K.ALL_ELIM, neg(Less(x0, ZERO)), x0, x1),
        ("mp", 0, 1),
        ("gen", 2, x1),
    ])


def exists_two() -> Proof:
    body = Eq(x0, Num(2))
    return _build([
        _ax(K.EQ_REFL, Num(2)),
        _ax(K.EX_INTRO, body, x0, Num(2)),
        ("mp", 0, 1),
    ])


def add_succ_instance() -> Proof:
    """1 + 1 = (1 + 0)'."""
    inner = Forall(x1, Eq(Plus(x0, Succ(x1)), Succ(Plus(x0, x1))))
    return _build([
        _ax(K.ADD_S),
        _ax(K.ALL_ELIM, inner, x0, Num(1)),
        ("mp", 0, 1),
        _ax(K.ALL_ELIM, Eq(Plus(Num(1), Succ(x1)), Succ(Plus(Num(1), x1))), x1, ZERO),
        ("mp", 2, 3),
    ])


def or_left() -> Proof:
    return _build([
        _ax(K.EQ_REFL, ZERO),
        _ax(K.OR_I1, Eq(ZERO, ZERO), Less(Num(1), ZERO)),
        ("mp", 0, 1),
    ])


def mul_zero_gen() -> Proof:
    return _build([
        _ax(K.MUL_0),
        _ax(K.ALL_ELIM, Eq(Times(x0, ZERO), ZERO), x0, x1),
        ("mp", 0, 1),
        ("gen", 2, x1),
    ])


def and_right() -> Proof:
    a, b = Eq(ZERO, ZERO), Eq(Num(1), Num(1))
    return _build([
        _ax(K.EQ_REFL, ZERO),
        _ax(K.EQ_REFL, Num(1)),
        _ax(K.AND_I, a, b),
        ("mp", 0, 2),
        ("mp", 1, 3),
        _ax(K.AND_E2, a, b),
        ("mp", 4, 5),
    ])


def eqb_eval() -> Proof:
    e = Eq(eqb(Num(3), Num(3)), Num(1))
    return _build([
        ("eval", e),
        _ax(K.EX_INTRO, Eq(eqb(Num(3), x0), Num(1)), x0, Num(3)),
        ("mp", 0, 1),
    ])


def bounded_less() -> Proof:
    """exists x0 (x0 < 3 and x0 = 1) from a computed instance."""
    body = And(Less(x0, Num(3)), Eq(x0, Num(1)))
    inst = And(Less(Num(1), Num(3)), Eq(Num(1), Num(1)))
    return _build([
        ("eval", Eq(Plus(Num(1), Num(0)), Num(1))),
        _ax(K.LESS_S_INV),
        _ax(K.ALL_ELIM, Forall(x1, Imp(Or(Less(x0, x1), Eq(x0, x1)), Less(x0, Succ(x1)))), x0, Num(1)),
        ("mp", 1, 2),
        _ax(K.ALL_ELIM, Imp(Or(Less(Num(1), x1), Eq(Num(1), x1)), Less(Num(1), Succ(x1))), x1, Num(2)),
        ("mp", 3, 4),                                         # 1<2 or 1=2 -> 1<3
        _ax(K.LESS_S_INV),
        _ax(K.ALL_ELIM, Forall(x1, Imp(Or(Less(x0, x1), Eq(x0, x1)), Less(x0, Succ(x1)))), x0, Num(1)),
        ("mp", 6, 7),
        _ax(K.ALL_ELIM, Imp(Or(Less(Num(1), x1), Eq(Num(1), x1)), Less(Num(1), Succ(x1))), x1, Num(1)),
        ("mp", 8, 9),                                         # 1<1 or 1=1 -> 1<2
        _ax(K.EQ_REFL, Num(1)),
        _ax(K.OR_I2, Less(Num(1), Num(1)), Eq(Num(1), Num(1))),
        ("mp", 11, 12),
        ("mp", 13, 10),                                       # 1 < 2
        _ax(K.OR_I1, Less(Num(1), Num(2)), Eq(Num(1), Num(2))),
        ("mp", 14, 15),
        ("mp", 16, 5),                                        # 1 < 3
        _ax(K.AND_I, Less(Num(1), Num(3)), Eq(Num(1), Num(1))),
        ("mp", 17, 18),
        ("mp", 11, 19),
        _ax(K.EX_INTRO, body, x0, Num(1)),
        ("mp", 20, 21),
    ])


GOLDEN = {
    "01_add_zero_one": add_zero_one,
    "02_ind_refl": ind_refl,
    "03_identity_imp": identity_imp,
    "04_eval_times": eval_times,
    "05_succ_ne_zero": succ_ne_zero,
    "06_less_zero_gen": less_zero_gen,
    "07_exists_two": exists_two,
    "08_add_succ_instance": add_succ_instance,
    "09_or_left": or_left,
    "10_mul_zero_gen": mul_zero_gen,
    "11_and_right": and_right,
    "12_eqb_eval": eqb_eval,
    "13_bounded_less": bounded_less,
}


def _single_axiom(schema) -> Proof:
    return Proof((_ax(schema),))


def identity_gen() -> Proof:
    """forall x0 (x0 = 0 -> x0 = 0)."""
    a = Eq(x0, ZERO)
    aa = Imp(a, a)
    return _build([
        _ax(K.S, a, aa, a),
        _ax(K.K, a, aa),
        ("mp", 1, 0),
        _ax(K.K, a, a),
        ("mp", 3, 2),
        ("gen", 4, x0),
    ])


def universal_theorems() -> dict[str, Proof]:
    """Closed universal theorems used by the scheme experiments."""
    out = {name: _single_axiom(sch) for name, sch in (
        ("add_zero", K.ADD_0), ("add_succ", K.ADD_S), ("mul_zero", K.MUL_0), ("mul_succ", K.MUL_S),
        ("succ_nz", K.SUCC_NZ), ("succ_inj", K.SUCC_INJ), ("less_zero", K.LESS_0))}
    out["ind_refl"] = ind_refl()
    out["mul_zero_gen"] = mul_zero_gen()
    out["less_zero_gen"] = less_zero_gen()
    out["identity_gen"] = identity_gen()
    return out


def golden() -> dict[str, Proof]:
    return {name: fn() for name, fn in GOLDEN.items()}


def write_golden(directory) -> list[Path]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for name, p in golden().items():
        path = d / f"{name}.json"
        path.write_text(K.dump_proof(p) + "\n")
        out.append(path)
    return out
