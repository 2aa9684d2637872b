"""Proof objects: finite sequences of justified lines."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .syntax import Formula, Term, Var


@dataclass(frozen=True)
class Axiom:
    schema: int
    # (slot index, term or formula) pairs, sorted by slot
    inst: tuple[tuple[int, Union[Term, Formula]], ...] = ()


@dataclass(frozen=True)
class MP:
    minor: int  # line proving A
    major: int  # line proving A -> B


@dataclass(frozen=True)
class Gen:
    premise: int
    var: Var


@dataclass(frozen=True)
class Eval:
    """Closed PR equation ``t = k`` certified by the meta-evaluator."""


Justification = Union[Axiom, MP, Gen, Eval]


@dataclass(frozen=True)
class Line:
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class Proof:
    lines: tuple[Line, ...]

    def __len__(self):
        return len(self.lines)

    @property
    def conclusion(self) -> Formula | None:
        return self.lines[-1].formula if self.lines else None
