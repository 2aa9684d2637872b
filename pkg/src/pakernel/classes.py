"""Syntactic arithmetical hierarchy and prenex normal forms (no proofs)."""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    And, Bot, Eq, Exists, Forall, Formula, Imp, Less, Or, Var, all_vars,
    free_vars, substitute,
)


@dataclass(frozen=True, order=False)
class HClass:
    kind: str  # "D", "S" or "P"
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("D", "S", "P") or (self.kind == "D") != (self.n == 0) or self.n < 0:
            raise ValueError(f"bad class {self.kind}{self.n}")

    def __repr__(self):
        return "Delta0" if self.kind == "D" else f"{'Sigma' if self.kind == 'S' else 'Pi'}({self.n})"

    def __le__(self, other: "HClass") -> bool:
        return class_le(self, other)


DELTA0 = HClass("D")


def Sigma(n: int) -> HClass:
    return HClass("S", n)


def Pi(n: int) -> HClass:
    return HClass("P", n)


def class_le(a: HClass, b: HClass) -> bool:
    if a.kind == "D":
        return True
    if b.kind == "D":
        return False
    if a.kind == b.kind:
        return a.n <= b.n
    return a.n < b.n


def dual(c: HClass) -> HClass:
    if c.kind == "D":
        return c
    return HClass("P" if c.kind == "S" else "S", c.n)


def join(a: HClass, b: HClass) -> HClass:
    if class_le(a, b):
        return b
    if class_le(b, a):
        return a
    # Sigma(n) and Pi(n)
    return Sigma(a.n + 1)


def sigma_level(c: HClass) -> int:
    """Least n with c <= Sigma(n) (0 for Delta0)."""
    if c.kind == "D":
        return 0
    return c.n if c.kind == "S" else c.n + 1


def bounded_forall(phi: Formula):
    """(y, bound, body) if phi is literally forall y (y < t -> body) with y not in t."""
    if isinstance(phi, Forall) and isinstance(phi.body, Imp):
        guard = phi.body.left
        if isinstance(guard, Less) and guard.left is phi.var and phi.var.index not in free_vars(guard.right):
            return phi.var, guard.right, phi.body.right
    return None


def bounded_exists(phi: Formula):
    """(y, bound, body) if phi is literally exists y (y < t and body) with y not in t."""
    if isinstance(phi, Exists) and isinstance(phi.body, And):
        guard = phi.body.left
        if isinstance(guard, Less) and guard.left is phi.var and phi.var.index not in free_vars(guard.right):
            return phi.var, guard.right, phi.body.right
    return None


_CLASS_CACHE: dict = {}


def classify(phi: Formula) -> HClass:
    """Minimal syntactic class of ``phi``."""
    hit = _CLASS_CACHE.get(phi)
    if hit is not None:
        return hit
    if isinstance(phi, (Bot, Eq, Less)):
        c = DELTA0
    elif isinstance(phi, (And, Or)):
        c = join(classify(phi.left), classify(phi.right))
    elif isinstance(phi, Imp):
        c = join(dual(classify(phi.left)), classify(phi.right))
    elif isinstance(phi, Exists):
        b = bounded_exists(phi)
        if b is not None and classify(b[2]) == DELTA0:
            c = DELTA0
        else:
            inner = classify(phi.body)
            c = inner if inner.kind == "S" else Sigma(inner.n + 1)
    elif isinstance(phi, Forall):
        b = bounded_forall(phi)
        if b is not None and classify(b[2]) == DELTA0:
            c = DELTA0
        else:
            inner = classify(phi.body)
            c = inner if inner.kind == "P" else Pi(inner.n + 1)
    else:
        raise TypeError(f"not a formula: {phi!r}")
    _CLASS_CACHE[phi] = c
    return c


def is_delta0(phi: Formula) -> bool:
    return classify(phi) == DELTA0


def minimal_target(phi: Formula) -> HClass:
    return classify(phi)


# -- prenex normal forms -------------------------------------------------------
#
# A Sigma(n) normal form is a block of unbounded existentials over a Pi(n-1)
# normal form; Pi(n) dually; Sigma(0) = Pi(0) = Delta0 formulas.

def lead_block(phi: Formula, kind: str) -> tuple[list[Var], Formula]:
    """Split off the leading unbounded quantifier block of the given kind."""
    cls = Exists if kind == "S" else Forall
    vs = []
    while isinstance(phi, cls) and not is_delta0(phi):
        vs.append(phi.var)
        phi = phi.body
    return vs, phi


def is_nf(phi: Formula, target: HClass) -> bool:
    if is_delta0(phi):
        return True
    if target.kind == "D":
        return False
    _, rest = lead_block(phi, target.kind)
    return is_nf(rest, lower(target))


def fresh_index(avoid: set[int] | frozenset[int]) -> int:
    i = 0
    while i in avoid:
        i += 1
    return i


def lower(target: HClass) -> HClass:
    """The class of the matrix under a quantifier block of ``target``."""
    if target.kind == "D" or target.n <= 1:
        return DELTA0
    return HClass("P" if target.kind == "S" else "S", target.n - 1)


def prenex(phi: Formula, target: HClass | None = None) -> Formula:
    """Normal form of ``phi`` in class ``target`` (default: its own class)."""
    from .hierarchy import prenex_with_proof  # single algorithm, proofs optional

    return prenex_with_proof(phi, target, proofs=False)[0]
