"""Untrusted proof builders; everything they emit is re-checked by the kernel."""

from __future__ import annotations

from ..syntax import Formula, Term
from .arith import EvaluatesFalse, compute_fact, numeral_distinct, prove_delta0, sigma1_complete
from .nd import BuildError, D, Derivation, all_elim, as_node, compile_proof, derivation, discharge
from .prop import NotTautology, tautology


def deduce(hypotheses: list[Formula], goal: Formula, sketch) -> Derivation:
    """h1 -> (h2 -> ... -> goal) from a sketch that proves goal under the hypotheses."""
    node = as_node(sketch)
    if node.formula is not goal:
        raise BuildError("sketch does not prove the goal")
    extra = set(node.hyps) - set(hypotheses)
    if extra:
        raise BuildError("sketch uses hypotheses that were not listed")
    for h in reversed(list(hypotheses)):
        node = discharge(node, h)
    return derivation(node)


def instantiate(d, t: Term) -> Derivation:
    """phi[v := t] from a derivation of forall v phi."""
    return derivation(all_elim(as_node(d), t))


__all__ = ["BuildError", "D", "Derivation", "NotTautology", "EvaluatesFalse", "compile_proof",
           "derivation", "tautology", "deduce", "instantiate", "sigma1_complete", "compute_fact",
           "numeral_distinct", "prove_delta0"]
