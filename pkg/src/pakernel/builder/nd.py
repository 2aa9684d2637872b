"""Derivation DAGs with open hypotheses, compiled to kernel proofs.

A node records how its formula follows from earlier nodes.  Hypotheses are
tracked per node so the deduction theorem (``discharge``) only rewrites the
part of the DAG that actually depends on the discharged formula.  Nothing
here is trusted: ``compile`` output goes through the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import kernel as K
from ..kernel import axiom_instance, check_proof, is_eval_equation
from ..proofs import MP, Axiom, Eval, Gen, Line, Proof
from ..syntax import BOT, Formula, Forall, Imp, Term, Var, all_vars, free_vars, neg, to_sexp

_EMPTY: frozenset = frozenset()


class BuildError(ValueError):
    """A builder was asked for something it cannot (or must not) produce."""


class D:
    """A derivation node.  ``hyps`` is the set of open hypothesis formulas."""

    __slots__ = ("formula", "kind", "args", "hyps", "_disc")

    def __init__(self, formula: Formula, kind: str, args: tuple, hyps: frozenset):
        self.formula = formula
        self.kind = kind
        self.args = args
        self.hyps = hyps
        self._disc = None

    def __repr__(self):
        return f"D({self.kind}: {to_sexp(self.formula)})"


def ax(schema: int, *objs) -> D:
    inst = tuple(enumerate(objs))
    return D(axiom_instance(schema, dict(inst)), "ax", (schema, inst), _EMPTY)


def ax_inst(schema: int, inst: tuple) -> D:
    return D(axiom_instance(schema, dict(inst)), "ax", (schema, tuple(inst)), _EMPTY)


def evaluation(eq: Formula) -> D:
    if not is_eval_equation(eq):
        raise BuildError(f"not an Eval equation: {to_sexp(eq)}")
    return D(eq, "eval", (), _EMPTY)


def hyp(phi: Formula) -> D:
    return D(phi, "hyp", (), frozenset((phi,)))


def mp(minor: D, major: D) -> D:
    f = major.formula
    if not isinstance(f, Imp) or f.left is not minor.formula:
        raise BuildError(f"MP mismatch: {to_sexp(minor.formula)} vs {to_sexp(f)}")
    hyps = minor.hyps | major.hyps if minor.hyps else major.hyps
    return D(f.right, "mp", (minor, major), hyps)


def mp2(a: D, b: D, major: D) -> D:
    return mp(b, mp(a, major))


def gen(d: D, v: Var) -> D:
    for h in d.hyps:
        if v.index in free_vars(h):
            raise BuildError(f"cannot generalize {v.name}: free in hypothesis {to_sexp(h)}")
    return D(Forall(v, d.formula), "gen", (d, v), d.hyps)


def gen_many(d: D, vs) -> D:
    for v in reversed(list(vs)):
        d = gen(d, v)
    return d


# -- deduction theorem -------------------------------------------------------------

_ID_CACHE: dict = {}


def identity(a: Formula) -> D:
    """a -> a from S and K."""
    hit = _ID_CACHE.get(a)
    if hit is None:
        aa = Imp(a, a)
        s = ax(K.S, a, aa, a)          # (a->((a->a)->a)) -> ((a->(a->a)) -> (a->a))
        k1 = ax(K.K, a, aa)            # a->((a->a)->a)
        k2 = ax(K.K, a, a)             # a->(a->a)
        hit = mp(k2, mp(k1, s))
        _ID_CACHE[a] = hit
    return hit


def weaken(d: D, a: Formula) -> D:
    """a -> phi from phi."""
    return mp(d, ax(K.K, d.formula, a))


def discharge(d: D, a: Formula) -> D:
    """Deduction theorem: from a derivation of phi under hypothesis ``a``,
    build ``a -> phi`` with ``a`` no longer open."""
    if a not in d.hyps:
        return weaken(d, a)
    # iterative post-order over the nodes that depend on a
    memo: dict[int, D] = {}
    stack = [(d, False)]
    while stack:
        node, ready = stack.pop()
        if id(node) in memo:
            continue
        cache = node._disc
        if cache is not None and a in cache:
            memo[id(node)] = cache[a]
            continue
        if node.kind == "hyp":
            out = identity(a) if node.formula is a else weaken(node, a)
        elif a not in node.hyps:
            out = weaken(node, a)
        elif node.kind == "mp":
            minor, major = node.args
            if not ready:
                stack.append((node, True))
                stack.append((major, False))
                stack.append((minor, False))
                continue
            dm, dM = memo[id(minor)], memo[id(major)]
            phi = node.formula
            s = ax(K.S, a, minor.formula, phi)
            out = mp(dm, mp(dM, s))
        elif node.kind == "gen":
            prem, v = node.args
            if not ready:
                stack.append((node, True))
                stack.append((prem, False))
                continue
            dp = memo[id(prem)]
            g = gen(dp, v)
            out = mp(g, ax(K.ALL_DIST, a, prem.formula, v))
        else:
            raise BuildError(f"node {node.kind} cannot carry hypotheses")
        memo[id(node)] = out
        if node._disc is None:
            node._disc = {}
        node._disc[a] = out
    return memo[id(d)]


def discharge_all(d: D, hyps) -> D:
    """a1 -> (a2 -> ... -> phi) for the listed hypotheses."""
    for a in reversed(list(hyps)):
        d = discharge(d, a)
    return d


# -- compilation --------------------------------------------------------------------

def compile_proof(root: D, extra=()) -> Proof:
    """Linearize the DAG into kernel lines, sharing equal formulas.

    ``extra`` nodes are emitted before the root so their formulas appear as
    lines too; the root's formula is always last.
    """
    roots = [*extra, root]
    for r in roots:
        if r.hyps:
            raise BuildError("open hypotheses: " + ", ".join(to_sexp(h) for h in r.hyps))
    index: dict[Formula, int] = {}
    lines: list[Line] = []
    done: set[int] = set()
    for r in roots:
        stack = [(r, False)]
        while stack:
            node, ready = stack.pop()
            if id(node) in done:
                continue
            if node.formula in index:
                done.add(id(node))
                continue
            if not ready:
                stack.append((node, True))
                if node.kind == "mp":
                    stack.append((node.args[1], False))
                    stack.append((node.args[0], False))
                elif node.kind == "gen":
                    stack.append((node.args[0], False))
                continue
            if node.kind == "ax":
                just = Axiom(node.args[0], node.args[1])
            elif node.kind == "eval":
                just = Eval()
            elif node.kind == "mp":
                just = MP(index[node.args[0].formula], index[node.args[1].formula])
            elif node.kind == "gen":
                just = Gen(index[node.args[0].formula], node.args[1])
            else:
                raise BuildError(f"cannot compile node kind {node.kind}")
            index[node.formula] = len(lines)
            lines.append(Line(node.formula, just))
            done.add(id(node))
    last = index[root.formula]
    if last != len(lines) - 1:
        # the root formula appeared earlier; repeating the line keeps it valid
        lines.append(lines[last])
    return Proof(tuple(lines))


def from_proof(p: Proof) -> D:
    """Replay kernel lines as DAG nodes (so checked proofs can be reused)."""
    nodes: list[D] = []
    for line in p.lines:
        j = line.just
        if isinstance(j, Axiom):
            nodes.append(D(line.formula, "ax", (j.schema, j.inst), _EMPTY))
        elif isinstance(j, Eval):
            nodes.append(D(line.formula, "eval", (), _EMPTY))
        elif isinstance(j, MP):
            nodes.append(mp(nodes[j.minor], nodes[j.major]))
        else:
            nodes.append(gen(nodes[j.premise], j.var))
    return nodes[-1]


@dataclass(frozen=True)
class Derivation:
    """A goal and a kernel proof whose last line is the goal."""

    goal: Formula
    proof: Proof

    def check(self, fuel=None) -> bool:
        return self.proof.conclusion is self.goal and check_proof(self.proof, fuel).accepted

    def node(self) -> D:
        return from_proof(self.proof)


def derivation(root: D, extra=()) -> Derivation:
    return Derivation(root.formula, compile_proof(root, extra))


def as_node(x) -> D:
    if isinstance(x, D):
        return x
    if isinstance(x, Derivation):
        return x.node()
    raise TypeError(f"expected a derivation, got {type(x).__name__}")


# -- small derived rules used everywhere ------------------------------------------------

def efq(d_bot: D, phi: Formula) -> D:
    """phi from a derivation of bottom."""
    if phi is BOT:
        return d_bot
    nn = mp(d_bot, ax(K.K, BOT, neg(phi)))  # ~phi -> bot
    return mp(nn, ax(K.DNE, phi))


def dne(d: D) -> D:
    """phi from ~~phi."""
    f = d.formula
    return mp(d, ax(K.DNE, f.left.left))


def all_elim(d: D, t: Term) -> D:
    f = d.formula
    if not isinstance(f, Forall):
        raise BuildError("not a universal formula")
    try:
        a = ax(K.ALL_ELIM, f.body, f.var, t)
    except K.SideCondition as exc:
        raise BuildError(str(exc)) from None
    return mp(d, a)


def all_elim_many(d: D, ts) -> D:
    """Instantiate the leading quantifiers with ts simultaneously."""
    ts = list(ts)
    try:
        out = d
        for t in ts:
            out = all_elim(out, t)
        return out
    except BuildError:
        if d.hyps or len(ts) < 2:
            raise
    # an earlier term is captured by a later binder: go through fresh variables
    used = set(all_vars(d.formula)).union(*(all_vars(t) for t in ts))
    top = max(used, default=0) + 1
    ws = [Var(top + i) for i in range(len(ts))]
    mid = d
    for w in ws:
        mid = all_elim(mid, w)
    mid = gen_many(mid, ws)
    for t in ts:
        mid = all_elim(mid, t)
    return mid
