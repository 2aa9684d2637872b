"""Independent reference implementations used to derive expected values.

Nothing here imports the package's encoder or evaluator.
"""

from hypothesis import strategies as st

from pakernel.syntax import (
    BOT, And, Bot, Eq, Exists, Forall, Imp, Less, Num, Or, Plus, PRApp, Succ, Times, Var,
)

TAGS = {"zero": 0x02, "succ": 0x03, "plus": 0x04, "times": 0x05, "var": 0x06, "pr": 0x07,
        "eq": 0x08, "less": 0x09, "bot": 0x0A, "imp": 0x0B, "and": 0x0C, "or": 0x0D,
        "forall": 0x0E, "exists": 0x0F, "num": 0x10}


def uleb(n):
    out = []
    while True:
        b, n = n & 0x7F, n >> 7
        out.append(b | (0x80 if n else 0))
        if not n:
            return out


def ser(a):
    """Recursive reading of the tag table."""
    if isinstance(a, Num):
        return [TAGS["zero"]] if a.value == 0 else [TAGS["num"], *uleb(a.value)]
    if isinstance(a, Var):
        return [TAGS["var"], *uleb(a.index)]
    if isinstance(a, Bot):
        return [TAGS["bot"]]
    if isinstance(a, Succ):
        return [TAGS["succ"], *ser(a.arg)]
    if isinstance(a, PRApp):
        out = [TAGS["pr"], *uleb(a.symbol), *uleb(len(a.args))]
        for x in a.args:
            out += ser(x)
        return out
    if isinstance(a, (Forall, Exists)):
        return [TAGS["forall" if isinstance(a, Forall) else "exists"], *uleb(a.var.index), *ser(a.body)]
    name = {Plus: "plus", Times: "times", Eq: "eq", Less: "less", Imp: "imp", And: "and", Or: "or"}[type(a)]
    return [TAGS[name], *ser(a.left), *ser(a.right)]


def code(a):
    n = 1
    for b in ser(a):
        n = n * 256 + b
    return n


def cantor(a, b):
    return (a + b) * (a + b + 1) // 2 + b


def seq_code(es):
    if not es:
        return 0
    f = es[0]
    for e in es[1:]:
        f = cantor(f, e)
    return cantor(len(es), f) + 1


EQB = 6  # registry id of the equality indicator


def value(t, env=None):
    """Closed (or env-assigned) arithmetic terms without PR symbols."""
    env = env or {}
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Var):
        return env.get(t.index, 0)
    if isinstance(t, Succ):
        return value(t.arg, env) + 1
    if isinstance(t, Plus):
        return value(t.left, env) + value(t.right, env)
    if isinstance(t, Times):
        return value(t.left, env) * value(t.right, env)
    if isinstance(t, PRApp) and t.symbol == EQB:
        a, b = (value(x, env) for x in t.args)
        return int(a == b)
    raise TypeError(t)


def _vars(t):
    if isinstance(t, Var):
        return {t.index}
    out = set()
    for name in t._fields:
        x = getattr(t, name)
        for y in (x if isinstance(x, tuple) else [x]):
            if hasattr(y, "_fields"):
                out |= _vars(y)
    return out


def truth(f, env=None, bound=30):
    """Truth with quantifiers searched below ``bound`` (exact for bounded formulas)."""
    env = env or {}
    if isinstance(f, Bot):
        return False
    if isinstance(f, Eq):
        return value(f.left, env) == value(f.right, env)
    if isinstance(f, Less):
        return value(f.left, env) < value(f.right, env)
    if isinstance(f, Imp):
        return (not truth(f.left, env, bound)) or truth(f.right, env, bound)
    if isinstance(f, And):
        return truth(f.left, env, bound) and truth(f.right, env, bound)
    if isinstance(f, Or):
        return truth(f.left, env, bound) or truth(f.right, env, bound)
    limit = bound
    b = f.body
    guarded = (isinstance(f, Forall) and isinstance(b, Imp)) or (isinstance(f, Exists) and isinstance(b, And))
    if guarded and isinstance(b.left, Less) and b.left.left is f.var and f.var.index not in _vars(b.left.right):
        limit = value(b.left.right, env)  # bounded quantifier: exact
    vals = (truth(f.body, {**env, f.var.index: k}, bound) for k in range(limit))
    return all(vals) if isinstance(f, Forall) else any(vals)


# -- hypothesis strategies ---------------------------------------------------------------

VARS = st.integers(0, 3).map(Var)


def terms(max_leaves=6):
    leaves = st.one_of(VARS, st.integers(0, 300).map(Num))
    return st.recursive(leaves, lambda ch: st.one_of(
        ch.map(Succ), st.tuples(ch, ch).map(lambda p: Plus(*p)), st.tuples(ch, ch).map(lambda p: Times(*p))),
        max_leaves=max_leaves)


def closed_terms(max_leaves=5):
    leaves = st.integers(0, 6).map(Num)
    return st.recursive(leaves, lambda ch: st.one_of(
        ch.map(Succ), st.tuples(ch, ch).map(lambda p: Plus(*p)), st.tuples(ch, ch).map(lambda p: Times(*p))),
        max_leaves=max_leaves)


def formulas(term_strategy=None, max_leaves=6):
    t = terms(3) if term_strategy is None else term_strategy
    atoms = st.one_of(st.just(BOT), st.tuples(t, t).map(lambda p: Eq(*p)), st.tuples(t, t).map(lambda p: Less(*p)))

    def ext(ch):
        return st.one_of(
            st.tuples(ch, ch).map(lambda p: Imp(*p)),
            st.tuples(ch, ch).map(lambda p: And(*p)),
            st.tuples(ch, ch).map(lambda p: Or(*p)),
            st.tuples(VARS, ch).map(lambda p: Forall(*p)),
            st.tuples(VARS, ch).map(lambda p: Exists(*p)),
        )
    return st.recursive(atoms, ext, max_leaves=max_leaves)


def depth(a):
    kids = [getattr(a, f) for f in a._fields]
    sub = [x for k in kids for x in (k if isinstance(k, tuple) else [k]) if hasattr(x, "_fields")]
    return 1 + max((depth(x) for x in sub), default=0)
