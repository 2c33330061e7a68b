"""Random LP generators shared by the property tests."""

from __future__ import annotations

import itertools
import math
import random

from hypothesis import strategies as st

from dualkit.lp import LinearConstraint, LinearProgram, Variable
from dualkit.lpgraph import BipartiteLpGraph

INF = math.inf

SMALL_BOUNDS = [(0, INF), (-INF, INF), (-INF, 0), (-2, 3), (1, INF), (-INF, 2), (0, 4), (2, 2)]

names = st.from_regex(r"[A-Za-z][A-Za-z0-9_.]{0,7}", fullmatch=True)

coefs = st.one_of(
    st.integers(-9, 9).map(float),
    st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
    st.floats(1e-7, 1e-3),
)


@st.composite
def bounds(draw):
    lo = draw(st.one_of(st.just(-INF), st.just(0.0), coefs))
    hi = draw(st.one_of(st.just(INF), st.just(0.0), coefs))
    return (hi, lo) if lo > hi else (lo, hi)


@st.composite
def lps(draw, max_vars: int = 5, max_cons: int = 5):
    """Arbitrary valid LPs with distinct variable and constraint names."""
    var_names = draw(st.lists(names, min_size=0, max_size=max_vars, unique=True))
    con_names = draw(st.lists(names, min_size=0, max_size=max_cons, unique=True))
    variables = [Variable(n, *draw(bounds())) for n in var_names]
    objective = {n: draw(coefs) for n in var_names if draw(st.booleans())}
    constraints = [
        LinearConstraint(
            c,
            {n: draw(coefs) for n in var_names if draw(st.booleans())},
            draw(st.sampled_from(["<=", ">=", "="])),
            draw(coefs),
        )
        for c in con_names
    ]
    return LinearProgram(
        draw(st.sampled_from(["min", "max"])),
        objective,
        variables,
        constraints,
        draw(st.one_of(st.just(0.0), coefs)),
    )


def random_small_lp(rng: random.Random, max_vars: int = 3, max_cons: int = 4) -> LinearProgram:
    """Small integer LP mixing every bound shape and row sense (n <= 3 keeps vertex enumeration cheap)."""
    n = rng.randint(1, max_vars)
    m = rng.randint(0, max_cons)
    xs = [f"x{i}" for i in range(n)]
    variables = [Variable(x, *rng.choice(SMALL_BOUNDS)) for x in xs]
    constraints = [
        LinearConstraint(f"c{j}", {x: rng.randint(-3, 3) for x in xs}, rng.choice(["<=", ">=", "="]), rng.randint(-4, 4))
        for j in range(m)
    ]
    return LinearProgram(rng.choice(["min", "max"]), {x: rng.randint(-3, 3) for x in xs}, variables, constraints)


def random_graph(rng: random.Random, max_side: int = 4) -> BipartiteLpGraph:
    """Bipartite graph with few distinct labels, so ties and symmetric matches are common."""
    nv, nc = rng.randint(0, max_side), rng.randint(0, max_side)
    var_nodes = tuple((f"v{i}", (float(rng.choice([0, 1, 2])),)) for i in range(nv))
    con_nodes = tuple((f"c{j}", (float(rng.choice([0, 1])),)) for j in range(nc))
    edges = tuple(
        (f"v{i}", f"c{j}", float(rng.choice([1, -1, 2]))) for i in range(nv) for j in range(nc) if rng.random() < 0.5
    )
    return BipartiteLpGraph(var_nodes, con_nodes, edges)


def perturb_graph(rng: random.Random, g: BipartiteLpGraph, edits: int, max_side: int = 4) -> BipartiteLpGraph:
    """Apply a few random node/edge edits and shuffle node order."""
    var_nodes, con_nodes = dict(g.var_nodes), dict(g.con_nodes)
    edges = {(v, c): w for v, c, w in g.edges}
    fresh = itertools.count()
    for _ in range(edits):
        kind = rng.randrange(5)
        if kind == 0 and edges:
            edges.pop(rng.choice(sorted(edges)))
        elif kind == 1 and var_nodes and con_nodes:
            edges[(rng.choice(sorted(var_nodes)), rng.choice(sorted(con_nodes)))] = float(rng.choice([1, -1, 3]))
        elif kind == 2 and var_nodes:
            var_nodes[rng.choice(sorted(var_nodes))] = (float(rng.choice([0, 1, 5])),)
        elif kind == 3 and len(con_nodes) < max_side:
            con_nodes[f"n{next(fresh)}"] = (float(rng.choice([0, 1])),)
        elif kind == 4 and var_nodes:
            gone = rng.choice(sorted(var_nodes))
            del var_nodes[gone]
            edges = {k: w for k, w in edges.items() if k[0] != gone}
    vs, cs = list(var_nodes.items()), list(con_nodes.items())
    rng.shuffle(vs)
    rng.shuffle(cs)
    return BipartiteLpGraph(tuple(vs), tuple(cs), tuple((v, c, w) for (v, c), w in edges.items()))


def graph_corpus(rng: random.Random, count: int, max_side: int = 4) -> list[tuple[BipartiteLpGraph, BipartiteLpGraph]]:
    """Pairs with at most ``max_side`` nodes per side: LP graphs and their edits, plus random graphs."""
    from dualkit.canonical import canonicalize
    from dualkit.lpgraph import GraphMode, build_graph

    def small(g):
        return len(g.var_nodes) <= max_side and len(g.con_nodes) <= max_side

    pairs = []
    while len(pairs) < count:
        kind = len(pairs) % 3
        if kind == 0:
            g = build_graph(random_small_lp(rng, 3, max_side), GraphMode.NGED_COMPAT)
        elif kind == 1:
            g = build_graph(canonicalize(random_small_lp(rng, 2, 2)).lp, GraphMode.CANONICAL)
        else:
            g = random_graph(rng, max_side)
        h = perturb_graph(rng, g, rng.randint(0, 3), max_side) if rng.random() < 0.7 else random_graph(rng, max_side)
        if small(g) and small(h):
            pairs.append((g, h))
    return pairs


_MPS_TOKENS = [
    "NAME", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA", "OBJSENSE", "MAX", "MIN", " N", " L", " G",
    " E", "UP", "LO", "FX", "FR", "MI", "PL", "BV", "MARKER", "'MARKER'", "'INTORG'", "1e309", "-inf", "inf",
    "nan", "1e-400", "0", "-0", "x", "c1", "OBJ", "*", "\t", "  ", "\n", "é", "\x00",
]
_MPS_RANGED = (
    "NAME X\nROWS\n N obj\n L c1\n E c2\nCOLUMNS\n    x obj 1 c1 2\n    y c2 1\nRHS\n    RHS c1 4 c2 1\n"
    "RANGES\n    RNG c1 2 c2 -3\nBOUNDS\n UP BND x 4\n MI BND y\n FR BND y\nENDATA\n"
)


def mps_fuzz_inputs(rng: random.Random, seeds: list[str], count: int):
    """Mutated MPS texts (token insertions, cuts, line rewrites, token soup, stray bytes)."""
    seeds = seeds + [_MPS_RANGED]
    for _ in range(count):
        s = rng.choice(seeds)
        k = rng.randrange(4)
        if k == 0:
            pos = rng.randrange(len(s))
            s = s[:pos] + rng.choice(_MPS_TOKENS) + s[pos:]
        elif k == 1:
            a = rng.randrange(len(s))
            s = s[:a] + s[min(len(s), a + rng.randrange(1, 30)):]
        elif k == 2:
            lines = s.split("\n")
            if rng.random() < 0.1:
                rng.shuffle(lines)
            lines[rng.randrange(len(lines))] = " ".join(rng.choice(_MPS_TOKENS) for _ in range(rng.randrange(5)))
            s = "\n".join(lines)
        else:
            s = "".join(rng.choice(_MPS_TOKENS) + rng.choice((" ", "\n ")) for _ in range(rng.randrange(30)))
        if rng.random() < 0.05:
            yield s.encode() + bytes([rng.randrange(256)])
        else:
            yield s
