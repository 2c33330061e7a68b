"""Benchmark instance generators: 2D polygon LPs and small combinatorial relaxations.

The 2D catalog holds 36 convex polygons with integer vertices in the
nonnegative quadrant. Every polygon edge becomes one row ``n . z <= n . p``
with the outward normal ``n`` reduced by its gcd. Rows whose normal has no
positive component are written as ``-n . z >= -n . p`` instead, and edges that
lie on an axis are left to the ``x, y >= 0`` bounds.

Catalog (ids 1..36):

* 1: unit square
* 2-4: right triangles, 5-7: axis-parallel boxes
* 8-25: near-regular k-gons, k = 3..8, each at three radius/centre settings
* 26-36: irregular convex polygons with 5 to 12 edges
"""

from __future__ import annotations

import math
import random
from enum import Enum

from dualkit.lp import ConstraintSense, LinearConstraint, LinearProgram, ObjectiveSense, Variable

Point = tuple[int, int]

OBJECTIVES_2D: tuple[tuple[int, int], ...] = ((1, 1), (2, -1), (-1, 3))
N_SHAPES = 36


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: list[Point]) -> list[Point]:
    """Counter-clockwise hull without collinear points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _ngon(k: int, radius: float, center: tuple[float, float], phase: float = 0.0) -> list[Point]:
    return [
        (round(center[0] + radius * math.cos(phase + 2 * math.pi * i / k)),
         round(center[1] + radius * math.sin(phase + 2 * math.pi * i / k)))
        for i in range(k)
    ]


def _irregular(k: int, seed: int, radius: float, center: tuple[float, float]) -> list[Point]:
    """Convex polygon with ``k`` vertices on a jittered ellipse; resampled until the hull keeps all of them."""
    rng = random.Random(seed)
    while True:
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(k))
        gaps = [(angles[(i + 1) % k] - angles[i]) % (2 * math.pi) for i in range(k)]
        if max(gaps) > math.pi / 2:
            continue
        stretch = rng.uniform(0.6, 1.0)
        pts = [(round(center[0] + radius * math.cos(t)), round(center[1] + stretch * radius * math.sin(t)))
               for t in angles]
        hull = convex_hull(pts)
        if len(hull) == k:
            return hull


def _catalog() -> list[list[Point]]:
    shapes: list[list[Point]] = [[(0, 0), (1, 0), (1, 1), (0, 1)]]
    shapes += [[(0, 0), (4, 0), (0, 3)], [(0, 0), (2, 0), (0, 5)], [(1, 1), (6, 1), (1, 4)]]
    shapes += [[(0, 0), (3, 0), (3, 2), (0, 2)], [(1, 2), (5, 2), (5, 7), (1, 7)], [(2, 0), (9, 0), (9, 3), (2, 3)]]
    settings = ((4.0, (5.0, 5.0), 0.1), (9.0, (12.0, 10.0), 0.35), (15.0, (20.0, 18.0), 0.7))
    for k in range(3, 9):
        for radius, center, phase in settings:
            shapes.append(convex_hull(_ngon(k, radius, center, phase)))
    for idx, k in enumerate((5, 5, 6, 7, 8, 8, 9, 9, 10, 11, 12)):
        shapes.append(_irregular(k, seed=1000 + idx, radius=12.0 + idx, center=(30.0, 30.0)))
    return shapes


_SHAPES = _catalog()


def polygon(shape: int) -> list[Point]:
    if not 1 <= shape <= N_SHAPES:
        raise ValueError(f"shape id must be in 1..{N_SHAPES}, got {shape}")
    return list(_SHAPES[shape - 1])


def facet_rows(points: list[Point]) -> list[tuple[int, int, int]]:
    """(n_x, n_y, rhs) for each hull edge not lying on an axis, meaning n . z <= rhs."""
    rows = []
    k = len(points)
    for i in range(k):
        p, q = points[i], points[(i + 1) % k]
        nx, ny = q[1] - p[1], p[0] - q[0]
        g = math.gcd(nx, ny)
        nx, ny = nx // g, ny // g
        rhs = nx * p[0] + ny * p[1]
        on_axis = (nx, ny, rhs) in ((-1, 0, 0), (0, -1, 0))
        if not on_axis:
            rows.append((nx, ny, rhs))
    return rows


def gen_2d(shape: int, objective: int) -> LinearProgram:
    """Maximise one of three fixed objectives over polygon ``shape``."""
    if not 1 <= objective <= len(OBJECTIVES_2D):
        raise ValueError(f"objective id must be in 1..{len(OBJECTIVES_2D)}, got {objective}")
    cx, cy = OBJECTIVES_2D[objective - 1]
    constraints = []
    for j, (nx, ny, rhs) in enumerate(facet_rows(polygon(shape)), start=1):
        if nx <= 0 and ny <= 0:
            row = LinearConstraint(f"f{j}", {"x": -nx, "y": -ny}, ConstraintSense.GEQ, -rhs)
        else:
            row = LinearConstraint(f"f{j}", {"x": nx, "y": ny}, ConstraintSense.LEQ, rhs)
        constraints.append(row)
    return LinearProgram(ObjectiveSense.MAXIMIZE, {"x": cx, "y": cy}, [Variable("x"), Variable("y")], constraints)


def all_2d() -> list[tuple[str, LinearProgram]]:
    return [(f"2d-s{s:02d}-o{o}", gen_2d(s, o)) for s in range(1, N_SHAPES + 1) for o in range(1, 4)]


class CoFamily(str, Enum):
    MAX_INDEPENDENT_SET = "mis"
    KNAPSACK = "knapsack"
    MAX_CUT = "maxcut"
    MAX_CLIQUE = "clique"
    VERTEX_COVER = "vertex_cover"
    PACKING = "packing"
    PRODUCTION = "production"


# valid ``size`` per family; each keeps variables <= 5 and rows <= 6
SIZE_RANGE: dict[CoFamily, range] = {
    CoFamily.MAX_INDEPENDENT_SET: range(3, 6),
    CoFamily.KNAPSACK: range(3, 6),
    CoFamily.MAX_CUT: range(2, 4),
    CoFamily.MAX_CLIQUE: range(3, 6),
    CoFamily.VERTEX_COVER: range(3, 6),
    CoFamily.PACKING: range(3, 6),
    CoFamily.PRODUCTION: range(2, 6),
}

MAX_VARS, MAX_ROWS = 5, 6

Edge = tuple[int, int]


def _random_edges(rng: random.Random, n: int, low: int, high: int) -> list[Edge]:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    count = rng.randint(min(low, len(pairs)), min(high, len(pairs)))
    return sorted(rng.sample(pairs, count))


def _unit(n: int, prefix: str = "x") -> list[Variable]:
    return [Variable(f"{prefix}{i}", 0.0, 1.0) for i in range(n)]


def independent_set_lp(n: int, edges: list[Edge], weights: list[float] | None = None) -> LinearProgram:
    weights = weights or [1.0] * n
    return LinearProgram(
        ObjectiveSense.MAXIMIZE,
        {f"x{i}": w for i, w in enumerate(weights)},
        _unit(n),
        [LinearConstraint(f"e{u}_{v}", {f"x{u}": 1, f"x{v}": 1}, ConstraintSense.LEQ, 1) for u, v in edges],
    )


def clique_lp(n: int, edges: list[Edge]) -> LinearProgram:
    """At most one endpoint of every non-edge may be chosen."""
    present = set(edges)
    non_edges = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]
    return LinearProgram(
        ObjectiveSense.MAXIMIZE,
        {f"x{i}": 1.0 for i in range(n)},
        _unit(n),
        [LinearConstraint(f"n{u}_{v}", {f"x{u}": 1, f"x{v}": 1}, ConstraintSense.LEQ, 1) for u, v in non_edges],
    )


def vertex_cover_lp(n: int, edges: list[Edge], weights: list[float]) -> LinearProgram:
    return LinearProgram(
        ObjectiveSense.MINIMIZE,
        {f"x{i}": w for i, w in enumerate(weights)},
        _unit(n),
        [LinearConstraint(f"e{u}_{v}", {f"x{u}": 1, f"x{v}": 1}, ConstraintSense.GEQ, 1) for u, v in edges],
    )


def knapsack_lp(profits: list[float], weights: list[list[float]], capacities: list[float]) -> LinearProgram:
    n = len(profits)
    return LinearProgram(
        ObjectiveSense.MAXIMIZE,
        {f"x{i}": p for i, p in enumerate(profits)},
        _unit(n),
        [
            LinearConstraint(f"cap{d}", {f"x{i}": w for i, w in enumerate(row)}, ConstraintSense.LEQ, cap)
            for d, (row, cap) in enumerate(zip(weights, capacities))
        ],
    )


def max_cut_lp(n: int, edges: list[Edge], weights: list[float]) -> LinearProgram:
    """z_e <= x_u + x_v and z_e <= 2 - x_u - x_v bound each cut indicator."""
    constraints = []
    for (u, v) in edges:
        z = f"z{u}_{v}"
        constraints.append(LinearConstraint(f"a{u}_{v}", {z: 1, f"x{u}": -1, f"x{v}": -1}, ConstraintSense.LEQ, 0))
        constraints.append(LinearConstraint(f"b{u}_{v}", {z: 1, f"x{u}": 1, f"x{v}": 1}, ConstraintSense.LEQ, 2))
    return LinearProgram(
        ObjectiveSense.MAXIMIZE,
        {f"z{u}_{v}": w for (u, v), w in zip(edges, weights)},
        _unit(n) + [Variable(f"z{u}_{v}", 0.0, 1.0) for u, v in edges],
        constraints,
    )


def packing_lp(values: list[float], matrix: list[list[float]], capacities: list[float]) -> LinearProgram:
    n = len(values)
    return LinearProgram(
        ObjectiveSense.MAXIMIZE,
        {f"x{i}": c for i, c in enumerate(values)},
        [Variable(f"x{i}") for i in range(n)],
        [
            LinearConstraint(f"r{j}", {f"x{i}": a for i, a in enumerate(row)}, ConstraintSense.LEQ, cap)
            for j, (row, cap) in enumerate(zip(matrix, capacities))
        ],
    )


def production_lp(profits: list[float], usage: list[list[float]], stock: list[float]) -> LinearProgram:
    """Maximise profit from products subject to resource stock (usage[resource][product])."""
    n = len(profits)
    return LinearProgram(
        ObjectiveSense.MAXIMIZE,
        {f"p{i}": c for i, c in enumerate(profits)},
        [Variable(f"p{i}") for i in range(n)],
        [
            LinearConstraint(f"res{r}", {f"p{i}": a for i, a in enumerate(row)}, ConstraintSense.LEQ, cap)
            for r, (row, cap) in enumerate(zip(usage, stock))
        ],
    )


def _positive_matrix(rng: random.Random, rows: int, cols: int) -> list[list[float]]:
    """Nonnegative integer matrix in which every column has a positive entry."""
    while True:
        m = [[float(rng.choice((0, 1, 2, 3, 4))) for _ in range(cols)] for _ in range(rows)]
        if all(any(m[r][c] > 0 for r in range(rows)) for c in range(cols)):
            return m


def gen_co(family: CoFamily | str, size: int, seed: int) -> LinearProgram:
    """LP relaxation of a seeded random instance; deterministic per (family, size, seed)."""
    family = CoFamily(family)
    if size not in SIZE_RANGE[family]:
        r = SIZE_RANGE[family]
        raise ValueError(f"size for {family.value} must be in {r.start}..{r.stop - 1}, got {size}")
    rng = random.Random(f"{family.value}:{size}:{seed}")
    if family is CoFamily.MAX_INDEPENDENT_SET:
        return independent_set_lp(size, _random_edges(rng, size, size, MAX_ROWS))
    if family is CoFamily.MAX_CLIQUE:
        n_pairs = size * (size - 1) // 2
        edges = _random_edges(rng, size, max(0, n_pairs - MAX_ROWS), n_pairs - 1)
        return clique_lp(size, edges)
    if family is CoFamily.VERTEX_COVER:
        edges = _random_edges(rng, size, size, MAX_ROWS)
        return vertex_cover_lp(size, edges, [float(rng.randint(1, 6)) for _ in range(size)])
    if family is CoFamily.KNAPSACK:
        dims = rng.randint(2, 4)
        weights = [[float(rng.randint(1, 9)) for _ in range(size)] for _ in range(dims)]
        caps = [float(max(1, sum(row) // 2)) for row in weights]
        return knapsack_lp([float(rng.randint(1, 9)) for _ in range(size)], weights, caps)
    if family is CoFamily.MAX_CUT:
        edges = [(0, 1)] if size == 2 else sorted(rng.sample([(0, 1), (0, 2), (1, 2)], 2))
        return max_cut_lp(size, edges, [float(rng.randint(1, 5)) for _ in edges])
    if family is CoFamily.PACKING:
        rows = rng.randint(2, 5)
        matrix = _positive_matrix(rng, rows, size)
        caps = [float(rng.randint(4, 12)) for _ in range(rows)]
        return packing_lp([float(rng.randint(1, 9)) for _ in range(size)], matrix, caps)
    resources = rng.randint(2, 5)
    usage = _positive_matrix(rng, resources, size)
    stock = [float(rng.randint(8, 20)) for _ in range(resources)]
    return production_lp([float(rng.randint(2, 9)) for _ in range(size)], usage, stock)


def co_suite(per_family: int = 20, base_seed: int = 0) -> list[tuple[str, LinearProgram]]:
    """``per_family`` instances of every family, cycling through each family's sizes."""
    out = []
    for family in CoFamily:
        sizes = list(SIZE_RANGE[family])
        for k in range(per_family):
            size = sizes[k % len(sizes)]
            seed = base_seed + k
            out.append((f"co-{family.value}-n{size}-{seed:03d}", gen_co(family, size, seed)))
    return out
