"""Dense two-phase primal simplex (Bland's rule) and a vertex-enumeration oracle.

Both solvers take a :class:`~dualkit.lp.LinearProgram` and return a
:class:`SolveResult`. They are meant for the tiny LPs this package deals with
(a few dozen rows and columns at most), not for production solving.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from dualkit.lp import ConstraintSense, LinearProgram, ObjectiveSense

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9
MAX_SIZE = 200


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITER_LIMIT = "iter_limit"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    value: float | None = None
    point: dict[str, float] = field(default_factory=dict)
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is SolveStatus.OPTIMAL


def objective_value(lp: LinearProgram, point: dict[str, float]) -> float:
    return lp.objective_constant + sum(c * point[name] for name, c in lp.objective.items())


def max_violation(lp: LinearProgram, point: dict[str, float]) -> float:
    """Largest absolute violation of any row or bound at ``point``."""
    worst = 0.0
    for v in lp.variables:
        x = point[v.name]
        worst = max(worst, v.lower - x, x - v.upper)
    for con in lp.constraints:
        act = sum(a * point[k] for k, a in con.coefficients.items())
        if con.sense is ConstraintSense.LEQ:
            worst = max(worst, act - con.rhs)
        elif con.sense is ConstraintSense.GEQ:
            worst = max(worst, con.rhs - act)
        else:
            worst = max(worst, abs(act - con.rhs))
    return worst


# --- two-phase simplex -------------------------------------------------------


@dataclass
class _Standardized:
    """min cost @ z  s.t.  A z = b, z >= 0, with x = offset + recover @ z."""

    A: np.ndarray
    b: np.ndarray
    cost: np.ndarray
    offset: np.ndarray
    recover: np.ndarray
    n_structural: int


def _standardize(lp: LinearProgram) -> _Standardized:
    names = lp.variable_names
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    sign = 1.0 if lp.objective_sense is ObjectiveSense.MINIMIZE else -1.0

    columns: list[tuple[int, float]] = []  # (original var, multiplier) per z column
    offset = np.zeros(n)
    extra_rows: list[tuple[dict[int, float], ConstraintSense, float]] = []
    for i, v in enumerate(lp.variables):
        lo, up = v.lower, v.upper
        if math.isfinite(lo):
            offset[i] = lo
            columns.append((i, 1.0))
            if math.isfinite(up):
                extra_rows.append(({len(columns) - 1: 1.0}, ConstraintSense.LEQ, up - lo))
        elif math.isfinite(up):
            offset[i] = up
            columns.append((i, -1.0))
        else:
            columns.append((i, 1.0))
            columns.append((i, -1.0))

    by_var: dict[int, list[tuple[int, float]]] = {}
    for j, (i, mult) in enumerate(columns):
        by_var.setdefault(i, []).append((j, mult))

    rows: list[tuple[dict[int, float], ConstraintSense, float]] = []
    for con in lp.constraints:
        row: dict[int, float] = {}
        rhs = con.rhs
        for name, a in con.coefficients.items():
            i = index[name]
            rhs -= a * offset[i]
            for j, mult in by_var[i]:
                row[j] = row.get(j, 0.0) + a * mult
        rows.append((row, con.sense, rhs))
    rows.extend(extra_rows)

    n_struct = len(columns)
    n_slack = sum(1 for _, sense, _ in rows if sense is not ConstraintSense.EQ)
    m = len(rows)
    A = np.zeros((m, n_struct + n_slack))
    b = np.zeros(m)
    s = n_struct
    for r, (row, sense, rhs) in enumerate(rows):
        for j, a in row.items():
            A[r, j] = a
        if sense is ConstraintSense.LEQ:
            A[r, s] = 1.0
            s += 1
        elif sense is ConstraintSense.GEQ:
            A[r, s] = -1.0
            s += 1
        b[r] = rhs

    cost = np.zeros(A.shape[1])
    for name, c in lp.objective.items():
        for j, mult in by_var[index[name]]:
            cost[j] += sign * c * mult
    recover = np.zeros((n, A.shape[1]))
    for j, (i, mult) in enumerate(columns):
        recover[i, j] = mult
    return _Standardized(A, b, cost, offset, recover, n_struct)


class _IterationLimit(Exception):
    pass


def _pivot(T: np.ndarray, basis: list[int], row: int, col: int) -> None:
    T[row] /= T[row, col]
    for r in range(T.shape[0]):
        if r != row and T[r, col] != 0.0:
            T[r] -= T[r, col] * T[row]
    basis[row] = col


def _run(T: np.ndarray, basis: list[int], allowed: int, budget: list[int]) -> bool:
    """Bland-rule simplex on tableau ``T`` (objective in the last row). False if unbounded."""
    m = T.shape[0] - 1
    while True:
        entering = -1
        for j in range(allowed):
            if T[m, j] < -PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            return True
        leaving = -1
        best = math.inf
        for r in range(m):
            a = T[r, entering]
            if a > PIVOT_TOL:
                ratio = T[r, -1] / a
                if ratio < best - 1e-12 or (abs(ratio - best) <= 1e-12 and basis[r] < basis[leaving]):
                    best = ratio
                    leaving = r
        if leaving < 0:
            return False
        if budget[0] <= 0:
            raise _IterationLimit
        budget[0] -= 1
        _pivot(T, basis, leaving, entering)


def solve(lp: LinearProgram) -> SolveResult:
    """Solve ``lp`` with a two-phase primal simplex using Bland's anti-cycling rule."""
    std = _standardize(lp)
    A, b = std.A.copy(), std.b.copy()
    m, n = A.shape
    if m > MAX_SIZE or n > MAX_SIZE:
        raise ValueError(f"LP too large for the dense simplex ({m} rows, {n} columns)")
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    # start from unit slack columns where possible, artificials elsewhere
    basis: list[int] = []
    artificial_rows: list[int] = []
    for r in range(m):
        unit = -1
        for j in range(std.n_structural, n):
            if A[r, j] == 1.0 and np.count_nonzero(A[:, j]) == 1:
                unit = j
                break
        if unit >= 0:
            basis.append(unit)
        else:
            basis.append(-1)
            artificial_rows.append(r)
    n_art = len(artificial_rows)
    total = n + n_art
    T = np.zeros((m + 1, total + 1))
    T[:m, :n] = A
    T[:m, -1] = b
    for k, r in enumerate(artificial_rows):
        T[r, n + k] = 1.0
        basis[r] = n + k

    budget = [10 * (m + total) + 10]
    iterations = lambda: 10 * (m + total) + 10 - budget[0]  # noqa: E731
    try:
        if n_art:
            T[m, n:total] = 1.0
            for r in artificial_rows:
                T[m] -= T[r]
            _run(T, basis, total, budget)
            if -T[m, -1] > FEAS_TOL * max(1.0, float(np.abs(b).max(initial=0.0))):
                return SolveResult(SolveStatus.INFEASIBLE, iterations=iterations())
            # drive remaining artificials out of the basis, dropping redundant rows
            keep = list(range(m))
            for r in range(m):
                if basis[r] >= n:
                    candidates = [j for j in range(n) if abs(T[r, j]) > PIVOT_TOL]
                    if candidates:
                        _pivot(T, basis, r, candidates[0])
                    else:
                        keep.remove(r)
            T = np.vstack([T[keep], T[m : m + 1]])
            basis = [basis[r] for r in keep]
            m = len(keep)
        T = np.hstack([T[:, :n], T[:, -1:]])
        T[m, :] = 0.0
        T[m, :n] = std.cost
        for r in range(m):
            if T[m, basis[r]] != 0.0:
                T[m] -= T[m, basis[r]] * T[r]
        if not _run(T, basis, n, budget):
            return SolveResult(SolveStatus.UNBOUNDED, iterations=iterations())
    except _IterationLimit:
        return SolveResult(SolveStatus.ITER_LIMIT, iterations=iterations())

    z = np.zeros(n)
    for r in range(m):
        z[basis[r]] = T[r, -1]
    x = std.offset + std.recover @ z
    point = {name: float(x[i]) for i, name in enumerate(lp.variable_names)}
    return SolveResult(SolveStatus.OPTIMAL, objective_value(lp, point), point, iterations())


# --- vertex enumeration oracle ----------------------------------------------


def _halfspaces(lp: LinearProgram) -> tuple[list[np.ndarray], list[float], list[tuple[np.ndarray, float]]]:
    """Return (G, h) with G x <= h describing the feasible set, plus its boundary hyperplanes."""
    names = lp.variable_names
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    G: list[np.ndarray] = []
    h: list[float] = []
    planes: list[tuple[np.ndarray, float]] = []
    for con in lp.constraints:
        a = np.zeros(n)
        for name, coef in con.coefficients.items():
            a[index[name]] = coef
        if con.sense in (ConstraintSense.LEQ, ConstraintSense.EQ):
            G.append(a)
            h.append(con.rhs)
        if con.sense in (ConstraintSense.GEQ, ConstraintSense.EQ):
            G.append(-a)
            h.append(-con.rhs)
        planes.append((a, con.rhs))
    for i, v in enumerate(lp.variables):
        e = np.zeros(n)
        e[i] = 1.0
        if math.isfinite(v.lower):
            G.append(-e)
            h.append(-v.lower)
            planes.append((e, v.lower))
        if math.isfinite(v.upper):
            G.append(e)
            h.append(v.upper)
            planes.append((e, v.upper))
    return G, h, planes


def _basic_points(planes: list[tuple[np.ndarray, float]], n: int):
    for combo in itertools.combinations(planes, n):
        M = np.array([a for a, _ in combo])
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        yield np.linalg.solve(M, np.array([r for _, r in combo]))


def _box(n: int, radius: float) -> list[tuple[np.ndarray, float]]:
    planes = []
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        planes.append((e, radius))
        planes.append((e, -radius))
    return planes


def solve_by_vertex_enumeration(lp: LinearProgram) -> SolveResult:
    """Brute-force oracle for LPs with at most three variables.

    Feasibility and the optimum come from enumerating every intersection of
    ``n`` boundary hyperplanes inside a large bounding box; unboundedness is
    decided separately by minimising the objective over the recession cone
    truncated to the unit box.
    """
    n = len(lp.variables)
    if n > 3:
        raise ValueError(f"vertex enumeration supports at most 3 variables, got {n}")
    sign = 1.0 if lp.objective_sense is ObjectiveSense.MINIMIZE else -1.0
    names = lp.variable_names
    c = np.array([sign * lp.objective.get(name, 0.0) for name in names])
    G, h, planes = _halfspaces(lp)
    Gm = np.array(G).reshape(len(G), n)
    hv = np.array(h)

    def feasible(x: np.ndarray) -> bool:
        if not len(hv):
            return True
        scale = np.maximum(1.0, np.abs(hv))
        return bool(np.all(Gm @ x - hv <= 1e-7 * scale))

    if n == 0:
        if not feasible(np.zeros(0)):
            return SolveResult(SolveStatus.INFEASIBLE)
        return SolveResult(SolveStatus.OPTIMAL, lp.objective_constant, {})

    extent = max((float(np.abs(p).max()) for p in _basic_points(planes, n)), default=0.0)
    radius = max(1e3, 100.0 * extent)
    best_x, best_val = None, math.inf
    for x in _basic_points(planes + _box(n, radius), n):
        if np.any(np.abs(x) > radius * (1 + 1e-9)) or not feasible(x):
            continue
        val = float(c @ x)
        if val < best_val - 1e-12:
            best_x, best_val = x, val
    if best_x is None:
        return SolveResult(SolveStatus.INFEASIBLE)

    cone = [(a, 0.0) for a, _ in planes]
    Gc = Gm
    worst_ray = 0.0
    for d in _basic_points(cone + _box(n, 1.0), n):
        if np.any(np.abs(d) > 1 + 1e-9):
            continue
        if len(Gc) and not np.all(Gc @ d <= 1e-9):
            continue
        worst_ray = min(worst_ray, float(c @ d))
    if worst_ray < -1e-9:
        return SolveResult(SolveStatus.UNBOUNDED)

    point = {name: float(best_x[i]) for i, name in enumerate(names)}
    return SolveResult(SolveStatus.OPTIMAL, objective_value(lp, point), point)
