"""Equivalence metrics: CGED, NGED and optimal-value matching (OBJ)."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from dualkit.canonical import canonicalize
from dualkit.ged import DEFAULT_BUDGET, DEFAULT_COST, CostModel, EditPath, GedBudgetError, ged
from dualkit.lp import LinearProgram
from dualkit.lpgraph import CompatSense, GraphMode, build_graph, compat_normalize
from dualkit.simplex import SolveStatus, solve
from dualkit.tolerance import ATOL

UNDECIDED = "UNDECIDED"


class NgedDenominator(str, Enum):
    LARGER = "larger"  # |V|+|E| of the larger graph
    SUM = "sum"  # |V|+|E| of both graphs


def canonical_graph(lp: LinearProgram):
    return build_graph(canonicalize(lp).lp, GraphMode.CANONICAL)


def cged(a: LinearProgram, b: LinearProgram, cost: CostModel = DEFAULT_COST,
         budget: int = DEFAULT_BUDGET) -> tuple[float, EditPath]:
    """Edit distance between the canonical graphs of ``a`` and ``b``."""
    path = ged(canonical_graph(a), canonical_graph(b), cost, budget)
    return path.total, path


def cged_is_zero(a: LinearProgram, b: LinearProgram, budget: int = DEFAULT_BUDGET) -> bool:
    """Equivalence test that stops as soon as a positive distance is proven."""
    return ged(canonical_graph(a), canonical_graph(b), DEFAULT_COST, budget, cutoff=0.0) is not None


def nged(a: LinearProgram, b: LinearProgram, compat: CompatSense | str = CompatSense.GEQ,
         denominator: NgedDenominator | str = NgedDenominator.LARGER, cost: CostModel = DEFAULT_COST,
         budget: int = DEFAULT_BUDGET) -> float:
    """Size-normalised GED with only the baseline canonicalisation; clamped to [0, 1]."""
    ga = build_graph(compat_normalize(a, compat), GraphMode.NGED_COMPAT)
    gb = build_graph(compat_normalize(b, compat), GraphMode.NGED_COMPAT)
    if NgedDenominator(denominator) is NgedDenominator.LARGER:
        size = max(ga.size, gb.size)
    else:
        size = ga.size + gb.size
    if size == 0:
        return 0.0
    distance = ged(ga, gb, cost, budget).total
    return min(1.0, distance / size)


def obj_match(a: LinearProgram, b: LinearProgram, tol: float = 1e-6) -> tuple[bool | str, tuple[SolveStatus, SolveStatus]]:
    """Compare optimal values; ``UNDECIDED`` if either solve hits its iteration limit."""
    ra, rb = solve(a), solve(b)
    statuses = (ra.status, rb.status)
    if SolveStatus.ITER_LIMIT in statuses:
        return UNDECIDED, statuses
    if ra.status is SolveStatus.OPTIMAL and rb.status is SolveStatus.OPTIMAL:
        return abs(ra.value - rb.value) <= tol * max(1.0, abs(ra.value)), statuses
    return ra.status is rb.status, statuses


@dataclass(frozen=True)
class MetricVerdict:
    cged: float | str
    nged: float | str
    obj_match: bool | str
    equivalent: bool | str
    edit_path: EditPath | None
    statuses: tuple[SolveStatus, SolveStatus] | None

    def to_dict(self) -> dict:
        return {
            "cged": self.cged,
            "nged": self.nged,
            "obj_match": self.obj_match,
            "equivalent": self.equivalent,
            "statuses": [s.value for s in self.statuses] if self.statuses else None,
            "edit_path": None if self.edit_path is None else [
                {"op": op.op, "kind": op.kind, "ids": [_plain(x) for x in op.ids], "cost": op.cost}
                for op in self.edit_path.operations
            ],
        }


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    if isinstance(x, float) and x in (float("inf"), float("-inf")):
        return "inf" if x > 0 else "-inf"
    return x


def verdict(candidate: LinearProgram, truth: LinearProgram, budget: int = DEFAULT_BUDGET) -> MetricVerdict:
    """All three metrics for one candidate; a failing metric is reported as ``UNDECIDED``."""
    try:
        zero = cged_is_zero(candidate, truth, budget)
    except GedBudgetError:
        zero = None
    if zero:
        distance, path = 0.0, EditPath.empty()
    else:
        try:
            distance, path = cged(candidate, truth, budget=budget)
        except GedBudgetError:
            distance, path = UNDECIDED, None
    if zero is None:
        equivalent = UNDECIDED if distance == UNDECIDED else distance <= ATOL
    else:
        equivalent = zero
    try:
        normalized = nged(candidate, truth, budget=budget)
    except GedBudgetError:
        normalized = UNDECIDED
    try:
        match, statuses = obj_match(candidate, truth)
    except ValueError:
        match, statuses = UNDECIDED, None
    return MetricVerdict(distance, normalized, match, equivalent, path, statuses)
