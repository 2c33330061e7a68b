"""LP duality tooling: dualization, canonicalization and CGED equivalence checking."""

from dualkit.canonical import CanonicalLp, canonicalize
from dualkit.dualizer import DualizationMethod, DualizationReport, MethodDisagreementError, dualize, dualize_checked
from dualkit.ged import CostModel, EditPath, GedBudgetError, ged
from dualkit.injector import ErrorType, InjectionRecord, inject
from dualkit.lp import (
    ConstraintSense,
    LinearConstraint,
    LinearProgram,
    ObjectiveSense,
    Variable,
    flip_constraint,
    negate_objective,
    negate_variable,
    validate,
)
from dualkit.lpgraph import BipartiteLpGraph, GraphMode, build_graph, export_dot
from dualkit.metrics import MetricVerdict, cged, nged, obj_match, verdict
from dualkit.simplex import SolveResult, SolveStatus, solve

__all__ = [
    "BipartiteLpGraph", "CanonicalLp", "ConstraintSense", "CostModel", "DualizationMethod", "DualizationReport",
    "EditPath", "ErrorType", "GedBudgetError", "GraphMode", "InjectionRecord", "LinearConstraint", "LinearProgram",
    "MethodDisagreementError", "MetricVerdict", "ObjectiveSense", "SolveResult", "SolveStatus", "Variable",
    "build_graph", "canonicalize", "cged", "dualize", "dualize_checked", "export_dot", "flip_constraint", "ged",
    "inject", "negate_objective", "negate_variable", "nged", "obj_match", "solve", "validate", "verdict",
]
