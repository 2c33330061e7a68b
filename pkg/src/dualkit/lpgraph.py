"""Bipartite variable/constraint graphs of LPs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from dualkit.lp import ConstraintSense, LinearProgram, ObjectiveSense, negate_objective

Feature = tuple[float, ...]


class GraphMode(str, Enum):
    CANONICAL = "canonical"
    NGED_COMPAT = "nged"


class CompatSense(str, Enum):
    """Which way single-sided inequalities are normalised in NGED_COMPAT mode."""

    GEQ = "geq"
    LEQ = "leq"
    NONE = "none"


class GraphPreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class BipartiteLpGraph:
    var_nodes: tuple[tuple[str, Feature], ...] = ()
    con_nodes: tuple[tuple[str, Feature], ...] = ()
    edges: tuple[tuple[str, str, float], ...] = ()
    mode: GraphMode = field(default=GraphMode.CANONICAL, compare=False)

    def __post_init__(self):
        var_ids = [v for v, _ in self.var_nodes]
        con_ids = [c for c, _ in self.con_nodes]
        if len(set(var_ids)) != len(var_ids) or len(set(con_ids)) != len(con_ids):
            raise GraphPreconditionError("node ids must be unique per side")
        var_set, con_set = set(var_ids), set(con_ids)
        seen = set()
        for v, c, w in self.edges:
            if v not in var_set or c not in con_set:
                raise GraphPreconditionError(f"edge ({v}, {c}) has a missing endpoint")
            if w == 0:
                raise GraphPreconditionError(f"edge ({v}, {c}) has zero weight")
            if (v, c) in seen:
                raise GraphPreconditionError(f"duplicate edge ({v}, {c})")
            seen.add((v, c))

    @property
    def size(self) -> int:
        """Nodes plus edges."""
        return len(self.var_nodes) + len(self.con_nodes) + len(self.edges)

    @property
    def node_count(self) -> int:
        return len(self.var_nodes) + len(self.con_nodes)


def _interval(sense: ConstraintSense, rhs: float) -> Feature:
    if sense is ConstraintSense.LEQ:
        return (-math.inf, rhs)
    if sense is ConstraintSense.GEQ:
        return (rhs, math.inf)
    return (rhs, rhs)


def compat_normalize(lp: LinearProgram, compat: CompatSense | str = CompatSense.GEQ) -> LinearProgram:
    """Baseline canonicalisation used by NGED: minimisation plus an optional inequality direction."""
    compat = CompatSense(compat)
    if lp.objective_sense is ObjectiveSense.MAXIMIZE:
        lp = negate_objective(lp)
    if compat is CompatSense.NONE:
        return lp
    unwanted = ConstraintSense.LEQ if compat is CompatSense.GEQ else ConstraintSense.GEQ
    return lp.replace(constraints=tuple(c.flipped() if c.sense is unwanted else c for c in lp.constraints))


def build_graph(lp: LinearProgram, mode: GraphMode | str = GraphMode.CANONICAL) -> BipartiteLpGraph:
    """Graph of ``lp`` as given; callers canonicalise first for CANONICAL mode."""
    mode = GraphMode(mode)
    if mode is GraphMode.CANONICAL:
        if lp.objective_sense is not ObjectiveSense.MINIMIZE:
            raise GraphPreconditionError("canonical graphs need a minimisation objective")
        for c in lp.constraints:
            if c.sense is not ConstraintSense.GEQ:
                raise GraphPreconditionError(f"constraint {c.name!r} is not >=")
        for v in lp.variables:
            if not v.is_nonnegative:
                raise GraphPreconditionError(f"variable {v.name!r} is not bounded to [0, inf)")
        var_nodes = tuple((v.name, (lp.objective.get(v.name, 0.0),)) for v in lp.variables)
        con_nodes = tuple((c.name, (c.rhs,)) for c in lp.constraints)
    else:
        var_nodes = tuple((v.name, (lp.objective.get(v.name, 0.0), v.lower, v.upper)) for v in lp.variables)
        con_nodes = tuple((c.name, _interval(c.sense, c.rhs)) for c in lp.constraints)
    edges = tuple((var, c.name, a) for c in lp.constraints for var, a in c.coefficients.items())
    return BipartiteLpGraph(var_nodes, con_nodes, edges, mode)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _label(feature: Feature) -> str:
    return ",".join(_fmt(x) for x in feature)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: BipartiteLpGraph) -> str:
    if not g.var_nodes and not g.con_nodes:
        return "graph g {}\n"
    lines = ["graph g {"]
    for name, feat in g.var_nodes:
        lines.append(f"  {_quote('v:' + name)} [shape=circle, label={_quote(name + ' | ' + _label(feat))}];")
    for name, feat in g.con_nodes:
        lines.append(f"  {_quote('c:' + name)} [shape=box, label={_quote(name + ' | ' + _label(feat))}];")
    for v, c, w in g.edges:
        lines.append(f"  {_quote('v:' + v)} -- {_quote('c:' + c)} [label={_quote(_fmt(w))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
