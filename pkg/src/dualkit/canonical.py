"""Convention-invariant canonical form of an LP.

The pipeline, applied in this order:

1. eliminate slack variables (equality rows become inequalities),
2. turn the objective into a minimisation,
3. flip variables bounded only from above so they read ``x >= -u``,
4. move double-sided and nonzero one-sided bounds into rows and split the
   resulting free variables as ``x = x+ - x-``,
5. rewrite every row as ``>=`` (equalities become a ``>=`` pair),
6. materialise each remaining ``x >= 0`` as an explicit row ``bnd_<x>``.

The output is a minimisation with only ``>=`` rows and only ``[0, inf)``
variables, so two LPs that differ by objective or row negation, ordering,
slack variables or variable sign share the same bipartite graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from dualkit.lp import (
    ConstraintSense,
    LinearConstraint,
    LinearProgram,
    ObjectiveSense,
    Variable,
    negate_objective,
    negate_variable,
    unique_name,
)
from dualkit.tolerance import ATOL

GEQ, LEQ, EQ = ConstraintSense.GEQ, ConstraintSense.LEQ, ConstraintSense.EQ


@dataclass(frozen=True)
class Step:
    kind: str
    names: tuple[str, ...]


@dataclass(frozen=True)
class CanonicalLp:
    lp: LinearProgram
    provenance: tuple[Step, ...]

    @property
    def objective_negated(self) -> bool:
        return any(step.kind == "negate_objective" for step in self.provenance)


def _occurrences(lp: LinearProgram) -> dict[str, list[tuple[LinearConstraint, float]]]:
    occ: dict[str, list[tuple[LinearConstraint, float]]] = {v.name: [] for v in lp.variables}
    for con in lp.constraints:
        for var, a in con.coefficients.items():
            occ[var].append((con, a))
    return occ


def slack_direction(lp: LinearProgram, var: Variable, occ=None) -> tuple[str, ConstraintSense] | None:
    """If ``var`` is a slack, return (its row, the inequality sense it implies for the rest of the row).

    A slack has no objective coefficient, appears in exactly one row, that row
    is an equality, and its bounds are exactly [0, inf) or (-inf, 0].
    """
    if not var.is_sign_bounded or abs(lp.objective.get(var.name, 0.0)) > ATOL:
        return None
    occ = _occurrences(lp) if occ is None else occ
    rows = occ[var.name]
    if len(rows) != 1 or rows[0][0].sense is not EQ:
        return None
    con, alpha = rows[0]
    # a x + alpha s = b  =>  a x = b - alpha s; sign(alpha s) fixes the direction
    product_nonneg = (alpha > 0) == var.is_nonnegative
    return con.name, (LEQ if product_nonneg else GEQ)


def find_slacks(lp: LinearProgram) -> list[str]:
    occ = _occurrences(lp)
    return [v.name for v in lp.variables if slack_direction(lp, v, occ) is not None]


def eliminate_slacks(lp: LinearProgram, provenance: list[Step] | None = None) -> LinearProgram:
    """Remove slack variables until none remain.

    Rows holding several slacks are handled in one go: if all of them push the
    same way the row becomes that inequality, otherwise the row can always be
    satisfied and is dropped together with its slacks.
    """
    for _ in range(len(lp.variables) + 1):
        occ = _occurrences(lp)
        per_row: dict[str, list[tuple[str, ConstraintSense]]] = {}
        for v in lp.variables:
            found = slack_direction(lp, v, occ)
            if found is not None:
                per_row.setdefault(found[0], []).append((v.name, found[1]))
        if not per_row:
            return lp
        removed: set[str] = set()
        constraints: list[LinearConstraint] = []
        for con in lp.constraints:
            slacks = per_row.get(con.name)
            if not slacks:
                constraints.append(con)
                continue
            names = [name for name, _ in slacks]
            removed.update(names)
            senses = {sense for _, sense in slacks}
            if len(senses) > 1:
                if provenance is not None:
                    provenance.append(Step("drop_vacuous_row", (con.name, *names)))
                continue
            rest = {k: a for k, a in con.coefficients.items() if k not in names}
            constraints.append(LinearConstraint(con.name, rest, senses.pop(), con.rhs))
            if provenance is not None:
                provenance.append(Step("eliminate_slack", (con.name, *names)))
        lp = lp.replace(
            variables=tuple(v for v in lp.variables if v.name not in removed),
            objective={k: c for k, c in lp.objective.items() if k not in removed},
            constraints=tuple(constraints),
        )
    raise RuntimeError("slack elimination did not reach a fixpoint")


def normalize_objective(lp: LinearProgram, provenance: list[Step] | None = None) -> LinearProgram:
    if lp.objective_sense is ObjectiveSense.MAXIMIZE:
        if provenance is not None:
            provenance.append(Step("negate_objective", ()))
        return negate_objective(lp)
    return lp


def flip_upper_sign_bounds(lp: LinearProgram, provenance: list[Step] | None = None) -> LinearProgram:
    """Negate every variable bounded only from above, so its bound reads ``x >= -u``."""
    for v in lp.variables:
        if v.lower == -math.inf and math.isfinite(v.upper):
            lp = negate_variable(lp, v.name)
            if provenance is not None:
                provenance.append(Step("negate_variable", (v.name,)))
    return lp


def split_nonstandard_vars(lp: LinearProgram, provenance: list[Step] | None = None) -> LinearProgram:
    """Move bounds of non-``[0, inf)`` variables into rows, then split free variables.

    Expects :func:`flip_upper_sign_bounds` to have run already.
    """
    var_taken = set(lp.variable_names)
    con_taken = set(lp.constraint_names)
    variables: list[Variable] = []
    moved: list[LinearConstraint] = []
    split: dict[str, tuple[str, str]] = {}
    for v in lp.variables:
        if v.is_nonnegative:
            variables.append(v)
            continue
        if v.lower == -math.inf and math.isfinite(v.upper):
            raise ValueError(f"variable {v.name!r} is bounded only from above; flip it first")
        if math.isfinite(v.lower):
            name = unique_name(f"lb_{v.name}", con_taken)
            con_taken.add(name)
            moved.append(LinearConstraint(name, {v.name: 1.0}, GEQ, v.lower))
        if math.isfinite(v.upper):
            name = unique_name(f"ub_{v.name}", con_taken)
            con_taken.add(name)
            moved.append(LinearConstraint(name, {v.name: -1.0}, GEQ, -v.upper))
        plus = unique_name(f"{v.name}+", var_taken)
        var_taken.add(plus)
        minus = unique_name(f"{v.name}-", var_taken)
        var_taken.add(minus)
        split[v.name] = (plus, minus)
        variables += [Variable(plus), Variable(minus)]
        if provenance is not None:
            provenance.append(Step("split_variable", (v.name, plus, minus)))
    if not split:
        return lp

    def expand(coefs: dict[str, float]) -> dict[str, float]:
        out: dict[str, float] = {}
        for k, a in coefs.items():
            if k in split:
                plus, minus = split[k]
                out[plus] = a
                out[minus] = -a
            else:
                out[k] = a
        return out

    constraints = tuple(
        LinearConstraint(c.name, expand(c.coefficients), c.sense, c.rhs) for c in lp.constraints + tuple(moved)
    )
    return lp.replace(variables=tuple(variables), objective=expand(lp.objective), constraints=constraints)


def normalize_senses(lp: LinearProgram, provenance: list[Step] | None = None) -> LinearProgram:
    """Minimisation objective; every row as ``>=``; equalities as a ``>=`` pair."""
    lp = normalize_objective(lp, provenance)
    taken = set(lp.constraint_names)
    constraints: list[LinearConstraint] = []
    for con in lp.constraints:
        if con.sense is GEQ:
            constraints.append(con)
        elif con.sense is LEQ:
            constraints.append(con.flipped())
            if provenance is not None:
                provenance.append(Step("flip_constraint", (con.name,)))
        else:
            twin = unique_name(f"{con.name}_neg", taken)
            taken.add(twin)
            constraints.append(LinearConstraint(con.name, con.coefficients, GEQ, con.rhs))
            flipped = con.flipped()
            constraints.append(LinearConstraint(twin, flipped.coefficients, GEQ, flipped.rhs))
            if provenance is not None:
                provenance.append(Step("split_equality", (con.name, twin)))
    return lp.replace(constraints=tuple(constraints))


def _is_bound_row(con: LinearConstraint, var: str) -> bool:
    return (
        con.sense is GEQ
        and con.rhs == 0.0
        and len(con.coefficients) == 1
        and con.coefficients.get(var) == 1.0
    )


def materialize_bounds(lp: LinearProgram, provenance: list[Step] | None = None) -> LinearProgram:
    """Add ``bnd_<x>: x >= 0`` for every variable, unless that exact row is already present."""
    existing = {c.name: c for c in lp.constraints}
    taken = set(existing)
    added: list[LinearConstraint] = []
    for v in lp.variables:
        base = f"bnd_{v.name}"
        if base in existing and _is_bound_row(existing[base], v.name):
            continue
        name = unique_name(base, taken)
        taken.add(name)
        added.append(LinearConstraint(name, {v.name: 1.0}, GEQ, 0.0))
        if provenance is not None:
            provenance.append(Step("materialize_bound", (v.name, name)))
    if not added:
        return lp
    return lp.replace(constraints=lp.constraints + tuple(added))


def canonicalize(lp: LinearProgram) -> CanonicalLp:
    steps: list[Step] = []
    lp = eliminate_slacks(lp, steps)
    lp = normalize_objective(lp, steps)
    lp = flip_upper_sign_bounds(lp, steps)
    lp = split_nonstandard_vars(lp, steps)
    lp = normalize_senses(lp, steps)
    lp = materialize_bounds(lp, steps)
    return CanonicalLp(lp, tuple(steps))


def replay(lp: LinearProgram, provenance: tuple[Step, ...]) -> LinearProgram:
    """Re-apply a provenance log step by step; reproduces ``canonicalize(lp).lp``."""
    for step in provenance:
        kind, names = step.kind, step.names
        if kind in ("eliminate_slack", "drop_vacuous_row"):
            row, slacks = names[0], set(names[1:])
            con = lp.constraint(row)
            constraints = []
            for c in lp.constraints:
                if c.name != row:
                    constraints.append(c)
                elif kind == "eliminate_slack":
                    var = lp.variable(next(iter(slacks)))
                    alpha = con.coefficients[var.name]
                    sense = LEQ if (alpha > 0) == var.is_nonnegative else GEQ
                    rest = {k: a for k, a in c.coefficients.items() if k not in slacks}
                    constraints.append(LinearConstraint(row, rest, sense, c.rhs))
            lp = lp.replace(
                variables=tuple(v for v in lp.variables if v.name not in slacks),
                objective={k: a for k, a in lp.objective.items() if k not in slacks},
                constraints=tuple(constraints),
            )
        elif kind == "negate_objective":
            lp = negate_objective(lp)
        elif kind == "negate_variable":
            lp = negate_variable(lp, names[0])
        elif kind == "split_variable":
            var, plus, minus = names
            v = lp.variable(var)
            taken = set(lp.constraint_names)
            moved = []
            if math.isfinite(v.lower):
                name = unique_name(f"lb_{var}", taken)
                taken.add(name)
                moved.append(LinearConstraint(name, {var: 1.0}, GEQ, v.lower))
            if math.isfinite(v.upper):
                name = unique_name(f"ub_{var}", taken)
                moved.append(LinearConstraint(name, {var: -1.0}, GEQ, -v.upper))

            def expand(coefs):
                out = {}
                for k, a in coefs.items():
                    if k == var:
                        out[plus], out[minus] = a, -a
                    else:
                        out[k] = a
                return out

            variables = []
            for u in lp.variables:
                variables += [Variable(plus), Variable(minus)] if u.name == var else [u]
            lp = lp.replace(
                variables=tuple(variables),
                objective=expand(lp.objective),
                constraints=tuple(
                    LinearConstraint(c.name, expand(c.coefficients), c.sense, c.rhs)
                    for c in lp.constraints + tuple(moved)
                ),
            )
        elif kind == "flip_constraint":
            lp = lp.replace(constraints=tuple(c.flipped() if c.name == names[0] else c for c in lp.constraints))
        elif kind == "split_equality":
            row, twin = names
            constraints = []
            for c in lp.constraints:
                if c.name == row:
                    f = c.flipped()
                    constraints += [
                        LinearConstraint(row, c.coefficients, GEQ, c.rhs),
                        LinearConstraint(twin, f.coefficients, GEQ, f.rhs),
                    ]
                else:
                    constraints.append(c)
            lp = lp.replace(constraints=tuple(constraints))
        elif kind == "materialize_bound":
            var, name = names
            lp = lp.replace(constraints=lp.constraints + (LinearConstraint(name, {var: 1.0}, GEQ, 0.0),))
        else:
            raise ValueError(f"unknown provenance step {kind!r}")
    return lp
