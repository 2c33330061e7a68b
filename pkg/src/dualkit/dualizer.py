"""Symbolic LP dualization by two independent procedures.

``STANDARD_FORM`` forms the Lagrangian with residuals ``a_j x - b_j``, which
gives the dual-variable signs ``y >= 0`` for ``<=`` rows, ``y <= 0`` for
``>=`` rows and free ``y`` for equalities. Maximisation primals are negated,
dualized and negated back.

``SOB`` reads the Sensible-Odd-Bizarre table directly, for both objective
senses:

=================  ==========================  ==========================
primal is          row sense -> dual var        var sign -> dual row
=================  ==========================  ==========================
minimize           >= : y >= 0, = : free,       x >= 0 : <=, free : =,
                   <= : y <= 0                  x <= 0 : >=
maximize           <= : y >= 0, = : free,       x >= 0 : >=, free : =,
                   >= : y <= 0                  x <= 0 : <=
=================  ==========================  ==========================

Both methods first lift every finite bound of a variable that is not purely
sign-constrained (exactly ``[0, inf)`` or ``(-inf, 0]``) into an explicit row
named ``lb_<x>`` / ``ub_<x>`` and free the variable, so those bounds get dual
variables of their own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from dualkit.lp import (
    ConstraintSense,
    LinearConstraint,
    LinearProgram,
    ObjectiveSense,
    Variable,
    negate_objective,
    unique_name,
)

LEQ, GEQ, EQ = ConstraintSense.LEQ, ConstraintSense.GEQ, ConstraintSense.EQ
INF = math.inf


class DualizationMethod(str, Enum):
    STANDARD_FORM = "sf"
    SOB = "sob"


@dataclass(frozen=True)
class DualizationReport:
    dual: LinearProgram
    variable_map: dict[str, str]  # primal constraint -> dual variable
    constraint_map: dict[str, str]  # primal variable -> dual constraint
    method: DualizationMethod = DualizationMethod.STANDARD_FORM


class MethodDisagreementError(RuntimeError):
    """The two dualization procedures produced non-equivalent duals."""

    def __init__(self, sf: LinearProgram, sob: LinearProgram, distance, path):
        super().__init__(f"standard-form and SOB duals differ (CGED {distance})")
        self.sf = sf
        self.sob = sob
        self.distance = distance
        self.path = path


def lift_bounds(lp: LinearProgram) -> LinearProgram:
    """Move non-sign finite bounds into explicit rows and free those variables."""
    taken = set(lp.constraint_names)
    variables: list[Variable] = []
    lifted: list[LinearConstraint] = []
    for v in lp.variables:
        if v.is_sign_bounded or v.is_free:
            variables.append(v)
            continue
        if math.isfinite(v.lower):
            name = unique_name(f"lb_{v.name}", taken)
            taken.add(name)
            lifted.append(LinearConstraint(name, {v.name: 1.0}, GEQ, v.lower))
        if math.isfinite(v.upper):
            name = unique_name(f"ub_{v.name}", taken)
            taken.add(name)
            lifted.append(LinearConstraint(name, {v.name: 1.0}, LEQ, v.upper))
        variables.append(Variable(v.name, -INF, INF))
    return lp.replace(variables=tuple(variables), constraints=lp.constraints + tuple(lifted))


def _names(lp: LinearProgram) -> tuple[dict[str, str], dict[str, str]]:
    var_names: dict[str, str] = {}
    taken: set[str] = set()
    for con in lp.constraints:
        var_names[con.name] = unique_name(f"y_{con.name}", taken)
        taken.add(var_names[con.name])
    con_names: dict[str, str] = {}
    taken = set()
    for v in lp.variables:
        con_names[v.name] = unique_name(f"d_{v.name}", taken)
        taken.add(con_names[v.name])
    return var_names, con_names


def _transpose(lp: LinearProgram) -> dict[str, dict[str, float]]:
    columns: dict[str, dict[str, float]] = {v.name: {} for v in lp.variables}
    for con in lp.constraints:
        for var, a in con.coefficients.items():
            columns[var][con.name] = a
    return columns


def _standard_form(lp: LinearProgram) -> DualizationReport:
    if lp.objective_sense is ObjectiveSense.MAXIMIZE:
        inner = _standard_form(negate_objective(lp))
        return DualizationReport(negate_objective(inner.dual), inner.variable_map, inner.constraint_map,
                                 DualizationMethod.STANDARD_FORM)

    # L(x, y) = c x + sum_j y_j (a_j x - b_j) = -b y + x (c + A^T y)
    ynames, dnames = _names(lp)
    sign_of_row = {LEQ: (0.0, INF), GEQ: (-INF, 0.0), EQ: (-INF, INF)}
    variables = [Variable(ynames[c.name], *sign_of_row[c.sense]) for c in lp.constraints]
    objective = {ynames[c.name]: -c.rhs for c in lp.constraints}
    columns = _transpose(lp)
    constraints = []
    for v in lp.variables:
        # inf_x of x (c + A^T y) is finite iff c + A^T y has the sign of x's cone dual
        sense = GEQ if v.is_nonnegative else LEQ if v.is_nonpositive else EQ
        coefs = {ynames[row]: a for row, a in columns[v.name].items()}
        constraints.append(LinearConstraint(dnames[v.name], coefs, sense, -lp.objective.get(v.name, 0.0)))
    dual = LinearProgram(ObjectiveSense.MAXIMIZE, objective, variables, constraints, lp.objective_constant)
    return DualizationReport(dual, ynames, dnames, DualizationMethod.STANDARD_FORM)


_SENSIBLE, _ODD, _BIZARRE = "sensible", "odd", "bizarre"


def _row_class(sense: ConstraintSense, primal: ObjectiveSense) -> str:
    if sense is EQ:
        return _ODD
    sensible = GEQ if primal is ObjectiveSense.MINIMIZE else LEQ
    return _SENSIBLE if sense is sensible else _BIZARRE


def _var_class(v: Variable) -> str:
    return _SENSIBLE if v.is_nonnegative else _BIZARRE if v.is_nonpositive else _ODD


def _sob(lp: LinearProgram) -> DualizationReport:
    primal = lp.objective_sense
    dual_sense = primal.flipped()
    var_bounds = {_SENSIBLE: (0.0, INF), _ODD: (-INF, INF), _BIZARRE: (-INF, 0.0)}
    # the dual is itself read from the other column of the table
    sensible_row = LEQ if dual_sense is ObjectiveSense.MAXIMIZE else GEQ
    row_sense = {_SENSIBLE: sensible_row, _ODD: EQ, _BIZARRE: sensible_row.flipped()}

    ynames, dnames = _names(lp)
    variables = [Variable(ynames[c.name], *var_bounds[_row_class(c.sense, primal)]) for c in lp.constraints]
    objective = {ynames[c.name]: c.rhs for c in lp.constraints}
    columns = _transpose(lp)
    constraints = [
        LinearConstraint(
            dnames[v.name],
            {ynames[row]: a for row, a in columns[v.name].items()},
            row_sense[_var_class(v)],
            lp.objective.get(v.name, 0.0),
        )
        for v in lp.variables
    ]
    dual = LinearProgram(dual_sense, objective, variables, constraints, lp.objective_constant)
    return DualizationReport(dual, ynames, dnames, DualizationMethod.SOB)


def dualize(lp: LinearProgram, method: DualizationMethod | str = DualizationMethod.STANDARD_FORM) -> DualizationReport:
    """Return the dual of ``lp`` together with the primal-to-dual name maps."""
    method = DualizationMethod(method)
    lifted = lift_bounds(lp)
    if method is DualizationMethod.STANDARD_FORM:
        return _standard_form(lifted)
    return _sob(lifted)


def dualize_checked(lp: LinearProgram) -> DualizationReport:
    """Dualize by both methods and insist they agree under CGED."""
    from dualkit.metrics import cged

    sf = dualize(lp, DualizationMethod.STANDARD_FORM)
    sob = dualize(lp, DualizationMethod.SOB)
    distance, path = cged(sf.dual, sob.dual)
    if distance != 0:
        raise MethodDisagreementError(sf.dual, sob.dual, distance, path)
    return sf
