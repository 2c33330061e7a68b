"""Symbolic linear program model and its elementary rewrites.

All values are frozen; every rewrite returns a new :class:`LinearProgram`.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from dualkit.tolerance import ATOL


class ObjectiveSense(str, Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"

    def flipped(self) -> ObjectiveSense:
        return ObjectiveSense.MAXIMIZE if self is ObjectiveSense.MINIMIZE else ObjectiveSense.MINIMIZE


class ConstraintSense(str, Enum):
    LEQ = "<="
    GEQ = ">="
    EQ = "="

    def flipped(self) -> ConstraintSense:
        if self is ConstraintSense.LEQ:
            return ConstraintSense.GEQ
        if self is ConstraintSense.GEQ:
            return ConstraintSense.LEQ
        return ConstraintSense.EQ


class UnknownNameError(KeyError):
    """A rewrite referenced a variable or constraint that does not exist."""


def sparse(coefs: Mapping[str, float] | Iterable[tuple[str, float]]) -> dict[str, float]:
    """Copy a coefficient map as floats, dropping entries with |coef| <= atol."""
    items = coefs.items() if isinstance(coefs, Mapping) else coefs
    out: dict[str, float] = {}
    for name, value in items:
        value = float(value)
        if not abs(value) <= ATOL:  # keeps NaN so validate() can report it
            out[name] = value
    return out


@dataclass(frozen=True)
class Variable:
    name: str
    lower: float = 0.0
    upper: float = math.inf

    def __post_init__(self):
        # "+ 0.0" folds -0.0 into 0.0 so negation round-trips print cleanly
        object.__setattr__(self, "lower", float(self.lower) + 0.0)
        object.__setattr__(self, "upper", float(self.upper) + 0.0)

    @property
    def is_free(self) -> bool:
        return self.lower == -math.inf and self.upper == math.inf

    @property
    def is_nonnegative(self) -> bool:
        """Bounds are exactly [0, +inf)."""
        return self.lower == 0.0 and self.upper == math.inf

    @property
    def is_nonpositive(self) -> bool:
        """Bounds are exactly (-inf, 0]."""
        return self.lower == -math.inf and self.upper == 0.0

    @property
    def is_sign_bounded(self) -> bool:
        return self.is_nonnegative or self.is_nonpositive


@dataclass(frozen=True)
class LinearConstraint:
    name: str
    coefficients: dict[str, float]
    sense: ConstraintSense
    rhs: float

    def __post_init__(self):
        object.__setattr__(self, "coefficients", sparse(self.coefficients))
        object.__setattr__(self, "sense", ConstraintSense(self.sense))
        object.__setattr__(self, "rhs", float(self.rhs) + 0.0)

    def flipped(self) -> LinearConstraint:
        return LinearConstraint(
            self.name,
            {k: -v for k, v in self.coefficients.items()},
            self.sense.flipped(),
            -self.rhs,
        )


@dataclass(frozen=True)
class LinearProgram:
    objective_sense: ObjectiveSense
    objective: dict[str, float]
    variables: tuple[Variable, ...]
    constraints: tuple[LinearConstraint, ...] = ()
    objective_constant: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "objective_sense", ObjectiveSense(self.objective_sense))
        object.__setattr__(self, "objective", sparse(self.objective))
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "objective_constant", float(self.objective_constant) + 0.0)

    @property
    def variable_names(self) -> list[str]:
        return [v.name for v in self.variables]

    @property
    def constraint_names(self) -> list[str]:
        return [c.name for c in self.constraints]

    def variable(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise UnknownNameError(f"unknown variable {name!r}")

    def constraint(self, name: str) -> LinearConstraint:
        for c in self.constraints:
            if c.name == name:
                return c
        raise UnknownNameError(f"unknown constraint {name!r}")

    def replace(self, **changes) -> LinearProgram:
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.code} at {self.location}: {self.message}"


def _bad_name(name) -> bool:
    return not isinstance(name, str) or not name or any(ch.isspace() for ch in name)


def validate(lp: LinearProgram) -> list[Diagnostic]:
    """Check every model invariant; the empty list means the LP is well formed."""
    diags: list[Diagnostic] = []

    def report(code, location, message):
        diags.append(Diagnostic(code, location, message))

    declared: set[str] = set()
    for v in lp.variables:
        loc = f"variable {v.name!r}"
        if _bad_name(v.name):
            report("bad-name", loc, "names must be non-empty and contain no whitespace")
        if v.name in declared:
            report("duplicate-variable", loc, "variable declared more than once")
        declared.add(v.name)
        if math.isnan(v.lower) or math.isnan(v.upper):
            report("nan-bound", loc, "bound is NaN")
            continue
        if v.lower == math.inf or v.upper == -math.inf:
            report("infinite-bound", loc, f"bounds [{v.lower}, {v.upper}] are infinite on the wrong side")
        elif v.lower > v.upper:
            report("bound-order", loc, f"lower bound {v.lower} exceeds upper bound {v.upper}")

    for name, coef in lp.objective.items():
        if name not in declared:
            report("undeclared-variable", "objective", f"references undeclared variable {name!r}")
        if not math.isfinite(coef):
            report("non-finite", f"objective[{name!r}]", f"coefficient {coef}")
        elif abs(coef) <= ATOL:
            report("explicit-zero", f"objective[{name!r}]", "explicit zero coefficient")
    if not math.isfinite(lp.objective_constant):
        report("non-finite", "objective constant", f"value {lp.objective_constant}")

    seen: set[str] = set()
    for con in lp.constraints:
        loc = f"constraint {con.name!r}"
        if _bad_name(con.name):
            report("bad-name", loc, "names must be non-empty and contain no whitespace")
        if con.name in seen:
            report("duplicate-constraint", loc, "constraint declared more than once")
        seen.add(con.name)
        if not math.isfinite(con.rhs):
            report("non-finite", loc, f"right-hand side {con.rhs}")
        for name, coef in con.coefficients.items():
            if name not in declared:
                report("undeclared-variable", loc, f"references undeclared variable {name!r}")
            if not math.isfinite(coef):
                report("non-finite", f"{loc}[{name!r}]", f"coefficient {coef}")
            elif abs(coef) <= ATOL:
                report("explicit-zero", f"{loc}[{name!r}]", "explicit zero coefficient")
    return diags


def negate_variable(lp: LinearProgram, var: str) -> LinearProgram:
    """Substitute ``var -> -var``: negate its coefficients and mirror its bounds."""
    target = lp.variable(var)
    variables = tuple(
        Variable(v.name, -target.upper, -target.lower) if v.name == var else v for v in lp.variables
    )
    objective = {k: (-c if k == var else c) for k, c in lp.objective.items()}
    constraints = tuple(
        LinearConstraint(
            c.name,
            {k: (-a if k == var else a) for k, a in c.coefficients.items()},
            c.sense,
            c.rhs,
        )
        if var in c.coefficients
        else c
        for c in lp.constraints
    )
    return lp.replace(variables=variables, objective=objective, constraints=constraints)


def flip_constraint(lp: LinearProgram, con: str) -> LinearProgram:
    """Multiply a row by -1: negate its data and mirror its sense (EQ stays EQ)."""
    lp.constraint(con)
    constraints = tuple(c.flipped() if c.name == con else c for c in lp.constraints)
    return lp.replace(constraints=constraints)


def negate_objective(lp: LinearProgram) -> LinearProgram:
    """Flip the objective sense together with the objective data; the optimal point set is unchanged."""
    return lp.replace(
        objective_sense=lp.objective_sense.flipped(),
        objective={k: -c for k, c in lp.objective.items()},
        objective_constant=-lp.objective_constant,
    )


def unique_name(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    i = 1
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


def introduce_slack(lp: LinearProgram, con: str, name: str | None = None) -> LinearProgram:
    """Turn inequality ``con`` into an equality with a fresh slack (``+s, s >= 0`` or ``-s, s >= 0``)."""
    target = lp.constraint(con)
    if target.sense is ConstraintSense.EQ:
        raise ValueError(f"constraint {con!r} is already an equality")
    slack = unique_name(name or f"s_{con}", set(lp.variable_names))
    coef = 1.0 if target.sense is ConstraintSense.LEQ else -1.0
    row = LinearConstraint(con, {**target.coefficients, slack: coef}, ConstraintSense.EQ, target.rhs)
    return lp.replace(
        variables=lp.variables + (Variable(slack),),
        constraints=tuple(row if c.name == con else c for c in lp.constraints),
    )


def permute(lp: LinearProgram, var_order: list[str], con_order: list[str]) -> LinearProgram:
    """Reorder variables and constraints (and the keys of every coefficient map)."""
    if sorted(var_order) != sorted(lp.variable_names) or sorted(con_order) != sorted(lp.constraint_names):
        raise ValueError("orders must be permutations of the existing names")
    rank = {name: i for i, name in enumerate(var_order)}

    def reorder(coefs: dict[str, float]) -> dict[str, float]:
        return dict(sorted(coefs.items(), key=lambda kv: rank[kv[0]]))

    return lp.replace(
        variables=tuple(lp.variable(n) for n in var_order),
        objective=reorder(lp.objective),
        constraints=tuple(
            LinearConstraint(c.name, reorder(c.coefficients), c.sense, c.rhs)
            for c in (lp.constraint(n) for n in con_order)
        ),
    )
