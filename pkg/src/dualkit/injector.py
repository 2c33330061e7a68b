"""Labelled error injection into dual LPs.

Targets are drawn with :class:`random.Random` (Mersenne Twister MT19937)
seeded with the given integer: the sorted list of eligible targets is
shuffled once and tried in that order, skipping any whose mutation leaves the
CGED distance at zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from dualkit.lp import ConstraintSense, LinearConstraint, LinearProgram, Variable

RNG_ALGORITHM = "python-random-mt19937"


class ErrorType(str, Enum):
    WRONG_OBJECTIVE_SENSE = "wrong_objective_sense"
    MISSING_VARIABLE = "missing_variable"
    MISSING_CONSTRAINT = "missing_constraint"
    FLIPPED_CONSTRAINT_SENSE = "flipped_constraint_sense"
    FLIPPED_BOUND_SENSE = "flipped_bound_sense"


class InjectionError(ValueError):
    pass


@dataclass(frozen=True)
class InjectionRecord:
    mutated: LinearProgram
    error: ErrorType
    location: str
    seed: int
    attempts: int


_OBJECTIVE = "<objective>"


def eligible_targets(lp: LinearProgram, etype: ErrorType) -> list[str]:
    etype = ErrorType(etype)
    if etype is ErrorType.WRONG_OBJECTIVE_SENSE:
        return [_OBJECTIVE]
    if etype is ErrorType.MISSING_VARIABLE:
        return sorted(lp.variable_names)
    if etype is ErrorType.MISSING_CONSTRAINT:
        return sorted(lp.constraint_names)
    if etype is ErrorType.FLIPPED_CONSTRAINT_SENSE:
        return sorted(c.name for c in lp.constraints if c.sense is not ConstraintSense.EQ)
    return sorted(v.name for v in lp.variables if v.is_sign_bounded)


def mutate(lp: LinearProgram, etype: ErrorType, target: str) -> LinearProgram:
    """Apply one documented edit; nothing else about ``lp`` changes."""
    etype = ErrorType(etype)
    if etype is ErrorType.WRONG_OBJECTIVE_SENSE:
        return lp.replace(objective_sense=lp.objective_sense.flipped())
    if etype is ErrorType.MISSING_VARIABLE:
        lp.variable(target)
        return lp.replace(
            variables=tuple(v for v in lp.variables if v.name != target),
            objective={k: c for k, c in lp.objective.items() if k != target},
            constraints=tuple(
                LinearConstraint(c.name, {k: a for k, a in c.coefficients.items() if k != target}, c.sense, c.rhs)
                for c in lp.constraints
            ),
        )
    if etype is ErrorType.MISSING_CONSTRAINT:
        lp.constraint(target)
        return lp.replace(constraints=tuple(c for c in lp.constraints if c.name != target))
    if etype is ErrorType.FLIPPED_CONSTRAINT_SENSE:
        con = lp.constraint(target)
        if con.sense is ConstraintSense.EQ:
            raise InjectionError(f"constraint {target!r} is an equality")
        flipped = LinearConstraint(con.name, con.coefficients, con.sense.flipped(), con.rhs)
        return lp.replace(constraints=tuple(flipped if c.name == target else c for c in lp.constraints))
    var = lp.variable(target)
    if not var.is_sign_bounded:
        raise InjectionError(f"variable {target!r} has no one-sided sign bound")
    new = Variable(var.name, -var.upper, -var.lower)
    return lp.replace(variables=tuple(new if v.name == target else v for v in lp.variables))


def inject(lp: LinearProgram, etype: ErrorType | str, seed: int) -> InjectionRecord:
    from dualkit.metrics import cged_is_zero

    etype = ErrorType(etype)
    targets = eligible_targets(lp, etype)
    if not targets:
        raise InjectionError(f"no eligible target for {etype.value}")
    random.Random(seed).shuffle(targets)
    for attempt, target in enumerate(targets, start=1):
        mutated = mutate(lp, etype, target)
        if not cged_is_zero(lp, mutated):
            location = "objective" if target == _OBJECTIVE else target
            return InjectionRecord(mutated, etype, location, seed, attempt)
    raise InjectionError(f"every {etype.value} target is a semantic no-op")
