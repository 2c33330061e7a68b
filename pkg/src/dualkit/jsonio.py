"""Lossless JSON encoding of LinearProgram (schema ``dualkit-lp/1``).

Example document::

    {
      "version": "dualkit-lp/1",
      "objective_sense": "min",
      "objective_constant": 0.0,
      "objective": {"x": 1.0},
      "variables": [{"name": "x", "lower": 0.0, "upper": "inf"}],
      "constraints": [{"name": "c1", "coefs": {"x": 1.0}, "sense": ">=", "rhs": 1.0}]
    }

Infinite bounds are the strings ``"inf"`` and ``"-inf"``.
"""

from __future__ import annotations

import json
import math
from typing import Any

import jsonschema

from dualkit.lp import LinearConstraint, LinearProgram, Variable, validate

VERSION = "dualkit-lp/1"

_NUMBER = {"type": "number"}
_BOUND = {"anyOf": [{"type": "number"}, {"enum": ["inf", "-inf"]}]}
_COEFS = {"type": "object", "additionalProperties": _NUMBER}

SCHEMA: dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "required": ["version", "objective_sense", "objective", "variables", "constraints"],
    "properties": {
        "version": {"const": VERSION},
        "objective_sense": {"enum": ["min", "max"]},
        "objective_constant": _NUMBER,
        "objective": _COEFS,
        "variables": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["name", "lower", "upper"],
                "properties": {"name": {"type": "string"}, "lower": _BOUND, "upper": _BOUND},
            },
        },
        "constraints": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["name", "coefs", "sense", "rhs"],
                "properties": {
                    "name": {"type": "string"},
                    "coefs": _COEFS,
                    "sense": {"enum": ["<=", "=", ">="]},
                    "rhs": _NUMBER,
                },
            },
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


class LpSchemaError(ValueError):
    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


def _pointer(path) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


def _bound_out(value: float) -> float | str:
    if value == math.inf:
        return "inf"
    if value == -math.inf:
        return "-inf"
    return value


def _bound_in(value: float | str) -> float:
    return float(value)


def lp_to_dict(lp: LinearProgram) -> dict[str, Any]:
    return {
        "version": VERSION,
        "objective_sense": lp.objective_sense.value,
        "objective_constant": lp.objective_constant,
        "objective": dict(lp.objective),
        "variables": [
            {"name": v.name, "lower": _bound_out(v.lower), "upper": _bound_out(v.upper)} for v in lp.variables
        ],
        "constraints": [
            {"name": c.name, "coefs": dict(c.coefficients), "sense": c.sense.value, "rhs": c.rhs}
            for c in lp.constraints
        ],
    }


def lp_from_dict(data: Any) -> LinearProgram:
    error = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(data))
    if error is not None:
        raise LpSchemaError(_pointer(error.absolute_path), error.message)
    lp = LinearProgram(
        data["objective_sense"],
        data["objective"],
        [Variable(v["name"], _bound_in(v["lower"]), _bound_in(v["upper"])) for v in data["variables"]],
        [LinearConstraint(c["name"], c["coefs"], c["sense"], c["rhs"]) for c in data["constraints"]],
        data.get("objective_constant", 0.0),
    )
    problems = validate(lp)
    if problems:
        raise LpSchemaError("", str(problems[0]))
    return lp


def write_json(lp: LinearProgram, indent: int | None = 2) -> str:
    return json.dumps(lp_to_dict(lp), indent=indent, allow_nan=False) + "\n"


def parse_json(text: str) -> LinearProgram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LpSchemaError("", f"invalid JSON: {exc}") from None
    return lp_from_dict(data)
