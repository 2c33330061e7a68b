"""Free-format MPS reader and writer.

Sections are recognised by a keyword in column 1; data lines must be
indented. Fixed-column MPS, integer markers and integer bound types are
rejected. RANGES are expanded into a pair of inequalities at parse time:

====  ========  ==========================
row   R         interval for ``a x``
====  ========  ==========================
G     any       [rhs, rhs + |R|]
L     any       [rhs - |R|, rhs]
E     R > 0     [rhs, rhs + R]
E     R < 0     [rhs + R, rhs]
====  ========  ==========================

The original row keeps its name and carries the bound on its own side; the
other bound becomes a new row named ``<row>_rng``.

The objective constant is stored as the negated RHS entry of the objective
row, the convention used by CPLEX, Gurobi and HiGHS.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from dualkit.lp import (
    ConstraintSense,
    LinearConstraint,
    LinearProgram,
    ObjectiveSense,
    Variable,
    unique_name,
    validate,
)

SECTIONS = ("NAME", "OBJSENSE", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA")
_ROW_SENSES = {"L": ConstraintSense.LEQ, "G": ConstraintSense.GEQ, "E": ConstraintSense.EQ}
_SENSE_CODES = {v: k for k, v in _ROW_SENSES.items()}


class MpsParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.reason = message


@dataclass
class MpsDocument:
    """Token tables of a parsed MPS file, before conversion to a LinearProgram."""

    name: str = ""
    objsense: ObjectiveSense = ObjectiveSense.MINIMIZE
    objective_row: str | None = None
    rows: dict[str, ConstraintSense] = field(default_factory=dict)
    columns: dict[str, dict[str, float]] = field(default_factory=dict)
    rhs: dict[str, float] = field(default_factory=dict)
    ranges: dict[str, float] = field(default_factory=dict)
    bounds: dict[str, dict[str, float]] = field(default_factory=dict)
    # line numbers used to anchor diagnostics raised after tokenising
    row_lines: dict[str, int] = field(default_factory=dict)
    bound_lines: dict[str, int] = field(default_factory=dict)


def _number(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise MpsParseError(lineno, f"expected a number, got {token!r}") from None
    if math.isnan(value):
        raise MpsParseError(lineno, "NaN is not allowed")
    return value


def _finite(token: str, lineno: int) -> float:
    value = _number(token, lineno)
    if math.isinf(value):
        raise MpsParseError(lineno, f"infinite value {token!r} not allowed here")
    return value


def tokenize(text: str) -> MpsDocument:
    """Split an MPS text into its section tables, checking structure as it goes."""
    doc = MpsDocument()
    section: str | None = None
    order = -1
    seen_endata = False
    last_column: str | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip() or line.startswith("*"):
            continue
        if seen_endata:
            raise MpsParseError(lineno, "content after ENDATA")
        tokens = line.split()
        if not line[0].isspace():
            keyword = tokens[0].upper()
            if keyword not in SECTIONS:
                raise MpsParseError(lineno, f"unknown section {tokens[0]!r}")
            pos = SECTIONS.index(keyword)
            if pos <= order:
                raise MpsParseError(lineno, f"section {keyword} out of order")
            if order < 0 and keyword != "NAME":
                raise MpsParseError(lineno, "file must start with a NAME section")
            if keyword in ("COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA") and order < SECTIONS.index("ROWS"):
                raise MpsParseError(lineno, f"section {keyword} before ROWS")
            order = pos
            section = keyword
            rest = tokens[1:]
            if keyword == "NAME":
                doc.name = " ".join(rest)
            elif keyword == "OBJSENSE" and rest:
                doc.objsense = _objsense(rest, lineno)
            elif keyword == "ENDATA":
                seen_endata = True
            elif rest and keyword not in ("RHS", "RANGES", "BOUNDS"):
                raise MpsParseError(lineno, f"unexpected tokens after {keyword}")
            continue

        if section == "OBJSENSE":
            doc.objsense = _objsense(tokens, lineno)
        elif section == "ROWS":
            _row_line(doc, tokens, lineno)
        elif section == "COLUMNS":
            last_column = _column_line(doc, tokens, lineno, last_column)
        elif section == "RHS":
            _pairs_line(doc, doc.rhs, tokens, lineno, "RHS", allow_objective=True)
        elif section == "RANGES":
            _pairs_line(doc, doc.ranges, tokens, lineno, "RANGES", allow_objective=False)
        elif section == "BOUNDS":
            _bound_line(doc, tokens, lineno)
        else:
            raise MpsParseError(lineno, "data line outside of a data section")

    if not seen_endata:
        raise MpsParseError(len(text.splitlines()) + 1, "missing ENDATA")
    if doc.objective_row is None:
        raise MpsParseError(len(text.splitlines()), "no objective (N) row declared")
    return doc


def _objsense(tokens: list[str], lineno: int) -> ObjectiveSense:
    if len(tokens) != 1:
        raise MpsParseError(lineno, "OBJSENSE takes exactly one value")
    word = tokens[0].upper()
    if word in ("MAX", "MAXIMIZE"):
        return ObjectiveSense.MAXIMIZE
    if word in ("MIN", "MINIMIZE"):
        return ObjectiveSense.MINIMIZE
    raise MpsParseError(lineno, f"unknown objective sense {tokens[0]!r}")


def _row_line(doc: MpsDocument, tokens: list[str], lineno: int) -> None:
    if len(tokens) != 2:
        raise MpsParseError(lineno, "ROWS entries are '<type> <name>'")
    kind, name = tokens[0].upper(), tokens[1]
    if name in doc.rows or name == doc.objective_row:
        raise MpsParseError(lineno, f"row {name!r} declared twice")
    if kind == "N":
        if doc.objective_row is not None:
            raise MpsParseError(lineno, "more than one objective (N) row")
        doc.objective_row = name
    elif kind in _ROW_SENSES:
        doc.rows[name] = _ROW_SENSES[kind]
    else:
        raise MpsParseError(lineno, f"unknown row type {tokens[0]!r}")
    doc.row_lines[name] = lineno


def _known_row(doc: MpsDocument, name: str, lineno: int, allow_objective: bool = True) -> None:
    if name == doc.objective_row:
        if not allow_objective:
            raise MpsParseError(lineno, f"objective row {name!r} not allowed here")
        return
    if name not in doc.rows:
        raise MpsParseError(lineno, f"unknown row {name!r}")


def _column_line(doc: MpsDocument, tokens: list[str], lineno: int, last: str | None) -> str:
    if "'MARKER'" in (t.upper() for t in tokens):
        raise MpsParseError(lineno, "integer markers are not supported")
    if len(tokens) not in (3, 5):
        raise MpsParseError(lineno, "COLUMNS entries are '<column> <row> <value> [<row> <value>]'")
    column = tokens[0]
    entries = doc.columns.get(column)
    if entries is None:
        entries = doc.columns[column] = {}
    for row, value in zip(tokens[1::2], tokens[2::2]):
        _known_row(doc, row, lineno)
        if row in entries:
            raise MpsParseError(lineno, f"duplicate entry for column {column!r}, row {row!r}")
        entries[row] = _finite(value, lineno)
    return column


def _pairs_line(doc, table, tokens, lineno, what, allow_objective) -> None:
    # an optional leading set name makes the token count odd
    if len(tokens) in (3, 5):
        tokens = tokens[1:]
    elif len(tokens) not in (2, 4):
        raise MpsParseError(lineno, f"malformed {what} entry")
    for row, value in zip(tokens[0::2], tokens[1::2]):
        _known_row(doc, row, lineno, allow_objective)
        if row in table:
            raise MpsParseError(lineno, f"duplicate {what} entry for row {row!r}")
        table[row] = _finite(value, lineno)


_VALUED_BOUNDS = {"LO", "UP", "FX"}
_FLAG_BOUNDS = {"FR", "MI", "PL"}


def _bound_line(doc: MpsDocument, tokens: list[str], lineno: int) -> None:
    kind = tokens[0].upper()
    if kind in ("BV", "LI", "UI", "SC"):
        raise MpsParseError(lineno, f"integer bound type {kind} is not supported")
    if kind in _VALUED_BOUNDS:
        if len(tokens) == 4:
            column, value = tokens[2], tokens[3]
        elif len(tokens) == 3:
            column, value = tokens[1], tokens[2]
        else:
            raise MpsParseError(lineno, f"malformed {kind} bound")
        number = _number(value, lineno)
    elif kind in _FLAG_BOUNDS:
        if len(tokens) == 3:
            column = tokens[2]
        elif len(tokens) == 2:
            column = tokens[1]
        else:
            raise MpsParseError(lineno, f"malformed {kind} bound")
        number = 0.0
    else:
        raise MpsParseError(lineno, f"unknown bound type {tokens[0]!r}")
    if column not in doc.columns:
        raise MpsParseError(lineno, f"bound on unknown column {column!r}")
    entries = doc.bounds.setdefault(column, {})
    if kind in entries:
        raise MpsParseError(lineno, f"duplicate {kind} bound on column {column!r}")
    entries[kind] = number
    doc.bound_lines.setdefault(column, lineno)


def _variable(name: str, codes: dict[str, float], lineno: int) -> Variable:
    lower, upper = 0.0, math.inf
    explicit_lower = False
    # apply in a fixed order so the result does not depend on line order
    for kind in ("FR", "MI", "PL", "LO", "UP", "FX"):
        if kind not in codes:
            continue
        value = codes[kind]
        if kind == "FR":
            lower, upper = -math.inf, math.inf
            explicit_lower = True
        elif kind == "MI":
            lower, explicit_lower = -math.inf, True
        elif kind == "PL":
            upper = math.inf
        elif kind == "LO":
            if value == math.inf:
                raise MpsParseError(lineno, f"LO bound +inf on column {name!r}")
            lower, explicit_lower = value, True
        elif kind == "UP":
            if value == -math.inf:
                raise MpsParseError(lineno, f"UP bound -inf on column {name!r}")
            upper = value
            # de-facto convention: a negative UP with no lower bound frees the lower side
            if value < 0 and not explicit_lower:
                lower = -math.inf
        elif kind == "FX":
            if math.isinf(value):
                raise MpsParseError(lineno, f"infinite FX bound on column {name!r}")
            lower = upper = value
    return Variable(name, lower, upper)


def to_lp(doc: MpsDocument) -> LinearProgram:
    objective: dict[str, float] = {}
    coefs: dict[str, dict[str, float]] = {row: {} for row in doc.rows}
    for column, entries in doc.columns.items():
        for row, value in entries.items():
            if row == doc.objective_row:
                objective[column] = value
            else:
                coefs[row][column] = value
    variables = [
        _variable(name, doc.bounds.get(name, {}), doc.bound_lines.get(name, 0)) for name in doc.columns
    ]

    constraints: list[LinearConstraint] = []
    taken = set(doc.rows)
    for row, sense in doc.rows.items():
        rhs = doc.rhs.get(row, 0.0)
        if row not in doc.ranges or (sense is ConstraintSense.EQ and doc.ranges[row] == 0.0):
            constraints.append(LinearConstraint(row, coefs[row], sense, rhs))
            continue
        r = doc.ranges[row]
        if sense is ConstraintSense.GEQ:
            lo, hi = rhs, rhs + abs(r)
        elif sense is ConstraintSense.LEQ:
            lo, hi = rhs - abs(r), rhs
        elif r > 0:
            lo, hi = rhs, rhs + r
        else:
            lo, hi = rhs + r, rhs
        extra = unique_name(f"{row}_rng", taken)
        taken.add(extra)
        if sense is ConstraintSense.LEQ or (sense is ConstraintSense.EQ and r < 0):
            constraints.append(LinearConstraint(row, coefs[row], ConstraintSense.LEQ, hi))
            constraints.append(LinearConstraint(extra, coefs[row], ConstraintSense.GEQ, lo))
        else:
            constraints.append(LinearConstraint(row, coefs[row], ConstraintSense.GEQ, lo))
            constraints.append(LinearConstraint(extra, coefs[row], ConstraintSense.LEQ, hi))

    constant = -doc.rhs.get(doc.objective_row, 0.0) if doc.objective_row else 0.0
    lp = LinearProgram(doc.objsense, objective, variables, constraints, constant)
    problems = validate(lp)
    if problems:
        first = problems[0]
        line = 0
        if first.location.startswith("variable "):
            line = doc.bound_lines.get(first.location[len("variable ") :].strip("'\""), 0)
        raise MpsParseError(line, str(first))
    return lp


def parse_mps(text: str | bytes) -> LinearProgram:
    """Parse free-format MPS text into a validated :class:`LinearProgram`."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MpsParseError(0, f"input is not UTF-8: {exc}") from None
    return to_lp(tokenize(text))


def _fmt(value: float) -> str:
    return format(value, ".17g")


def write_mps(lp: LinearProgram, name: str = "DUALKIT") -> str:
    """Emit ``lp`` as free-format MPS; :func:`parse_mps` inverts it exactly."""
    obj = unique_name("OBJ", set(lp.constraint_names))
    out = [f"NAME {name}"]
    if lp.objective_sense is ObjectiveSense.MAXIMIZE:
        out += ["OBJSENSE", "    MAX"]
    out.append("ROWS")
    out.append(f" N {obj}")
    for con in lp.constraints:
        out.append(f" {_SENSE_CODES[con.sense]} {con.name}")

    out.append("COLUMNS")
    by_column: dict[str, list[tuple[str, float]]] = {v.name: [] for v in lp.variables}
    for var, coef in lp.objective.items():
        by_column[var].append((obj, coef))
    for con in lp.constraints:
        for var, coef in con.coefficients.items():
            by_column[var].append((con.name, coef))
    for var in lp.variables:
        entries = by_column[var.name] or [(obj, 0.0)]  # keeps empty columns declared
        for row, coef in entries:
            out.append(f"    {var.name} {row} {_fmt(coef)}")

    out.append("RHS")
    if lp.objective_constant != 0.0:
        out.append(f"    RHS {obj} {_fmt(-lp.objective_constant)}")
    for con in lp.constraints:
        if con.rhs != 0.0:
            out.append(f"    RHS {con.name} {_fmt(con.rhs)}")

    bounds: list[str] = []
    for v in lp.variables:
        lo, up = v.lower, v.upper
        if lo == up:
            bounds.append(f" FX BND {v.name} {_fmt(lo)}")
            continue
        if lo == -math.inf and up == math.inf:
            bounds.append(f" FR BND {v.name}")
            continue
        if lo == -math.inf:
            bounds.append(f" MI BND {v.name}")
        elif lo != 0.0:
            bounds.append(f" LO BND {v.name} {_fmt(lo)}")
        if up != math.inf:
            bounds.append(f" UP BND {v.name} {_fmt(up)}")
    if bounds:
        out.append("BOUNDS")
        out += bounds
    out.append("ENDATA")
    return "\n".join(out) + "\n"
