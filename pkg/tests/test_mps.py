import math
import random
import tempfile
from pathlib import Path

import pytest
from hypothesis import given, settings

import worked
from dualkit.generators import all_2d, co_suite
from dualkit.lp import ConstraintSense, LinearProgram, Variable
from dualkit.mps import MpsParseError, parse_mps, write_mps
from strategies import lps

INF = math.inf

SLACK_RIGHT_MPS = """\
NAME slack
ROWS
 N obj
 G c1
COLUMNS
    x1 obj 1 c1 1
    x2 obj 1 c1 1
RHS
    RHS c1 1
ENDATA
"""


def highs_view(text: str):
    """Read MPS text with HiGHS and return (sense, offset, col bounds, row intervals, entries)."""
    highspy = pytest.importorskip("highspy")
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "m.mps"
        path.write_text(text)
        assert h.readModel(str(path)) in (highspy.HighsStatus.kOk, highspy.HighsStatus.kWarning)
    lp = h.getLp()
    cols, rows = list(lp.col_names_), list(lp.row_names_)
    a = lp.a_matrix_
    entries = {}
    for j in range(lp.num_col_):
        for k in range(a.start_[j], a.start_[j + 1]):
            entries[(rows[a.index_[k]], cols[j])] = a.value_[k]
    return (
        "max" if lp.sense_ == highspy.ObjSense.kMaximize else "min",
        lp.offset_,
        {c: (lp.col_lower_[j], lp.col_upper_[j], lp.col_cost_[j]) for j, c in enumerate(cols)},
        {r: (lp.row_lower_[i], lp.row_upper_[i]) for i, r in enumerate(rows)},
        entries,
    )


def our_view(lp: LinearProgram):
    intervals = {
        ConstraintSense.LEQ: lambda b: (-INF, b),
        ConstraintSense.GEQ: lambda b: (b, INF),
        ConstraintSense.EQ: lambda b: (b, b),
    }
    return (
        lp.objective_sense.value,
        lp.objective_constant,
        {v.name: (v.lower, v.upper, lp.objective.get(v.name, 0.0)) for v in lp.variables},
        {c.name: intervals[c.sense](c.rhs) for c in lp.constraints},
        {(c.name, x): a for c in lp.constraints for x, a in c.coefficients.items()},
    )


def test_parse_slack_example():
    lp = parse_mps(SLACK_RIGHT_MPS)
    assert lp == worked.slack_right()
    assert [(c.sense, c.rhs) for c in lp.constraints] == [(ConstraintSense.GEQ, 1.0)]


def test_free_variable_and_empty_rhs():
    lp = parse_mps("NAME t\nROWS\n N obj\n E c\nCOLUMNS\n    x c 1\nRHS\nBOUNDS\n FR BND x\nENDATA\n")
    assert lp.variables == (Variable("x", -INF, INF),)
    assert lp.constraints[0].rhs == 0.0


def test_up_without_lo_matches_highs():
    text = "NAME t\nROWS\n N obj\n L c\nCOLUMNS\n    x obj 1 c 1\nRHS\n    RHS c 5\nBOUNDS\n UP BND x 2.0\nENDATA\n"
    lp = parse_mps(text)
    assert lp.variable("x") == Variable("x", 0, 2)
    assert our_view(lp) == highs_view(text)


def test_negative_up_without_lo_frees_lower_side():
    # solvers disagree here (HiGHS keeps 0 and warns); the writer never relies on it
    text = "NAME t\nROWS\n N obj\nCOLUMNS\n    x obj 1\nBOUNDS\n UP BND x -3\nENDATA\n"
    assert parse_mps(text).variable("x") == Variable("x", -INF, -3)
    assert " MI BND x\n" in write_mps(parse_mps(text))


def test_ranges_expansion_matches_highs():
    text = (
        "NAME t\nROWS\n N obj\n L a\n G b\n E c\n E d\nCOLUMNS\n    x obj 1 a 1\n    x b 1 c 1\n    x d 1\n"
        "RHS\n    RHS a 4 b 1\n    RHS c 2 d 2\nRANGES\n    RNG a 3 b -2\n    RNG c 5 d -5\nENDATA\n"
    )
    lp = parse_mps(text)
    highs_rows = highs_view(text)[3]
    ours: dict[str, list[float]] = {}
    for con in lp.constraints:
        base = con.name.removesuffix("_rng")
        lo, hi = ours.setdefault(base, [-INF, INF])
        ours[base] = [max(lo, con.rhs), hi] if con.sense is ConstraintSense.GEQ else [lo, min(hi, con.rhs)]
    assert {k: tuple(v) for k, v in ours.items()} == highs_rows
    assert len(lp.constraints) == 8


@pytest.mark.parametrize("sid", range(0, 248, 7))
def test_generator_files_match_highs(sid):
    _, lp = (all_2d() + co_suite())[sid]
    text = write_mps(lp)
    assert our_view(parse_mps(text)) == highs_view(text)


@settings(max_examples=300, deadline=None)
@given(lps())
def test_roundtrip_identity(lp):
    assert parse_mps(write_mps(lp)) == lp


@settings(max_examples=100, deadline=None)
@given(lps(max_vars=4, max_cons=4))
def test_written_files_match_highs(lp):
    text = write_mps(lp)
    assert our_view(parse_mps(text)) == highs_view(text)


def test_writer_emits_bounds_and_objsense():
    lp = LinearProgram("max", {"x": 1}, [Variable("x", 1, 2)])
    text = write_mps(lp)
    assert " LO BND x 1\n" in text and " UP BND x 2\n" in text
    assert "OBJSENSE\n    MAX\n" in text
    assert parse_mps(write_mps(worked.sign_left())) == worked.sign_left()


def test_numbers_keep_17_digits():
    lp = LinearProgram("min", {"x": 0.1 + 0.2}, [Variable("x")])
    assert parse_mps(write_mps(lp)).objective["x"] == 0.1 + 0.2


def test_comments_and_missing_objsense():
    text = "* header\nNAME t\nROWS\n N obj\nCOLUMNS\n* note\n    x obj -1\nENDATA\n"
    lp = parse_mps(text)
    assert lp.objective_sense.value == "min" and lp.objective == {"x": -1.0}


@pytest.mark.parametrize(
    "text, line",
    [
        ("NAME t\nCOLUMNS\n    x obj 1\nROWS\n N obj\nENDATA\n", 2),  # section order
        ("NAME t\nROWS\n N obj\nCOLUMNS\n    x zz 1\nENDATA\n", 5),  # unknown row
        ("NAME t\nROWS\n N obj\nCOLUMNS\n    x obj 1\nBOUNDS\n UP BND x 1\n UP BND x 2\nENDATA\n", 8),
        ("NAME t\nROWS\n N obj\nCOLUMNS\n    x obj abc\nENDATA\n", 5),  # non-numeric
        ("NAME t\nROWS\n N obj\nCOLUMNS\n    x obj 1\n", 6),  # missing ENDATA
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(MpsParseError) as info:
        parse_mps(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_fuzz_smoke():
    rng = random.Random(5)
    seed = write_mps(worked.production_primal()).encode()
    for _ in range(3000):
        data = bytearray(seed)
        for _ in range(rng.randint(1, 6)):
            data[rng.randrange(len(data))] = rng.randrange(256)
        try:
            parse_mps(bytes(data))
        except MpsParseError:
            pass
