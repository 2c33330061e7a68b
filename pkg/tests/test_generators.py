from statistics import mean

import pytest

from dualkit.generators import (
    MAX_ROWS,
    MAX_VARS,
    N_SHAPES,
    OBJECTIVES_2D,
    SIZE_RANGE,
    CoFamily,
    all_2d,
    co_suite,
    gen_2d,
    gen_co,
    independent_set_lp,
    knapsack_lp,
    polygon,
    production_lp,
)
from dualkit.lp import validate
from dualkit.simplex import SolveStatus
from oracles import scipy_solve


def test_2d_suite_shape():
    suite = all_2d()
    assert len(suite) == 108 == N_SHAPES * len(OBJECTIVES_2D)
    assert len({name for name, _ in suite}) == 108
    rows = [len(lp.constraints) for _, lp in suite]
    assert max(rows) <= 12
    assert mean(rows) == pytest.approx(5.7, abs=0.05)  # Table 1, one decimal
    for _, lp in suite:
        assert lp.variable_names == ["x", "y"]
        assert validate(lp) == []


def test_unit_square():
    lp = gen_2d(1, 1)
    assert sorted(polygon(1)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert scipy_solve(lp) == (SolveStatus.OPTIMAL, pytest.approx(2.0))


def test_2d_optimum_is_best_vertex():
    for s in range(1, N_SHAPES + 1):
        pts = polygon(s)
        assert all(x >= 0 and y >= 0 for x, y in pts)
        for o, (cx, cy) in enumerate(OBJECTIVES_2D, start=1):
            status, value = scipy_solve(gen_2d(s, o))
            assert status is SolveStatus.OPTIMAL
            assert value == pytest.approx(max(cx * x + cy * y for x, y in pts), abs=1e-9)


def test_2d_bad_ids():
    with pytest.raises(ValueError):
        gen_2d(1, 4)
    with pytest.raises(ValueError):
        gen_2d(0, 1)


def test_co_suite_envelope():
    suite = co_suite(20)
    assert len(suite) == 140
    for name, lp in suite:
        assert len(lp.variables) <= MAX_VARS and len(lp.constraints) <= MAX_ROWS, name
        assert validate(lp) == []
        assert scipy_solve(lp)[0] is SolveStatus.OPTIMAL, name
    assert mean(len(lp.variables) for _, lp in suite) == pytest.approx(3.9, abs=0.05)
    assert mean(len(lp.constraints) for _, lp in suite) == pytest.approx(3.5, abs=0.05)


def test_small_known_values():
    triangle = independent_set_lp(3, [(0, 1), (0, 2), (1, 2)])
    assert scipy_solve(triangle)[1] == pytest.approx(1.5)
    single = knapsack_lp([3.0], [[1.0]], [1.0])
    assert scipy_solve(single)[1] == pytest.approx(3.0)
    prod = production_lp([5.0, 4.0], [[2.0, 3.0], [1.0, 2.0]], [12.0, 8.0])
    assert [c.name for c in prod.constraints] == ["res0", "res1"]
    assert prod.constraint("res0").coefficients == {"p0": 2.0, "p1": 3.0}


def test_deterministic():
    assert co_suite(5) == co_suite(5)
    assert all_2d() == all_2d()
    assert gen_co("knapsack", 3, 7) == gen_co(CoFamily.KNAPSACK, 3, 7)
    assert co_suite(5, base_seed=1) != co_suite(5)


def test_size_range_enforced():
    for family, sizes in SIZE_RANGE.items():
        with pytest.raises(ValueError):
            gen_co(family, sizes.stop, 0)
