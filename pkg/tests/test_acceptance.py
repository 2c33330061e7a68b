"""Acceptance criteria 1-10, one test each; every test also enforces its runtime budget."""

import random
import time
import zlib
from collections import Counter

import pytest
from hypothesis import HealthCheck, given, settings

import worked
from dualkit import cli
from dualkit.canonical import eliminate_slacks
from dualkit.dualizer import DualizationMethod, dualize
from dualkit.generators import all_2d, co_suite
from dualkit.ged import ged, ged_brute_force
from dualkit.injector import ErrorType, inject
from dualkit.jsonio import parse_json, write_json
from dualkit.lp import (
    ConstraintSense,
    flip_constraint,
    introduce_slack,
    negate_objective,
    negate_variable,
    permute,
)
from dualkit.metrics import cged, cged_is_zero, nged, obj_match, verdict
from dualkit.mps import MpsParseError, parse_mps, write_mps
from dualkit.simplex import SolveStatus, solve, solve_by_vertex_enumeration
from oracles import brute_force_ged
from strategies import graph_corpus, lps, mps_fuzz_inputs, random_small_lp


class Clock:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def seconds(self) -> float:
        return time.perf_counter() - self.start


@pytest.mark.criterion(1)
def test_golden_pairs(acceptance):
    clock = Clock()
    pairs = [
        (worked.production_dual_slacked(), worked.production_dual()),
        (worked.slack_left(), worked.slack_right()),
        (worked.sign_left(), worked.sign_right()),
        (worked.box_left(), worked.box_right()),
    ]
    distances = [cged(a, b)[0] for a, b in pairs]
    spread = nged(*pairs[0])
    ok = distances == [0.0] * 4 and spread > 0 and clock.seconds < 1
    assert acceptance(ok, f"cged={distances} nged(model pair)={spread:.3f} in {clock.seconds:.2f}s")


@pytest.mark.criterion(2)
def test_slack_elimination_exact(acceptance):
    clock = Clock()
    same = eliminate_slacks(worked.slack_left()) == worked.slack_right()
    ok = same and clock.seconds < 1
    assert acceptance(ok, f"field-level equality={same} in {clock.seconds:.3f}s")


@pytest.mark.criterion(3)
def test_dualization_at_scale(acceptance):
    clock = Clock()
    two_d, co = all_2d(), co_suite(20)
    methods_agree = strong = involution = bounded = 0
    for _, primal in two_d + co:
        sf = dualize(primal, DualizationMethod.STANDARD_FORM).dual
        sob = dualize(primal, DualizationMethod.SOB).dual
        methods_agree += cged(sf, sob)[0] == 0
        p, d = solve(primal), solve(sf)
        if p.status is SolveStatus.OPTIMAL:
            bounded += 1
            strong += d.optimal and abs(p.value - d.value) <= 1e-6 * max(1.0, abs(p.value))
        involution += cged(dualize(sf).dual, primal)[0] == 0
    total = len(two_d) + len(co)
    ok = (
        len(two_d) == 108 and len(co) >= 140
        and methods_agree == total and strong == bounded and involution == total
        and clock.seconds < 120
    )
    assert acceptance(
        ok,
        f"{len(two_d)} 2D + {len(co)} CO: SF~SOB {methods_agree}/{total}, strong duality {strong}/{bounded}, "
        f"involution {involution}/{total} in {clock.seconds:.1f}s",
    )


def _rewrite(lp, kind: int, rng: random.Random):
    if kind == 0:
        return negate_objective(lp)
    if kind == 1:
        return flip_constraint(lp, rng.choice(lp.constraint_names))
    if kind == 2:
        vs, cs = lp.variable_names, lp.constraint_names
        rng.shuffle(vs)
        rng.shuffle(cs)
        return permute(lp, vs, cs)
    if kind == 3:
        rows = [c.name for c in lp.constraints if c.sense is not ConstraintSense.EQ]
        return introduce_slack(lp, rng.choice(rows))
    return negate_variable(lp, rng.choice(lp.variable_names))


@pytest.mark.criterion(4)
def test_symmetry_invariance(acceptance):
    clock = Clock()
    rng = random.Random(7)
    suite = all_2d()
    kinds, failures = Counter(), 0
    for i in range(1000):
        _, primal = suite[i % len(suite)]
        base = primal if i % 2 == 0 else dualize(primal).dual
        kind = i % 5
        kinds[kind] += 1
        failures += cged(base, _rewrite(base, kind, rng))[0] != 0
    ok = failures == 0 and sum(kinds.values()) == 1000 and clock.seconds < 120
    assert acceptance(ok, f"1000 rewrites ({dict(sorted(kinds.items()))}), {failures} nonzero in {clock.seconds:.1f}s")


@pytest.mark.criterion(5)
def test_error_detectability(acceptance):
    clock = Clock()
    mutations = detected = 0
    for name, primal in all_2d():
        truth = dualize(primal).dual
        for etype in ErrorType:
            rec = inject(truth, etype, zlib.crc32(f"{name}:{etype.value}".encode()))
            mutations += 1
            v = verdict(rec.mutated, truth)
            detected += isinstance(v.cged, float) and v.cged > 0 and v.equivalent is False
    ok = mutations == 540 and detected == mutations and clock.seconds < 300
    assert acceptance(ok, f"{detected}/{mutations} mutations detected in {clock.seconds:.1f}s")


@pytest.mark.criterion(6)
def test_obj_false_positive(acceptance):
    clock = Clock()
    suite = all_2d()
    bounded = matched = positive = 0
    for _, primal in suite:
        truth = dualize(primal).dual
        if solve(primal).status is SolveStatus.OPTIMAL:
            bounded += 1
            matched += obj_match(primal, truth)[0] is True
        # no instance is exempted as self-dual; positivity is decided exactly without the full distance
        positive += not cged_is_zero(primal, truth)
    rate = matched / bounded
    ok = rate >= 0.95 and positive == len(suite) and clock.seconds < 120
    assert acceptance(
        ok, f"echoed primal: obj_match {matched}/{bounded} ({rate:.1%}), cged>0 {positive}/{len(suite)} "
            f"in {clock.seconds:.1f}s",
    )


def _same(a, b) -> bool:
    if a.status is not b.status:
        return False
    if a.status is SolveStatus.OPTIMAL:
        return abs(a.value - b.value) <= 1e-6 * max(1.0, abs(a.value))
    return True


@pytest.mark.criterion(7)
def test_solver_oracle_agreement(acceptance):
    clock = Clock()
    rng = random.Random(11)
    cases = [lp for _, lp in all_2d()] + [random_small_lp(rng, max_vars=3, max_cons=4) for _ in range(1000)]
    statuses = Counter()
    agree = 0
    for lp in cases:
        ours, oracle = solve(lp), solve_by_vertex_enumeration(lp)
        statuses[oracle.status.value] += 1
        agree += _same(ours, oracle)
    ok = agree == len(cases) and clock.seconds < 120
    assert acceptance(ok, f"{agree}/{len(cases)} agree (oracle statuses {dict(statuses)}) in {clock.seconds:.1f}s")


@pytest.mark.criterion(8)
def test_ged_exactness(acceptance):
    clock = Clock()
    pairs = graph_corpus(random.Random(8), 500, max_side=4)
    assert all(len(g.var_nodes) <= 4 and len(g.con_nodes) <= 4 for pair in pairs for g in pair)
    exact = 0
    for a, b in pairs:
        expected = brute_force_ged(a, b)
        exact += ged(a, b).total == expected == ged_brute_force(a, b)
    ok = len(pairs) == 500 and exact == 500 and clock.seconds < 120
    assert acceptance(ok, f"{exact}/{len(pairs)} pairs equal the brute-force minimum in {clock.seconds:.1f}s")


@pytest.mark.criterion(9)
def test_io_round_trips_and_fuzz(acceptance):
    clock = Clock()
    counts = Counter()

    @settings(max_examples=2000, deadline=None, database=None, suppress_health_check=list(HealthCheck))
    @given(lps())
    def roundtrip(lp):
        counts["generated"] += 1
        counts["mps"] += parse_mps(write_mps(lp)) == lp
        counts["json"] += parse_json(write_json(lp)) == lp

    roundtrip()
    seeds = [write_mps(lp) for _, lp in all_2d()[:20] + co_suite(2)]
    crashes = rejected = 0
    for text in mps_fuzz_inputs(random.Random(0), seeds, 10**6):
        try:
            parse_mps(text)
        except MpsParseError:
            rejected += 1
        except Exception:  # noqa: BLE001 - any other exception is a crash
            crashes += 1
    n = counts["generated"]
    ok = n >= 2000 and counts["mps"] == counts["json"] == n and crashes == 0 and clock.seconds < 300
    assert acceptance(
        ok, f"round trips mps {counts['mps']}/{n} json {counts['json']}/{n}; fuzz 10^6 inputs, "
            f"{rejected} rejected, {crashes} crashes in {clock.seconds:.1f}s",
    )


@pytest.mark.criterion(10)
def test_dataset_determinism(acceptance, tmp_path, capsys):
    clock = Clock()
    trees = []
    for run in ("a", "b"):
        out = tmp_path / run
        assert cli.main(["gen", "--out", str(out)]) == 0
        trees.append({str(p.relative_to(out)): p.read_bytes() for p in sorted(out.rglob("*")) if p.is_file()})
    capsys.readouterr()
    same = trees[0] == trees[1]
    ok = same and len(trees[0]) > 248
    assert acceptance(ok, f"two default gen runs, {len(trees[0])} files, byte-identical={same} in {clock.seconds:.1f}s")
