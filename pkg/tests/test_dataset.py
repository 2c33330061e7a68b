import json

import pytest

from dualkit.dataset import (
    MANIFEST_VERSION,
    DatasetConfig,
    Source,
    gen_dataset,
    ingest,
    make_sample,
    sample_seed,
    write_dataset,
)
from dualkit.injector import ErrorType
from dualkit.io import read_lp
from dualkit.jsonio import parse_json, write_json
from dualkit.lp import LinearProgram, Variable
from dualkit.metrics import cged
from dualkit.mps import write_mps
from dualkit.report import aggregate, build_report

SMALL = DatasetConfig(two_d=False, co_per_family=1, seed=3)


def tree(root):
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def test_layout_and_manifest(tmp_path):
    out = tmp_path / "ds"
    samples = gen_dataset(SMALL)
    write_dataset(samples, out, SMALL)
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["version"] == MANIFEST_VERSION and manifest["count"] == len(samples) == 7
    assert manifest["config"] == SMALL.to_dict()
    for row in manifest["samples"]:
        base = out / row["id"]
        primal, dual = read_lp(base / "primal.mps"), read_lp(base / "dual.mps")
        assert len(primal.variables) == row["variables"] and row["primal_status"] == "optimal"
        assert len(dual.constraints) == len(primal.variables)
        done = {e["error_type"] for e in row["errors"]} | {e["error_type"] for e in row["skipped_errors"]}
        assert done == {e.value for e in ErrorType}
        for err in row["errors"]:
            record = json.loads((base / "errors" / f"{err['error_type']}.json").read_text())
            mutated = read_lp(base / "errors" / f"{err['error_type']}.mps")
            assert parse_json(json.dumps(record["mutated_dual"])) == mutated
            assert record["seed"] == sample_seed(3, row["id"], ErrorType(err["error_type"]))
            assert cged(mutated, dual)[0] > 0


def test_files_round_trip_the_samples(tmp_path):
    samples = gen_dataset(SMALL)
    write_dataset(samples, tmp_path / "ds")
    for s in samples:
        assert read_lp(tmp_path / "ds" / s.id / "dual.mps") == s.dual


def test_deterministic_bytes(tmp_path):
    write_dataset(gen_dataset(SMALL), tmp_path / "a", SMALL)
    write_dataset(gen_dataset(SMALL), tmp_path / "b", SMALL)
    assert tree(tmp_path / "a") == tree(tmp_path / "b")


def test_refuses_non_empty_output(tmp_path):
    out = tmp_path / "ds"
    out.mkdir()
    (out / "keep.txt").write_text("x")
    with pytest.raises(FileExistsError):
        write_dataset(gen_dataset(SMALL), out)
    assert (out / "keep.txt").exists()
    write_dataset(gen_dataset(SMALL), out, overwrite=True)
    assert not (out / "keep.txt").exists()
    assert [p.name for p in tmp_path.iterdir()] == ["ds"]  # no temp directory left behind


def test_failed_write_leaves_nothing(tmp_path, monkeypatch):
    import dualkit.dataset as dataset

    def boom(*args, **kwargs):
        raise RuntimeError("disk full")

    monkeypatch.setattr(dataset, "_json", boom)
    with pytest.raises(RuntimeError):
        write_dataset(gen_dataset(SMALL), tmp_path / "ds", SMALL)
    assert list(tmp_path.iterdir()) == []


def test_ingest_skips_unparseable_and_flags_unbounded(tmp_path):
    good = tmp_path / "ray.json"
    good.write_text(write_json(LinearProgram("min", {"x": -1}, [Variable("x")])))
    bad = tmp_path / "broken.mps"
    bad.write_text("NAME x\nROWS\n Q bad\n")
    samples, skipped = ingest([good, bad], error_types=tuple(ErrorType))
    assert [s.id for s in samples] == ["imp-ray"]
    assert samples[0].primal_status.value == "unbounded"
    assert samples[0].source is Source.IMPORTED
    assert skipped[0][0] == str(bad) and "line 3" in skipped[0][1]
    with pytest.raises(ValueError):
        gen_dataset(DatasetConfig(two_d=False, co_per_family=0, imports=(str(bad),)))


def test_config_parsing():
    assert DatasetConfig.from_dict({}) == DatasetConfig()
    cfg = DatasetConfig.from_dict({"error_types": ["missing_variable"], "two_d": False})
    assert cfg.error_types == (ErrorType.MISSING_VARIABLE,)
    with pytest.raises(ValueError):
        DatasetConfig.from_dict({"colour": 1})


def test_report_on_injected_errors(tmp_path):
    write_dataset(gen_dataset(SMALL), tmp_path / "ds", SMALL)
    report = build_report(tmp_path / "ds")
    agg = report["aggregate"]
    assert agg == aggregate(report["rows"])
    assert agg["count"] > 20 and agg["cged_accuracy"] == 0.0 and agg["parse_failures"] == 0
    assert all(row["equivalent"] is False for row in report["rows"])


def test_report_on_candidate_directory(tmp_path):
    samples = gen_dataset(SMALL)
    write_dataset(samples, tmp_path / "ds", SMALL)
    cands = tmp_path / "cands"
    cands.mkdir()
    # perfect answers, one unreadable file and one missing file
    for s in samples[:-2]:
        (cands / f"{s.id}.mps").write_text(write_mps(s.dual))
    (cands / f"{samples[-2].id}.json").write_text("{not json")
    report = build_report(tmp_path / "ds", cands)
    agg = report["aggregate"]
    assert agg["count"] == 7 and agg["parse_failures"] == 2
    assert agg["cged_accuracy"] == pytest.approx(5 / 7) and agg["obj_accuracy"] == pytest.approx(5 / 7)


def test_sample_without_errors():
    s = make_sample("one", Source.TWO_D, LinearProgram("max", {"x": 1}, [Variable("x", 0, 1)]))
    assert s.erroneous_duals == () and s.primal_status.value == "optimal"
