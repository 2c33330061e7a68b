"""Batch scoring of candidate duals against a generated dataset.

A report holds one row per scored candidate and aggregate accuracies: the
fraction of rows with CGED (or NGED) distance zero and the fraction with a
matching optimal value. :func:`aggregate` recomputes the aggregates from rows.
"""

from __future__ import annotations

import json
from pathlib import Path

from dualkit.io import ParseError, read_lp
from dualkit.metrics import UNDECIDED, verdict
from dualkit.tolerance import is_zero

REPORT_VERSION = "dualkit-report/1"


def _is_zero_distance(value) -> bool:
    return not isinstance(value, str) and value is not None and is_zero(value)


def aggregate(rows: list[dict]) -> dict:
    n = len(rows)

    def frac(hits: int) -> float:
        return hits / n if n else 0.0

    return {
        "count": n,
        "cged_accuracy": frac(sum(_is_zero_distance(r.get("cged")) for r in rows)),
        "nged_accuracy": frac(sum(_is_zero_distance(r.get("nged")) for r in rows)),
        "obj_accuracy": frac(sum(r.get("obj_match") is True for r in rows)),
        "parse_failures": sum("parse_error" in r for r in rows),
        "solve_failures": sum(r.get("obj_match") == UNDECIDED for r in rows),
        "ged_undecided": sum(r.get("cged") == UNDECIDED for r in rows),
    }


def score(sample_id: str, candidate_path: Path, truth_path: Path, label: str | None = None) -> dict:
    row = {"id": sample_id, "candidate": str(candidate_path)}
    if label is not None:
        row["label"] = label
    truth = read_lp(truth_path)
    try:
        candidate = read_lp(candidate_path)
    except (*ParseError, OSError, ValueError, UnicodeDecodeError) as exc:
        row.update(parse_error=str(exc), equivalent=False)
        return row
    body = verdict(candidate, truth).to_dict()
    body.pop("edit_path")
    row.update(body)
    return row


def _candidate_file(directory: Path, sample_id: str) -> Path:
    for suffix in (".mps", ".json"):
        path = directory / f"{sample_id}{suffix}"
        if path.exists():
            return path
    return directory / f"{sample_id}.mps"  # missing: scored as a parse failure


def build_report(dataset: str | Path, candidates: str | Path | None = None) -> dict:
    """Score ``<candidates>/<id>.{mps,json}`` for every sample, or every injected error file if omitted."""
    dataset = Path(dataset)
    manifest = json.loads((dataset / "manifest.json").read_text(encoding="utf-8"))
    rows = []
    for sample in sorted(manifest["samples"], key=lambda s: s["id"]):
        sid = sample["id"]
        truth = dataset / sid / "dual.mps"
        if candidates is not None:
            rows.append(score(sid, _candidate_file(Path(candidates), sid), truth))
        else:
            for err in sample["errors"]:
                path = dataset / sid / "errors" / f"{err['error_type']}.mps"
                rows.append(score(sid, path, truth, err["error_type"]))
    return {"version": REPORT_VERSION, "dataset": str(dataset), "rows": rows, "aggregate": aggregate(rows)}
