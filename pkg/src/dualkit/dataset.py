"""Dataset assembly: primals, ground-truth duals and labelled erroneous duals.

On-disk layout written by :func:`write_dataset`::

    <out>/manifest.json
    <out>/<id>/primal.mps
    <out>/<id>/dual.mps
    <out>/<id>/errors/<error_type>.mps
    <out>/<id>/errors/<error_type>.json

Each ``errors/*.json`` record holds ``primal``, ``truth_dual`` and
``mutated_dual`` as ``dualkit-lp/1`` documents, plus ``error_type``,
``location``, ``seed``, ``attempts`` and ``rng``.
"""

from __future__ import annotations

import json
import os
import shutil
import tempfile
import zlib
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from dualkit.dualizer import dualize_checked
from dualkit.generators import all_2d, co_suite
from dualkit.injector import RNG_ALGORITHM, ErrorType, InjectionError, InjectionRecord, inject
from dualkit.io import ParseError, read_lp
from dualkit.jsonio import lp_to_dict
from dualkit.lp import LinearProgram
from dualkit.mps import write_mps
from dualkit.simplex import SolveStatus, solve

MANIFEST_VERSION = "dualkit-dataset/1"


class Source(str, Enum):
    TWO_D = "2d"
    CO_SMALL = "co_small"
    IMPORTED = "imported"


@dataclass(frozen=True)
class DatasetSample:
    id: str
    source: Source
    primal: LinearProgram
    dual: LinearProgram
    erroneous_duals: tuple[InjectionRecord, ...] = ()
    primal_status: SolveStatus = SolveStatus.OPTIMAL
    skipped_errors: tuple[tuple[str, str], ...] = ()  # (error type, reason)


@dataclass(frozen=True)
class DatasetConfig:
    two_d: bool = True
    co_per_family: int = 20
    seed: int = 0
    error_types: tuple[ErrorType, ...] = tuple(ErrorType)
    imports: tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def from_dict(cls, data: dict) -> DatasetConfig:
        unknown = set(data) - {"two_d", "co_per_family", "seed", "error_types", "imports"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        errors = data.get("error_types", "all")
        types = tuple(ErrorType) if errors == "all" else tuple(ErrorType(e) for e in errors)
        return cls(
            two_d=bool(data.get("two_d", True)),
            co_per_family=int(data.get("co_per_family", 20)),
            seed=int(data.get("seed", 0)),
            error_types=types,
            imports=tuple(data.get("imports", ())),
        )

    def to_dict(self) -> dict:
        return {
            "two_d": self.two_d,
            "co_per_family": self.co_per_family,
            "seed": self.seed,
            "error_types": [e.value for e in self.error_types],
            "imports": list(self.imports),
        }


def sample_seed(base: int, sample_id: str, etype: ErrorType) -> int:
    """Stable per-sample injection seed (CRC-32 of the seed, id and error type)."""
    return zlib.crc32(f"{base}:{sample_id}:{etype.value}".encode())


def make_sample(sample_id: str, source: Source, primal: LinearProgram, error_types=(), seed: int = 0) -> DatasetSample:
    dual = dualize_checked(primal).dual
    records, skipped = [], []
    for etype in error_types:
        try:
            records.append(inject(dual, etype, sample_seed(seed, sample_id, etype)))
        except InjectionError as exc:
            skipped.append((etype.value, str(exc)))
    return DatasetSample(sample_id, source, primal, dual, tuple(records), solve(primal).status, tuple(skipped))


def ingest(paths, source_tag: Source | str = Source.IMPORTED, error_types=(), seed: int = 0):
    """Wrap already-formulated LP files as samples; returns (samples, [(path, reason), ...])."""
    samples, skipped = [], []
    for path in paths:
        try:
            primal = read_lp(path)
        except (*ParseError, OSError, ValueError) as exc:
            skipped.append((str(path), str(exc)))
            continue
        sample_id = f"imp-{Path(path).stem}"
        samples.append(make_sample(sample_id, Source(source_tag), primal, error_types, seed))
    return samples, skipped


def gen_dataset(config: DatasetConfig) -> list[DatasetSample]:
    samples = []
    if config.two_d:
        samples += [make_sample(i, Source.TWO_D, lp, config.error_types, config.seed) for i, lp in all_2d()]
    if config.co_per_family:
        samples += [
            make_sample(i, Source.CO_SMALL, lp, config.error_types, config.seed)
            for i, lp in co_suite(config.co_per_family, config.seed)
        ]
    if config.imports:
        imported, skipped = ingest(config.imports, Source.IMPORTED, config.error_types, config.seed)
        if skipped:
            raise ValueError("; ".join(f"{p}: {why}" for p, why in skipped))
        samples += imported
    ids = [s.id for s in samples]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate sample ids")
    return samples


def _json(data) -> str:
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def _record(sample: DatasetSample, rec: InjectionRecord) -> dict:
    return {
        "primal": lp_to_dict(sample.primal),
        "truth_dual": lp_to_dict(sample.dual),
        "mutated_dual": lp_to_dict(rec.mutated),
        "error_type": rec.error.value,
        "location": rec.location,
        "seed": rec.seed,
        "attempts": rec.attempts,
        "rng": RNG_ALGORITHM,
    }


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def write_dataset(samples: list[DatasetSample], out: str | os.PathLike, config: DatasetConfig | None = None,
                  overwrite: bool = False) -> None:
    """Write the whole tree into a temporary sibling directory, then rename it into place."""
    out = Path(out)
    if out.exists() and any(out.iterdir()) and not overwrite:
        raise FileExistsError(f"{out} exists and is not empty")
    out.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=f".{out.name}.", dir=out.parent))
    os.chmod(tmp, 0o755)
    try:
        rows = []
        for s in samples:
            base = tmp / s.id
            _write(base / "primal.mps", write_mps(s.primal, s.id))
            _write(base / "dual.mps", write_mps(s.dual, f"{s.id}-dual"))
            for rec in s.erroneous_duals:
                _write(base / "errors" / f"{rec.error.value}.mps", write_mps(rec.mutated, f"{s.id}-{rec.error.value}"))
                _write(base / "errors" / f"{rec.error.value}.json", _json(_record(s, rec)))
            rows.append({
                "id": s.id,
                "source": s.source.value,
                "variables": len(s.primal.variables),
                "constraints": len(s.primal.constraints),
                "primal_status": s.primal_status.value,
                "errors": [
                    {"error_type": r.error.value, "location": r.location, "seed": r.seed, "attempts": r.attempts}
                    for r in s.erroneous_duals
                ],
                "skipped_errors": [{"error_type": e, "reason": why} for e, why in s.skipped_errors],
            })
        manifest = {
            "version": MANIFEST_VERSION,
            "rng": RNG_ALGORITHM,
            "config": None if config is None else config.to_dict(),
            "count": len(samples),
            "samples": rows,
        }
        _write(tmp / "manifest.json", _json(manifest))
        if out.exists():
            shutil.rmtree(out)
        os.replace(tmp, out)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
