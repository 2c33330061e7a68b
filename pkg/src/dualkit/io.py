"""Format detection and atomic file output."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from dualkit.jsonio import LpSchemaError, parse_json, write_json
from dualkit.lp import LinearProgram
from dualkit.mps import MpsParseError, parse_mps, write_mps

FORMATS = ("mps", "json")
ParseError = (MpsParseError, LpSchemaError)


def detect_format(path: str | os.PathLike, override: str | None = None) -> str:
    if override:
        if override not in FORMATS:
            raise ValueError(f"unknown format {override!r}")
        return override
    suffix = Path(path).suffix.lower().lstrip(".")
    if suffix not in FORMATS:
        raise ValueError(f"cannot infer format from {str(path)!r}; use --format")
    return suffix


def loads(text: str, fmt: str) -> LinearProgram:
    return parse_mps(text) if fmt == "mps" else parse_json(text)


def dumps(lp: LinearProgram, fmt: str) -> str:
    return write_mps(lp) if fmt == "mps" else write_json(lp)


def read_lp(path: str | os.PathLike, fmt: str | None = None) -> LinearProgram:
    fmt = detect_format(path, fmt)
    return loads(Path(path).read_text(encoding="utf-8"), fmt)


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_lp(lp: LinearProgram, path: str | os.PathLike, fmt: str | None = None) -> None:
    atomic_write(path, dumps(lp, detect_format(path, fmt)))
