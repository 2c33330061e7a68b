"""Command-line interface.

Exit codes:

====  ===================================================
0     success / candidate equivalent
1     candidate not equivalent
2     input could not be parsed (a candidate is scored not equivalent)
3     the two dualization methods disagree (``dualize --method checked``)
4     exact GED budget exceeded and the answer is undecided
5     any other module error
====  ===================================================
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from dualkit.canonical import canonicalize
from dualkit.dataset import DatasetConfig, gen_dataset, write_dataset
from dualkit.dualizer import DualizationMethod, MethodDisagreementError, dualize, dualize_checked
from dualkit.ged import GedBudgetError
from dualkit.injector import ErrorType, InjectionError, inject
from dualkit.io import FORMATS, ParseError, atomic_write, detect_format, dumps, read_lp
from dualkit.lpgraph import CompatSense, GraphMode, build_graph, compat_normalize, export_dot
from dualkit.metrics import UNDECIDED, nged, obj_match, verdict
from dualkit.report import REPORT_VERSION, build_report
from dualkit.simplex import solve

EXIT_OK, EXIT_NOT_EQUIVALENT, EXIT_PARSE, EXIT_DISAGREE, EXIT_BUDGET, EXIT_OTHER = range(6)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str, fmt: str | None):
    try:
        return read_lp(path, fmt)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None
    except (OSError, ValueError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _out_format(args, default: str) -> str:
    if args.out:
        return detect_format(args.out, args.format)
    return args.format or default


def cmd_dualize(args) -> int:
    lp = _read(args.input, args.format)
    if args.method == "checked":
        try:
            report = dualize_checked(lp)
        except MethodDisagreementError as exc:
            raise CliError(EXIT_DISAGREE, str(exc)) from None
    else:
        report = dualize(lp, DualizationMethod(args.method))
    _emit(dumps(report.dual, _out_format(args, detect_format(args.input, args.format))), args.out)
    return EXIT_OK


def _number(x):
    return x if isinstance(x, (str, bool)) or x is None else float(x)


def cmd_check(args) -> int:
    truth = _read(args.truth, args.format)
    try:
        candidate = read_lp(args.candidate, args.format)
    except (*ParseError, OSError, ValueError, UnicodeDecodeError) as exc:
        # an unreadable candidate counts as not equivalent
        report = {"version": REPORT_VERSION, "candidate": args.candidate, "truth": args.truth,
                  "parse_error": str(exc), "equivalent": False}
        _report(args, report, f"parse error: {exc}\nequivalent: false\n")
        return EXIT_PARSE

    if args.metric == "obj":
        match, statuses = obj_match(candidate, truth, args.tol)
        report = {"version": REPORT_VERSION, "candidate": args.candidate, "truth": args.truth, "metric": "obj",
                  "obj_match": match, "statuses": [s.value for s in statuses]}
        _report(args, report, f"obj_match: {match}\nstatuses: {statuses[0].value} {statuses[1].value}\n")
        if match == UNDECIDED:
            return EXIT_OTHER
        return EXIT_OK if match else EXIT_NOT_EQUIVALENT

    if args.metric == "nged":
        try:
            value = nged(candidate, truth, args.compat)
        except GedBudgetError as exc:
            raise CliError(EXIT_BUDGET, str(exc)) from None
        report = {"version": REPORT_VERSION, "candidate": args.candidate, "truth": args.truth, "metric": "nged",
                  "nged": value}
        _report(args, report, f"nged: {value:.10g}\n")
        return EXIT_OK if value == 0 else EXIT_NOT_EQUIVALENT

    v = verdict(candidate, truth)
    body = v.to_dict()
    if args.metric == "cged":
        body = {k: body[k] for k in ("cged", "equivalent", "edit_path")}
    report = {"version": REPORT_VERSION, "candidate": args.candidate, "truth": args.truth,
              "metric": args.metric, **{k: _number(x) if not isinstance(x, (list, dict)) else x
                                        for k, x in body.items()}}
    lines = [f"{k}: {report[k]}" for k in ("cged", "nged", "obj_match", "equivalent") if k in report]
    if v.edit_path is not None and v.edit_path.operations:
        lines.append("edit path:")
        lines += [f"  {op.op} {op.kind} {' '.join(map(str, op.ids))} (cost {op.cost:g})"
                  for op in v.edit_path.operations]
    _report(args, report, "\n".join(lines) + "\n")
    if v.equivalent == UNDECIDED:
        return EXIT_BUDGET
    return EXIT_OK if v.equivalent else EXIT_NOT_EQUIVALENT


def _report(args, report: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2, allow_nan=False) + "\n")
    else:
        sys.stdout.write(text)


def cmd_inject(args) -> int:
    lp = _read(args.input, args.format)
    try:
        record = inject(lp, ErrorType(args.error), args.seed)
    except InjectionError as exc:
        raise CliError(EXIT_OTHER, str(exc)) from None
    _emit(dumps(record.mutated, _out_format(args, detect_format(args.input, args.format))), args.out)
    sys.stderr.write(f"{record.error.value} at {record.location} (seed {record.seed}, attempts {record.attempts})\n")
    return EXIT_OK


def cmd_gen(args) -> int:
    data = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(EXIT_PARSE, f"{args.config}: {exc}") from None
    try:
        config = DatasetConfig.from_dict(data)
    except (ValueError, TypeError) as exc:
        raise CliError(EXIT_PARSE, f"bad config: {exc}") from None
    samples = gen_dataset(config)
    write_dataset(samples, args.out, config, overwrite=args.force)
    sys.stdout.write(f"wrote {len(samples)} samples to {args.out}\n")
    return EXIT_OK


def cmd_report(args) -> int:
    if not (Path(args.dataset) / "manifest.json").is_file():
        raise CliError(EXIT_PARSE, f"{args.dataset}: no manifest.json")
    report = build_report(args.dataset, args.candidates)
    if args.json:
        _emit(json.dumps(report, indent=2, allow_nan=False) + "\n", args.out)
    else:
        agg = report["aggregate"]
        _emit("".join(f"{k}: {v:.6g}\n" if isinstance(v, float) else f"{k}: {v}\n" for k, v in agg.items()), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    result = solve(_read(args.input, args.format))
    value = "" if result.value is None else f" {result.value:.10g}"
    sys.stdout.write(f"{result.status.name}{value}\n")
    return EXIT_OK


def cmd_graph(args) -> int:
    lp = _read(args.input, args.format)
    if args.canonical:
        graph = build_graph(canonicalize(lp).lp, GraphMode.CANONICAL)
    else:
        graph = build_graph(compat_normalize(lp, args.compat), GraphMode.NGED_COMPAT)
    _emit(export_dot(graph), args.dot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualkit", description="LP dualization and equivalence checking")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_format(p):
        p.add_argument("--format", choices=FORMATS, help="override extension-based format detection")
        return p

    p = with_format(sub.add_parser("dualize", help="write the dual of an LP"))
    p.add_argument("input")
    p.add_argument("--method", choices=["sf", "sob", "checked"], default="checked")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dualize)

    p = with_format(sub.add_parser("check", help="compare a candidate LP against a reference"))
    p.add_argument("candidate")
    p.add_argument("truth")
    p.add_argument("--metric", choices=["cged", "nged", "obj", "all"], default="all")
    p.add_argument("--compat", choices=[c.value for c in CompatSense], default="geq")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = with_format(sub.add_parser("inject", help="inject one labelled error"))
    p.add_argument("input")
    p.add_argument("--error", required=True, choices=[e.value for e in ErrorType])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("gen", help="generate a dataset directory")
    p.add_argument("--config", help="JSON config; defaults to all 2D shapes, 20 CO instances per family")
    p.add_argument("--out", required=True)
    p.add_argument("--force", action="store_true", help="replace a non-empty output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("report", help="score candidate duals against a dataset directory")
    p.add_argument("dataset")
    p.add_argument("--candidates", help="directory of <id>.mps/<id>.json duals (default: the injected errors)")
    p.add_argument("--json", action="store_true", help="per-sample rows plus aggregates")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    p = with_format(sub.add_parser("solve", help="solve an LP with the built-in simplex"))
    p.add_argument("input")
    p.set_defaults(func=cmd_solve)

    p = with_format(sub.add_parser("graph", help="export the bipartite graph as DOT"))
    p.add_argument("input")
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--compat", choices=[c.value for c in CompatSense], default="geq")
    p.add_argument("--dot", help="output file (default stdout)")
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"dualkit: {exc}\n")
        return exc.code
    except GedBudgetError as exc:
        sys.stderr.write(f"dualkit: {exc}\n")
        return EXIT_BUDGET
    except Exception as exc:  # noqa: BLE001 - mapped to the documented exit code
        sys.stderr.write(f"dualkit: {type(exc).__name__}: {exc}\n")
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
