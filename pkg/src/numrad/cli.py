"""Command-line front end.

Exit codes: 0 when everything checked passes, 1 when any check fails,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import json
import sys
from pathlib import Path

from . import __version__
from .ensembles import FAMILIES, EnsembleSpec, generate
from .errors import NumradError, ParseError, ShapeError, UnknownTag, UnsupportedFamilyDim
from .io import (
    certificate_to_dict,
    complex_pair,
    parse_element,
    serialize_element,
    sweep_to_dict,
)
from .numrange import DEFAULT_GRID, crawford, numerical_radius, range_boundary
from .parallelism import norm_parallel, vradius_parallel
from .suite import ALL_TAGS, run_suite


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_element(data)
    except (ParseError, ShapeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _flat_rows(d: dict, prefix: str = "") -> list[tuple[str, object]]:
    rows = []
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            rows += _flat_rows(v, key + ".")
        else:
            rows.append((key, json.dumps(v) if isinstance(v, list) else v))
    return rows


def _emit(obj: dict, fmt: str, out=None) -> None:
    if fmt == "json":
        text = json.dumps(obj, indent=2) + "\n"
    else:
        buf = _stdio.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(_flat_rows(obj))
        text = buf.getvalue()
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _report_csv(report: dict) -> str:
    buf = _stdio.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "tag", "status", "marginal", "tol", "worst_slack", "failures"])
    for e in report["entries"]:
        rep = e["report"]
        if rep is None:
            w.writerow([e["index"], e["tag"], e["status"], e["marginal"], "", "", ""])
            continue
        slacks = rep["slacks"].values()
        worst = min(slacks) if slacks else ""
        fails = [k for k, s in rep["slacks"].items() if s < -rep["tol"]]
        fails += [k for k, ok in rep["conditions"].items() if not ok]
        w.writerow([e["index"], e["tag"], e["status"], e["marginal"], rep["tol"], worst,
                    "; ".join(fails)])
    return buf.getvalue()


def _parse_tags(text: str | None) -> set[str] | None:
    if not text or text == "all":
        return None
    tags = {t.strip() for t in text.split(",") if t.strip()}
    bad = tags - ALL_TAGS
    if bad:
        raise UsageError(f"unknown tags: {', '.join(sorted(bad))}; choose from "
                         f"{', '.join(sorted(ALL_TAGS))}")
    return tags


def cmd_radius(args) -> int:
    x = _load(args.file)
    res = sweep_to_dict(numerical_radius(x, args.grid))
    _emit(res, args.format)
    return 0


def cmd_range(args) -> int:
    x = _load(args.file)
    rs = range_boundary(x, args.grid)
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["theta", "re", "im", "block"])
        for t, p, b in zip(rs.thetas, rs.points, rs.blocks):
            w.writerow([float(t), float(p.real), float(p.imag), int(b)])
    else:
        _emit({"grid": rs.resolution, "thetas": [float(t) for t in rs.thetas],
               "points": [complex_pair(p) for p in rs.points],
               "blocks": [int(b) for b in rs.blocks]}, "json")
    return 0


def cmd_crawford(args) -> int:
    x = _load(args.file)
    _emit({"crawford": crawford(x, args.grid), "grid": args.grid}, args.format)
    return 0


def cmd_parallel(args) -> int:
    x, y = _load(args.x), _load(args.y)
    if x.shape != y.shape:
        raise UsageError(f"block shapes differ: {x.shape} vs {y.shape}")
    if args.kind == "vradius":
        cert = vradius_parallel(x, y, max(args.grid, 256))
    else:
        cert = norm_parallel(x, y, args.grid)
    _emit(certificate_to_dict(cert), args.format)
    return 0


def _write_report(report, args) -> int:
    d = report.to_dict()
    out = getattr(args, "out", None)
    if args.format == "csv":
        text = _report_csv(d)
        if out:
            Path(out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    else:
        _emit(d, "json", out)
    s = report.summary
    print(f"pass {s['pass']}  fail {s['fail']}  inapplicable {s['inapplicable']}  "
          f"marginal {s['marginal']}", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_check(args) -> int:
    elements = [_load(f) for f in args.files]
    report = run_suite(elements, _parse_tags(args.which), args.grid, args.tol, args.seed)
    return _write_report(report, args)


def cmd_gen(args) -> int:
    try:
        spec = EnsembleSpec(args.family, args.dim, args.count, args.seed)
        elements = generate(spec)
    except UnsupportedFamilyDim as exc:
        raise UsageError(str(exc)) from None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    width = len(str(args.count - 1))
    for i, x in enumerate(elements):
        (out / f"{args.family}_{i:0{width}d}.json").write_bytes(serialize_element(x))
    print(f"wrote {len(elements)} elements to {out}", file=sys.stderr)
    return 0


def cmd_report(args) -> int:
    if args.files:
        elements = [_load(f) for f in args.files]
    else:
        try:
            elements = generate(EnsembleSpec(args.family, args.dim, args.count, args.seed))
        except UnsupportedFamilyDim as exc:
            raise UsageError(str(exc)) from None
    report = run_suite(elements, _parse_tags(args.which), args.grid, args.tol, args.seed)
    if not args.files:
        report.config["ensemble"] = {"family": args.family, "dim": args.dim,
                                     "count": args.count}
    return _write_report(report, args)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, default=DEFAULT_GRID, help="angle grid size")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    suite_opts = argparse.ArgumentParser(add_help=False)
    suite_opts.add_argument("--which", default="all",
                            help="comma-separated tags: " + ",".join(sorted(ALL_TAGS)))
    suite_opts.add_argument("--tol", type=float, default=None,
                            help="override the per-report tolerance")
    suite_opts.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="numrad", description="Numerical radius toolkit.")
    p.add_argument("--version", action="version", version=f"numrad {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("radius", parents=[common], help="numerical radius and witness")
    s.add_argument("file")
    s.set_defaults(func=cmd_radius)

    s = sub.add_parser("range", parents=[common], help="numerical range boundary samples")
    s.add_argument("file")
    s.set_defaults(func=cmd_range)

    s = sub.add_parser("crawford", parents=[common], help="Crawford number")
    s.add_argument("file")
    s.set_defaults(func=cmd_crawford)

    s = sub.add_parser("check", parents=[common, suite_opts], help="run verifiers on files")
    s.add_argument("files", nargs="+")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("parallel", parents=[common], help="parallelism certificate")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--kind", choices=("norm", "vradius"), default="vradius")
    s.set_defaults(func=cmd_parallel)

    s = sub.add_parser("gen", help="write a seeded ensemble as JSON files")
    s.add_argument("--family", choices=FAMILIES, required=True)
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("report", parents=[common, suite_opts],
                       help="run the suite on files or a generated ensemble and save the report")
    s.add_argument("files", nargs="*")
    s.add_argument("--out", required=True)
    s.add_argument("--family", choices=FAMILIES, default="ginibre")
    s.add_argument("--dim", type=int, default=3)
    s.add_argument("--count", type=int, default=10)
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "grid", DEFAULT_GRID) < 64:
        print("numrad: error: --grid must be at least 64", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, UnknownTag) as exc:
        print(f"numrad: error: {exc}", file=sys.stderr)
        return 2
    except NumradError as exc:
        print(f"numrad: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
