"""Command line front end: ``kaehler-sl2c <analyze|quantize|verify|profiles>``.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from . import curvature as cv
from . import global_geom as gg
from .errors import InadmissibleProfile, InvalidParameter, KaehlerError, ProfileSyntaxError
from .profiles import BUILTIN_NAMES, builtin, evaluate_constant, profile_from_spec, validate_kahler
from .quantization import quantization_report
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

_DESCRIPTIONS = {
    "lump": "pi * y coth y: finite volume pi^6/3, incomplete, positive Ricci",
    "stenzel": "(f')^3 = c (sinh 2y - 2y)/4: Ricci-flat and complete (parameter c, default 3)",
    "quadratic": "y^2: complete, y is the geodesic distance, positive Ricci",
    "cosh": "cosh y: complete, negative Ricci",
    "hermite-tail": "f' reaches its limit superexponentially: finite volume, every degree integrable",
}


def _positive_constant(text: str) -> float:
    try:
        value = evaluate_constant(text)
    except KaehlerError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _num(v):
    if isinstance(v, float) and not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    return v


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_profile(spec: str):
    p = profile_from_spec(spec)
    report = validate_kahler(p)
    if not report.admissible:
        raise InadmissibleProfile(f"{p.label}: " + "; ".join(report.failures))
    return p, report


def cmd_analyze(args: argparse.Namespace) -> int:
    p, validation = _load_profile(args.profile)
    report = gg.geometry_report(p, r_max=args.rmax, n_points=args.points, quotient=args.quotient, tol=args.tol)
    ys = np.linspace(0.0, args.rmax, args.points)
    curve = cv.curve_rows(p, ys)
    if args.format == "csv":
        text = cv.curve_csv(p, ys)
        volume = report.to_csv()
        if args.out:
            Path(args.out).write_text(text)
            Path(args.out).with_suffix(".volume.csv").write_text(volume)
        else:
            sys.stdout.write(text + "\n" + volume)
        return EXIT_OK
    doc = report.to_dict()
    doc["space"] = "PGL(2,C)" if args.quotient else "SL(2,C)"
    doc["ricci_class"] = cv.classify_ricci(p).value
    doc["validation"] = validation.to_dict()
    doc["curvature_curve"] = curve
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_quantize(args: argparse.Namespace) -> int:
    p, _ = _load_profile(args.profile)
    hbars = args.hbar or [math.pi / 4]
    reports = [quantization_report(p, h) for h in hbars]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["hbar", "m", "dim", "ratio", "lower", "upper"])
        for r in reports:
            lo, hi = r.bounds if r.bounds else ("", "")
            ratio = "" if r.semiclassical_ratio is None else repr(r.semiclassical_ratio)
            writer.writerow([repr(r.hbar), r.m, _num(r.dim_H_poly), ratio, lo, hi])
        _emit(buf.getvalue(), args.out)
        return EXIT_OK
    doc = {"profile": p.label, "results": [r.to_dict() for r in reports]}
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.suite, fast=args.fast, seed=args.seed)
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if failed == 0 else EXIT_FAILED


def cmd_profiles(args: argparse.Namespace) -> int:
    rows = []
    for name in BUILTIN_NAMES:
        p = builtin(name)
        lim = gg.f_prime_limit(p)
        rows.append({
            "name": name,
            "description": _DESCRIPTIONS[name],
            "admissible": validate_kahler(p).admissible,
            "total_volume": _num(gg.total_volume(p)),
            "f_prime_limit": _num(lim),
        })
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), args.out)
    else:
        _emit(json.dumps(rows, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kaehler-sl2c",
        description="Invariant Kaehler metrics on SL(2,C): geometry, moment map and quantization.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for Monte-Carlo checks")
    common.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance")

    profiled = argparse.ArgumentParser(add_help=False)
    profiled.add_argument("--profile", default="lump",
                          help="builtin name (e.g. lump, stenzel:c=3) or an expression in y")

    a = sub.add_parser("analyze", parents=[common, profiled], help="geometry report for a profile")
    a.add_argument("--rmax", type=_positive_constant, default=5.0)
    a.add_argument("--points", type=int, default=21, help="samples on each curve")
    a.add_argument("--quotient", action="store_true", help="report volumes of PGL(2,C) (half)")
    a.set_defaults(func=cmd_analyze)

    q = sub.add_parser("quantize", parents=[common, profiled], help="degree cutoff and dim H_poly")
    q.add_argument("--hbar", type=_positive_constant, action="append",
                   help="Planck constant, e.g. pi/200 (repeatable)")
    q.set_defaults(func=cmd_quantize)

    v = sub.add_parser("verify", parents=[common], help="run the verification suites")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--fast", action="store_true", help="smaller samples")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("profiles", parents=[common], help="list builtin profiles")
    p.set_defaults(func=cmd_profiles)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    if getattr(args, "rmax", 1.0) <= 0 or getattr(args, "points", 2) < 2:
        print("error: --rmax must be positive and --points at least 2", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InadmissibleProfile, ProfileSyntaxError, InvalidParameter, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KaehlerError, ArithmeticError) as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
