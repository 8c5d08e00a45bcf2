"""Command-line front end.

Exit codes: 0 on successful evaluation (whatever the verdicts), 2 on invalid
input, 3 when the ray-enumeration budget is exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import InvalidSpec, NotASubmodule, ResourceLimit
from .geometry import DEFAULT_CAP
from .report import render_text, run_check
from .specio import parse_spec
from .sweep import FAMILIES, audit_rows, format_rows, run_atlas, run_sweep, sweep_points

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_RESOURCE = 3


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rhocert",
        description="Certify rho_g <= 2 rho_q and rho_g < 2 rho_q for reductive pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="evaluate one pair specification")
    check.add_argument("--spec", required=True, help="JSON pair-spec file, or - for stdin")
    check.add_argument("--format", choices=["json", "text"], default="text")
    check.add_argument("--verbose-weights", action="store_true")
    check.add_argument("--timing", action="store_true", help="include wall-clock time (not reproducible)")
    check.add_argument("--max-rays", type=_positive, default=DEFAULT_CAP)

    sweep = sub.add_parser("sweep", help="tabulate a family over a parameter range")
    sweep.add_argument("--family", choices=FAMILIES, required=True)
    sweep.add_argument("--n", type=_positive, help="single ambient size (sl-blocks, so-in-sl)")
    sweep.add_argument("--n-min", type=_positive)
    sweep.add_argument("--n-max", type=_positive)
    sweep.add_argument("--pq-min", type=int, default=3, help="lower bound on p+q (so-in-sl)")
    sweep.add_argument("--pq-max", type=int, help="upper bound on p+q (so-blocks)")
    sweep.add_argument("--p", type=int, help="fixed p (so-blocks, with --q)")
    sweep.add_argument("--q", type=int, help="fixed q (so-blocks, with --p)")
    sweep.add_argument("--format", choices=["csv", "json", "text"], default="text")
    sweep.add_argument("--jobs", type=_positive, default=1)
    sweep.add_argument("--max-rays", type=_positive, default=DEFAULT_CAP)

    atlas = sub.add_parser("atlas", help="run the three family sweeps at fixed bounds")
    atlas.add_argument("--out", default="atlas", help="output directory for tables")
    atlas.add_argument("--jobs", type=_positive, default=1)
    atlas.add_argument("--max-rays", type=_positive, default=DEFAULT_CAP)
    return parser


def _cmd_check(args) -> int:
    try:
        text = sys.stdin.read() if args.spec == "-" else Path(args.spec).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read spec: {exc}", file=sys.stderr)
        return EXIT_INVALID
    spec = parse_spec(text)
    report = run_check(spec, args.max_rays, timing=args.timing)
    if args.format == "json":
        sys.stdout.write(json.dumps(report.to_dict(args.verbose_weights), indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report, args.verbose_weights))
    return EXIT_OK


def _sweep_bounds(args) -> dict:
    fam = args.family
    if fam in ("sl-blocks", "so-in-sl"):
        if args.n is not None:
            return dict(n_min=args.n, n_max=args.n, pq_min=args.pq_min)
        if args.n_max is None:
            raise InvalidSpec("sweep needs --n or --n-max", "--n")
        default_min = 1 if fam == "sl-blocks" else args.pq_min
        return dict(n_min=args.n_min or default_min, n_max=args.n_max, pq_min=args.pq_min)
    if (args.p is None) != (args.q is None):
        raise InvalidSpec("--p and --q must be given together", "--p")
    if args.p is None and args.pq_max is None:
        raise InvalidSpec("sweep needs --pq-max or --p/--q", "--pq-max")
    if args.p is not None and min(args.p, args.q) < 0:
        raise InvalidSpec("p and q must be non-negative", "--p")
    return dict(pq_max=args.pq_max, p=args.p, q=args.q)


def _cmd_sweep(args) -> int:
    points = sweep_points(args.family, **_sweep_bounds(args))
    rows = run_sweep(points, args.max_rays, args.jobs)
    sys.stdout.write(format_rows(rows, args.family, args.format))
    audit = audit_rows(rows)
    if audit:
        for line in audit.lines(args.family):
            print(line, file=sys.stderr)
    return EXIT_OK


def _cmd_atlas(args) -> int:
    sys.stdout.write(run_atlas(Path(args.out), args.max_rays, args.jobs))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"check": _cmd_check, "sweep": _cmd_sweep, "atlas": _cmd_atlas}[args.command]
    try:
        return handler(args)
    except (InvalidSpec, NotASubmodule) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimit as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
