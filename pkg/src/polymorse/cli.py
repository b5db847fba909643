"""Command-line front end: ``polymorse {stars,verify,solve,flow,extensions}``."""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from dataclasses import asdict, replace

import numpy as np

from .config import SolverConfig, Tolerances
from .extensions import probe_power_sum
from .polygon import StarSpec
from .reports import RunReport, flow_svg, index_table_csv, star_json, star_svg, write_text
from .solver import gradient_flow, seeds_for, solve_all
from .verify import SUITES, isoperimetric_bound, run_suites

DEFAULT_SUITES = ["indices", "jets", "equilat", "clarke", "extensions", "count"]


def parse_range(text: str) -> tuple[int, int]:
    """'7' -> (7, 7); '4..9' -> (4, 9)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            a, b = int(lo), int(hi)
        else:
            a = b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return a, b


def _tolerances(args) -> Tolerances:
    return Tolerances(
        gradient=args.tol_gradient,
        jet=args.tol_jet,
        eigen_zero=args.tol_eigen_zero,
        lagrange=args.tol_lagrange,
    )


def _config(args, **overrides) -> SolverConfig:
    cfg = SolverConfig(
        seeds_per_n=getattr(args, "seeds", 500),
        rng_seed=getattr(args, "rng", 0),
        tolerances=_tolerances(args),
    )
    return replace(cfg, **overrides)


def _check_n(parser, lo: int, hi: int, args) -> None:
    if lo < 4:
        parser.error("n must be at least 4")
    if hi > args.max_n:
        parser.error(f"n = {hi} exceeds --max-n {args.max_n}")


def cmd_stars(args, parser) -> int:
    try:
        spec = StarSpec.fold(args.n) if args.fold else StarSpec(args.n, "star", args.w)
    except ValueError as exc:
        parser.error(str(exc))
    poly = spec.build()
    if args.svg:
        write_text(args.svg, star_svg(spec, poly))
    if args.json or not args.svg:
        write_text(args.json or "-", json.dumps(star_json(spec, poly), indent=2))
    return 0


def cmd_verify(args, parser) -> int:
    lo, hi = args.n
    _check_n(parser, lo, hi, args)
    names = []
    for item in args.suite or DEFAULT_SUITES:
        for name in item.split(","):
            if name not in SUITES:
                parser.error(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
            if name not in names:
                names.append(name)
    cfg = _config(args)
    tables, status = run_suites(range(lo, hi + 1), names, cfg)
    report = RunReport(
        command="verify",
        n_range=[lo, hi],
        config=asdict(cfg),
        tables=tables,
        summary={name: ("pass" if ok else "FAIL") for name, ok in status.items()},
        passed=all(status.values()),
    )
    for name, ok in status.items():
        print(f"{'PASS' if ok else 'FAIL'}  {name}", file=sys.stderr)
    if args.json:
        write_text(args.json, report.to_json(timestamp=not args.no_timestamp))
    if args.csv and "indices" in tables:
        write_text(args.csv, index_table_csv(tables["indices"]))
    return 0 if report.passed else 1


def cmd_solve(args, parser) -> int:
    _check_n(parser, args.n, args.n, args)
    cfg = _config(args)
    res = probe_power_sum(args.n, args.p, cfg) if args.p != 1.0 else solve_all(args.n, cfg)
    report = RunReport(
        command="solve",
        n_range=[args.n, args.n],
        config={**asdict(cfg), "power": args.p},
        tables={"critical_points": [r.to_dict() for r in res]},
        summary={
            "classes": len(res),
            "expected_classes": args.n - 1,
            "unidentified": sum(r.classification is None for r in res),
            "seeds": res.seeds,
            "converged_seeds": res.converged,
            "no_convergence": res.no_convergence,
            "collisions": res.collisions,
        },
    )
    write_text(args.json, report.to_json(timestamp=not args.no_timestamp))
    return 0


def cmd_flow(args, parser) -> int:
    _check_n(parser, args.n, args.n, args)
    direction = "descend" if args.descend else "ascend"
    cfg = _config(args, seeds_per_n=args.count, catalogue_seeds=0)
    starts = seeds_for(args.n, cfg)
    results = [gradient_flow(s, direction, cfg, max_iterations=args.max_iterations) for s in starts]
    hist = Counter(r.report.label if r.report else r.status for r in results)
    statuses = Counter(r.status for r in results)
    best = max(r.values[-1] for r in results) if direction == "ascend" else min(r.values[-1] for r in results)
    bound = isoperimetric_bound(args.n)
    report = RunReport(
        command="flow",
        n_range=[args.n, args.n],
        config={**asdict(cfg), "direction": direction},
        tables={
            "terminal_histogram": [{"terminal": k, "count": v} for k, v in sorted(hist.items())],
            "runs": [
                {
                    "start": k,
                    "status": r.status,
                    "terminal": r.report.label if r.report else None,
                    "iterations": r.iterations,
                    "final_value": r.values[-1],
                    "monotone": r.monotone,
                }
                for k, r in enumerate(results)
            ],
        },
        summary={
            "count": len(results),
            "monotone_fraction": float(np.mean([r.monotone for r in results])),
            "no_convergence_fraction": statuses["no_convergence"] / len(results),
            "nonsmooth_fraction": statuses["nonsmooth"] / len(results),
            "extreme_value": best,
            "regular_polygon_value": bound if direction == "ascend" else -bound,
        },
    )
    write_text(args.json, report.to_json(timestamp=not args.no_timestamp))
    if args.svg:
        write_text(args.svg, flow_svg([r.values for r in results], bound if direction == "ascend" else -bound))
    return 0


def cmd_extensions(args, parser) -> int:
    lo, hi = args.n
    _check_n(parser, lo, hi, args)
    cfg = _config(args)
    tables, status = run_suites(range(lo, hi + 1), ["extensions"], cfg)
    if args.probe:
        probe_cfg = replace(cfg, seeds_per_n=args.seeds)
        rows = []
        for n in range(lo, hi + 1):
            for p in args.p:
                res = probe_power_sum(n, p, probe_cfg)
                found = [r.label for r in res]
                rows.append(
                    {
                        "n": n,
                        "p": p,
                        "classes": len(res),
                        "catalogue_found": sum(lbl != "unidentified" for lbl in found),
                        "unidentified": found.count("unidentified"),
                        "indices": [r.morse_index for r in res],
                    }
                )
        tables["power_sum_probe"] = rows
    report = RunReport(
        command="extensions",
        n_range=[lo, hi],
        config=asdict(cfg),
        tables=tables,
        summary={"extensions": "pass" if status["extensions"] else "FAIL"},
        passed=status["extensions"],
    )
    write_text(args.json, report.to_json(timestamp=not args.no_timestamp))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polymorse", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-n", type=int, default=12, help="cap on n (default 12)")
    common.add_argument("--rng", type=int, default=0, help="RNG seed")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")
    d = Tolerances()
    common.add_argument("--tol-gradient", type=float, default=d.gradient)
    common.add_argument("--tol-jet", type=float, default=d.jet)
    common.add_argument("--tol-eigen-zero", type=float, default=d.eigen_zero)
    common.add_argument("--tol-lagrange", type=float, default=d.lagrange)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stars", parents=[common], help="draw or dump a regular star / complete fold")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--w", type=int)
    g.add_argument("--fold", action="store_true")
    p.add_argument("--svg", metavar="PATH")
    p.add_argument("--json", metavar="PATH", help="'-' for stdout (default when --svg is absent)")
    p.set_defaults(func=cmd_stars)

    p = sub.add_parser("verify", parents=[common], help="run verification suites; exit 0 iff all pass")
    p.add_argument("--n", type=parse_range, default=(4, 8), help="N or A..B (default 4..8)")
    p.add_argument("--suite", action="append", help=f"comma list from {{{','.join(SUITES)}}}")
    p.add_argument("--seeds", type=int, default=500, help="random seeds per n for the count suite")
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--csv", metavar="PATH", help="index table as CSV")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common], help="find all critical points for one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seeds", type=int, default=500)
    p.add_argument("--p", type=float, default=1.0, help="side-length power (1 = perimeter)")
    p.add_argument("--json", metavar="PATH", default="-")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("flow", parents=[common], help="gradient-flow basin experiment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=200)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--ascend", action="store_true", default=True)
    g.add_argument("--descend", action="store_true")
    p.add_argument("--max-iterations", type=int, default=5000)
    p.add_argument("--json", metavar="PATH", default="-")
    p.add_argument("--svg", metavar="PATH", help="trajectory sheet")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("extensions", parents=[common], help="power-sum and dual-problem checks")
    p.add_argument("--n", type=parse_range, default=(4, 8))
    p.add_argument("--p", type=float, nargs="+", default=[0.5, 2.0, 3.0], help="powers for --probe")
    p.add_argument("--probe", action="store_true", help="also search for non-star critical points")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--json", metavar="PATH", default="-")
    p.set_defaults(func=cmd_extensions)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
