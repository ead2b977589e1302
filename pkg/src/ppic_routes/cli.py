"""Command-line front end.

Every command prints one JSON report ``{tool_version, mesh, command, result}``
to stdout. Failures exit non-zero with ``{"error", "message"}`` on stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .advisor import check_feasibility, minimal_sizes, minimal_square_size
from .characterize import (
    ProcessVariation,
    estimate_alpha,
    estimate_length,
    length_period,
    load_measurements,
    measurements_to_csv,
    measurements_to_json,
    simulate_measurements,
)
from .config import DEFAULT_CAP, Configuration, all_cross, from_bits
from .construct import construct_single_path
from .errors import InvalidSpec, MeshRoutingError
from .mesh import Family, MeshGraph, MeshSpec, build_mesh
from .oracle import oracle_max_simultaneous_all, oracle_realizable_lengths, verify_theorem_suite
from .response import SPEED_OF_LIGHT
from .svg import render_svg
from .theory import (
    max_path_length,
    multi_path_upper_bound,
    path_sum_spectrum,
    realizable_lengths,
    single_path_realizable,
)
from .tracer import classify_path, path_stats, trace

BOUND_COLUMNS = ("x", "floor_component", "count_component", "C1", "C2", "y_bound")


def _frac(value: Fraction) -> str:
    return str(value)


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise InvalidSpec(f"expected a range like 1..25, got {text!r}") from None


def _float_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split("..")
        return float(lo), float(hi)
    except ValueError:
        raise InvalidSpec(f"expected a range like 90e-6..110e-6, got {text!r}") from None


def _load_config(mesh: MeshGraph, value: str) -> Configuration:
    path = Path(value)
    if set(value) - {"0", "1"} and path.is_file():
        value = path.read_text()
    return from_bits(mesh, value)


# --- commands ---------------------------------------------------------------


def cmd_trace(args) -> dict:
    g = build_mesh(args.mesh)
    config = _load_config(g, args.config)
    tr = trace(g, config)
    square = g.spec.family is Family.SQUARE
    paths = []
    for p in tr.paths:
        item = {
            "start": str(p.start),
            "end": str(p.end),
            "length": p.length,
            "bar_parity": p.bar_traversals % 2,
            "tbus": [str(g.tbus[t]) for t in p.tbus],
        }
        if square:
            item["type"] = classify_path(p).value
            item["sides"] = [p.start_side.value, p.end_side.value]
        paths.append(item)
    stats = path_stats(tr.paths, g)
    return {
        "config": config.to_bits(),
        "paths": paths,
        "loops": [{"length": lp.length, "tbus": [str(g.tbus[t]) for t in lp.tbus]} for lp in tr.loops],
        "stats": {
            "lengths": sorted(stats.lengths),
            "total": stats.total,
            "k0": stats.k0,
            "mean": _frac(stats.mean),
            "variance": _frac(stats.variance),
            "longest": stats.longest,
        },
    }


def cmd_realizable(args) -> dict:
    spec = args.mesh
    if args.x is not None:
        v = single_path_realizable(spec, args.x)
        return {"x": v.x, "realizable": v.realizable, "window": v.window, "reason": v.reason}
    return {"max_length": max_path_length(spec), "lengths": realizable_lengths(spec)}


def cmd_construct(args) -> dict:
    g = build_mesh(args.mesh)
    c = construct_single_path(g, args.x)
    result = {
        "x": c.length,
        "config": c.config.to_bits(),
        "recipe": c.recipe,
        "start": str(c.start),
        "end": str(c.end),
        "crossed": [str(t) for t in c.crossed],
    }
    if args.svg:
        path = next(p for p in trace(g, c.config).paths if p.start == c.start and p.end == c.end)
        Path(args.svg).write_text(render_svg(g, c.config, [path]))
        result["svg"] = str(args.svg)
    return result


def bound_rows(spec: MeshSpec, lo: int, hi: int) -> list[dict]:
    rows = []
    for x in range(lo, hi + 1):
        b = multi_path_upper_bound(spec, x)
        rows.append({"x": x, **b.components(), "y_bound": b.y_max, "even_cap_unproven": b.even_cap_unproven})
    return rows


def bounds_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BOUND_COLUMNS)
    for row in rows:
        writer.writerow(["inf" if row[k] is None else row[k] for k in BOUND_COLUMNS])
    return buf.getvalue()


def cmd_bounds(args) -> dict:
    spec = args.mesh
    lo, hi = _range(args.x_range) if args.x_range else (1, max_path_length(spec))
    rows = bound_rows(spec, lo, hi)
    if args.csv:
        Path(args.csv).write_text(bounds_csv(rows))
    return {"x_range": [lo, hi], "rows": rows, **({"csv": str(args.csv)} if args.csv else {})}


def cmd_oracle(args) -> dict:
    spec = args.mesh
    cap = args.cap
    if args.task == "lengths":
        r = oracle_realizable_lengths(spec, args.jobs, cap, args.allow_large)
        return {
            "task": "lengths",
            "lengths": r.lengths,
            "closed_form": realizable_lengths(spec),
            "witnesses": {str(k): v for k, v in r.witnesses.items()},
        }
    if args.task == "maxy":
        r = oracle_max_simultaneous_all(spec, args.jobs, cap, args.allow_large)
        rows = [{"x": x, "y_true": v.y_true, "y_bound": v.y_bound, "witness": v.witness} for x, v in r.items()]
        return {"task": "maxy", "rows": rows}
    r = verify_theorem_suite(spec, args.jobs, cap, args.allow_large)
    return {
        "task": "verify",
        "configs": r.configs,
        "passed": r.passed,
        "checks": list(r.checks),
        "counterexamples": {k: r.counterexamples.get(k, []) for k in r.checks},
        "observed_sums": list(r.observed_sums),
        "allowed_sums": path_sum_spectrum(spec).values(),
    }


def cmd_characterize(args) -> dict:
    g = build_mesh(args.mesh)
    config = _load_config(g, args.config) if args.config else all_cross(g)
    omega = 2 * math.pi * SPEED_OF_LIGHT / args.wavelength
    if args.simulate:
        rng = np.random.default_rng(args.seed)
        if args.alpha_spread or args.length_spread:
            variation = ProcessVariation.random(
                g, rng,
                (args.alpha - args.alpha_spread, min(1.0, args.alpha + args.alpha_spread)),
                (args.length - args.length_spread, args.length + args.length_spread),
                args.noise,
            )
        else:
            variation = ProcessVariation.uniform(g, args.alpha, args.length, args.noise)
        ms = simulate_measurements(g, config, variation, args.n_eff, omega, rng)
        if args.export:
            out = Path(args.export)
            text = json.dumps(measurements_to_json(ms), indent=2) if out.suffix == ".json" else measurements_to_csv(ms)
            out.write_text(text)
    elif args.measurements:
        ms = load_measurements(args.measurements, g.spec, config.to_bits())
    else:
        raise InvalidSpec("pass --measurements FILE or --simulate")
    k0 = args.k0
    if k0 is None:
        spectrum = path_sum_spectrum(g.spec)
        k0 = spectrum.k_of(sum(p.length for p in trace(g, config).paths))
    result = {
        "config": config.to_bits(),
        "k0": k0,
        "measurements": len(ms),
        "alpha_hat": estimate_alpha(ms, g, k0),
    }
    if args.window:
        window = _float_range(args.window)
        result["length_window"] = list(window)
        result["length_period"] = length_period(g, args.n_eff, omega, k0)
        result["length_candidates"] = estimate_length(ms, g, args.n_eff, omega, k0, window)
    return result


def _violations(report) -> list[dict]:
    return [{"name": v.name, "basis": v.basis, "detail": v.detail} for v in report.violations]


def cmd_advise(args) -> dict:
    lam = [int(x) for x in args.lam.replace("[", "").replace("]", "").split(",") if x.strip()]
    if args.grid:
        spec = MeshSpec.parse(f"square:{args.grid}")
        r = check_feasibility(spec.rows, spec.cols, lam)
        return {
            "lambda": lam, "mode": "grid", "rows": r.rows, "cols": r.cols,
            "verdict": r.verdict.value, "violations": _violations(r), "notes": list(r.notes),
        }
    if args.square:
        s = minimal_square_size(lam, args.cap)
        return {
            "lambda": lam, "mode": "square", "size": s.size,
            "binding": [{"name": v.name, "basis": v.basis, "detail": v.detail} for v in s.binding],
            "notes": list(s.report.notes),
        }
    frontier = minimal_sizes(lam, args.cap, args.cap)
    return {"lambda": lam, "mode": "frontier", "frontier": [list(p) for p in frontier]}


# --- parser -----------------------------------------------------------------


def _mesh_arg(text: str) -> MeshSpec:
    try:
        return MeshSpec.parse(text)
    except MeshRoutingError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ppic-routes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="trace the paths and loops of a configuration")
    p.add_argument("--mesh", type=_mesh_arg, required=True)
    p.add_argument("--config", required=True, help="bitstring (1 = cross) or a file holding one")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("realizable", help="single-path realizability")
    p.add_argument("--mesh", type=_mesh_arg, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--x", type=int)
    g.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_realizable)

    p = sub.add_parser("construct", help="configuration routing one path of length x")
    p.add_argument("--mesh", type=_mesh_arg, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--svg", help="write a diagram of the mesh and path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bounds", help="multi-path upper bound curve")
    p.add_argument("--mesh", type=_mesh_arg, required=True)
    p.add_argument("--x-range", help="a..b, default 1..max length")
    p.add_argument("--csv", help="also write the curve as CSV")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("oracle", help="exhaustive sweep over all configurations")
    p.add_argument("--mesh", type=_mesh_arg, required=True)
    p.add_argument("--task", choices=("lengths", "maxy", "verify"), required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest TBU count to sweep")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("characterize", help="estimate loss and TBU length from port measurements")
    p.add_argument("--mesh", type=_mesh_arg, required=True)
    p.add_argument("--config", help="configuration used for the measurements, default all cross")
    p.add_argument("--measurements", help="CSV (start,end,re,im[,length,q]) or JSON file")
    p.add_argument("--simulate", action="store_true", help="simulate measurements instead of reading them")
    p.add_argument("--alpha", type=float, default=0.99)
    p.add_argument("--alpha-spread", type=float, default=0.0)
    p.add_argument("--length", type=float, default=100e-6, help="TBU length in meters")
    p.add_argument("--length-spread", type=float, default=0.0)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--export", help="write simulated measurements (.csv or .json)")
    p.add_argument("--n-eff", type=float, default=2.35)
    p.add_argument("--wavelength", type=float, default=1550e-9)
    p.add_argument("--k0", type=int, help="cells consumed by the paths, default from the traced configuration")
    p.add_argument("--window", help="length plausibility window lo..hi in meters")
    p.set_defaults(func=cmd_characterize)

    p = sub.add_parser("advise", help="necessary-condition sizing for a set of path lengths")
    p.add_argument("--lambda", dest="lam", required=True, help="comma-separated lengths or a JSON array")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--square", action="store_true", help="smallest x-by-x mesh")
    g.add_argument("--grid", help="check one NxM mesh")
    p.add_argument("--cap", type=int, default=64)
    p.set_defaults(func=cmd_advise)
    return parser


def report(command: str, mesh: MeshSpec | None, result: dict) -> str:
    doc = {"tool_version": __version__, "mesh": None if mesh is None else str(mesh), "command": command, "result": result}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except MeshRoutingError as exc:
        sys.stderr.write(json.dumps({"error": exc.code, "message": str(exc)}) + "\n")
        return 2
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "io_error", "message": str(exc)}) + "\n")
        return 2
    sys.stdout.write(report(args.command, getattr(args, "mesh", None), result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
