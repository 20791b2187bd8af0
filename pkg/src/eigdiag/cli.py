"""Command-line entry point.

Subcommands: gen, eig, diagram, family, verify, plot, constants.
Exit codes: 0 success, 1 invalid usage, 2 partial failures, 3 I/O error.
Every run echoes its resolved configuration (including seeds) to stderr.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from .diagram import SampleConfig, family_trace, read_csv, run_sample, verify_report, write_csv, write_svg
from .errors import EigdiagError, SchemaError
from .fem import solve_shape
from .geom import ConvexPolygon, SimplePolygon
from .inequalities import bessel_constants, reference_curves
from .shapes import mix_seed, shape_record, shapes_from_jsonl, shapes_to_jsonl, valtr_random


def _default_workers():
    env = os.environ.get("EIGDIAG_THREADS")
    if env:
        try:
            return max(int(env), 1)
        except ValueError:
            pass
    return os.cpu_count() or 1


def _build_parser():
    parser = argparse.ArgumentParser(prog="eigdiag", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate random convex polygons to JSONL")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--sides-min", type=int, default=3)
    p.add_argument("--sides-max", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("eig", help="solve eigenvalues for shapes from JSONL")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--refine", type=int, default=5)
    p.add_argument("--out", required=True)

    p = sub.add_parser("diagram", help="sample polygons and write the diagram CSV")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--sides-min", type=int, default=3)
    p.add_argument("--sides-max", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--refine", type=int, default=5)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--svg", default=None)

    p = sub.add_parser("family", help="trace a named shape family")
    p.add_argument("--kind", required=True,
                   choices=["rhombus", "rectangle", "isosceles", "regular", "ellipse", "dumbbell"])
    p.add_argument("--params", required=True, help='comma-separated values, e.g. "4,8,16"')
    p.add_argument("--refine", type=int, default=5)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="check inequalities over a diagram CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("plot", help="render a diagram CSV to SVG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)

    sub.add_parser("constants", help="print Bessel zeros and reference constants")
    return parser


def _echo_config(args):
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "command"}
    print(f"eigdiag {args.command} config: {json.dumps(cfg, default=str)}", file=sys.stderr)


def _cmd_gen(args):
    shapes = []
    rng_master = args.seed
    for i in range(args.count):
        stream = mix_seed(rng_master, i)
        n = int(np.random.default_rng(np.uint64(stream)).integers(args.sides_min, args.sides_max + 1))
        shape_seed = mix_seed(stream, 7)
        poly = valtr_random(n, shape_seed)
        shapes.append(shape_record(i, "valtr", {"n": n, "seed": shape_seed}, poly))
    shapes_to_jsonl(shapes, args.out)
    return 0


def _cmd_eig(args):
    shape_rows = shapes_from_jsonl(args.infile)
    failures = 0
    with open(args.out, "w") as f:
        for row in shape_rows:
            try:
                try:
                    poly = ConvexPolygon(row["vertices"])
                except EigdiagError:
                    poly = SimplePolygon(row["vertices"])
                point, (lam, mu), _metrics = solve_shape(poly, args.refine)
                out = {
                    "id": row["id"], "x": point.x, "y": point.y, "F": point.F,
                    "lambda1": point.x, "mu1": point.y,
                    "lambda1_err": lam.error_estimate, "mu1_err": mu.error_estimate,
                    "h": lam.h, "nodes": len(lam.eigenvector),
                }
                f.write(json.dumps(out) + "\n")
            except EigdiagError as exc:
                failures += 1
                print(f"shape {row.get('id')}: {type(exc).__name__}: {exc}", file=sys.stderr)
    return 2 if failures else 0


def _cmd_diagram(args):
    workers = args.workers if args.workers is not None else _default_workers()
    config = SampleConfig(
        count=args.count, sides_min=args.sides_min, sides_max=args.sides_max,
        master_seed=args.seed, refinements=args.refine, workers=workers,
    )
    records, failures = run_sample(config)
    write_csv(records, args.out)
    for idx, msg in failures:
        print(f"shape {idx} skipped: {msg}", file=sys.stderr)
    print(f"completed {len(records)}/{config.count} shapes", file=sys.stderr)
    if args.svg:
        write_svg(records, reference_curves(), args.svg)
    return 2 if failures else 0


def _cmd_family(args):
    try:
        params = [float(v) for v in args.params.split(",") if v.strip()]
    except ValueError:
        print(f"cannot parse --params {args.params!r}", file=sys.stderr)
        return 1
    records = family_trace(args.kind, params, refinements=args.refine)
    write_csv(records, args.out)
    for rec in records:
        if rec.rayleigh_bound is not None:
            print(f"{rec.kind}: mu1={rec.mu1:.6g} rayleigh_bound={rec.rayleigh_bound:.6g}", file=sys.stderr)
    return 0


def _cmd_verify(args):
    records = read_csv(args.infile)
    report = verify_report(records)
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text + "\n")
    print(text)
    return 0 if not report["violations"] else 2


def _cmd_plot(args):
    records = read_csv(args.infile)
    write_svg(records, reference_curves(), args.out)
    return 0


def _cmd_constants(_args):
    bc = bessel_constants()
    print(f"j01  = {bc.j01:.15f}")
    print(f"j11p = {bc.j11p:.15f}")
    print(f"pi*j01^2  = {math.pi * bc.j01**2:.6f}   (x of disc vertex A)")
    print(f"pi*j11p^2 = {math.pi * bc.j11p**2:.6f}   (y of disc vertex A)")
    for name, c, kind in reference_curves():
        print(f"{name:22s} c = {c:.6f}   [{kind}]")
    return 0


_DISPATCH = {
    "gen": _cmd_gen,
    "eig": _cmd_eig,
    "diagram": _cmd_diagram,
    "family": _cmd_family,
    "verify": _cmd_verify,
    "plot": _cmd_plot,
    "constants": _cmd_constants,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    _echo_config(args)
    try:
        return _DISPATCH[args.command](args)
    except (OSError, SchemaError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    except EigdiagError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
