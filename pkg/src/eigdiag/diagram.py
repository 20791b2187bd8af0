"""Sampling orchestration, family traces, CSV persistence, verification."""

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import List, Optional

from .errors import InvalidParam, SchemaError
from .fem import SpectralPoint, mesh_pipeline, neumann_mu1, dirichlet_lambda1, richardson, solve_shape, strip_test_function
from .geom import Point2, ShapeMetrics, basic_metrics, normalize_unit_area
from .inequalities import check_all, _bc
from .shapes import (
    DumbbellSpec,
    dumbbell,
    ellipse_polygon,
    isosceles_triangle,
    mix_seed,
    rectangle,
    regular_ngon,
    rhombus,
    valtr_random,
)
from .svgplot import write_svg  # noqa: F401  (re-exported)

CSV_HEADER = (
    "id,kind,n_vertices,seed,area,perimeter,diameter,inradius,width,"
    "lambda1,mu1,x,y,F,lambda1_err,mu1_err,h"
)

_CSV_FIELDS = CSV_HEADER.split(",")


@dataclass
class SampleConfig:
    count: int
    sides_min: int = 3
    sides_max: int = 30
    master_seed: int = 0
    refinements: int = 5
    workers: int = 1

    def __post_init__(self):
        if self.count < 1 or self.sides_min < 3 or self.sides_min > self.sides_max:
            raise InvalidParam("invalid sample configuration")


@dataclass
class DiagramRecord:
    id: int
    kind: str
    n_vertices: int
    seed: int
    area: float
    perimeter: float
    diameter: float
    inradius: float
    width: float
    lambda1: float
    mu1: float
    x: float
    y: float
    F: float
    lambda1_err: float
    mu1_err: float
    h: float
    rayleigh_bound: Optional[float] = None  # dumbbell traces only; not persisted


def _make_record(shape_id, kind, n_vertices, seed, point, lam, mu, metrics):
    return DiagramRecord(
        id=shape_id,
        kind=kind,
        n_vertices=n_vertices,
        seed=seed,
        area=metrics.area,
        perimeter=metrics.perimeter,
        diameter=metrics.diameter,
        inradius=metrics.inradius,
        width=metrics.width,
        lambda1=point.x,
        mu1=point.y,
        x=point.x,
        y=point.y,
        F=point.F,
        lambda1_err=lam.error_estimate,
        mu1_err=mu.error_estimate,
        h=lam.h,
    )


def _sample_one(config, index):
    import numpy as np

    stream = mix_seed(config.master_seed, index)
    n = int(np.random.default_rng(np.uint64(stream)).integers(config.sides_min, config.sides_max + 1))
    shape_seed = mix_seed(stream, 7)
    poly = valtr_random(n, shape_seed)
    point, (lam, mu), metrics = solve_shape(poly, config.refinements)
    return _make_record(index, "valtr", n, shape_seed, point, lam, mu, metrics)


def run_sample(config: SampleConfig):
    """Sample random convex polygons and solve each one.

    Returns (records, failures); failures is a list of (index, message).
    Output is a pure function of the config, independent of worker count.
    """
    results = {}
    failures = []

    def work(i):
        try:
            return i, _sample_one(config, i), None
        except Exception as exc:  # noqa: BLE001 - aggregated, not swallowed
            return i, None, f"{type(exc).__name__}: {exc}"

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(work, range(config.count)))
    else:
        outcomes = [work(i) for i in range(config.count)]
    for i, rec, err in outcomes:
        if rec is not None:
            results[i] = rec
        else:
            failures.append((i, err))
    records = [results[i] for i in sorted(results)]
    return records, failures


_FAMILY_KINDS = ("rhombus", "rectangle", "isosceles", "regular", "ellipse", "dumbbell")


def family_trace(kind: str, params, refinements: int = 5) -> List[DiagramRecord]:
    """Solve a named one-parameter family; one record per parameter."""
    if kind not in _FAMILY_KINDS:
        raise InvalidParam(f"unknown family kind {kind!r}")
    records = []
    for idx, p in enumerate(params):
        if kind == "dumbbell":
            records.append(_dumbbell_record(idx, float(p), refinements))
            continue
        levels = refinements
        if kind == "rhombus":
            poly = rhombus(float(p))
            if float(p) >= 8:
                levels += 1  # thin shapes need the extra level
        elif kind == "rectangle":
            poly = rectangle(float(p))
        elif kind == "isosceles":
            poly = isosceles_triangle(float(p))
        elif kind == "regular":
            poly = regular_ngon(int(p), 1.0)
        elif kind == "ellipse":
            poly = ellipse_polygon(float(p), 256)
        point, (lam, mu), metrics = solve_shape(poly, levels)
        records.append(
            _make_record(idx, f"{kind}({p:g})", len(poly.vertices), 0, point, lam, mu, metrics)
        )
    return records


def _dumbbell_record(idx, channel_height, refinements):
    spec = DumbbellSpec(eps=0.5, channel_height=channel_height, channel_length=0.5)
    poly = normalize_unit_area(dumbbell(spec))
    # channel corners slow convergence; one extra level keeps errors percent-scale
    coarse, fine = mesh_pipeline(poly, refinements + 1)
    lam_c, lam_f = dirichlet_lambda1(coarse), dirichlet_lambda1(fine)
    lam_f.extrapolated, lam_f.error_estimate = richardson(lam_c, lam_f)
    mu_c, mu_f = neumann_mu1(coarse), neumann_mu1(fine)
    mu_f.extrapolated, mu_f.error_estimate = richardson(mu_c, mu_f)
    _, rayleigh = strip_test_function(fine, (1.0, 0.0), spec.channel_length)
    point = SpectralPoint(x=lam_f.extrapolated, y=mu_f.extrapolated, F=lam_f.extrapolated * mu_f.extrapolated)
    area, perim, centroid = basic_metrics(poly)
    metrics = ShapeMetrics(
        area=area, perimeter=perim, diameter=float("nan"), inradius=float("nan"),
        width=float("nan"), centroid=centroid,
    )
    rec = _make_record(idx, f"dumbbell({channel_height:g})", len(poly.vertices), 0, point, lam_f, mu_f, metrics)
    rec.rayleigh_bound = rayleigh
    return rec


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def write_csv(records, path):
    with open(path, "w", newline="") as f:
        f.write(CSV_HEADER + "\n")
        for rec in records:
            f.write(",".join(_fmt(getattr(rec, name)) for name in _CSV_FIELDS) + "\n")


def read_csv(path) -> List[DiagramRecord]:
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or ",".join(header) != CSV_HEADER:
            raise SchemaError(f"unexpected CSV header in {path}")
        types = {f.name: f.type for f in fields(DiagramRecord)}
        records = []
        for row in reader:
            if not row:
                continue
            kwargs = {}
            for name, raw in zip(_CSV_FIELDS, row):
                kwargs[name] = int(raw) if types[name] is int else (raw if types[name] is str else float(raw))
            records.append(DiagramRecord(**kwargs))
    return records


def verify_report(records) -> dict:
    """Aggregate inequality verdicts and conjecture margins over records."""
    bc = _bc()
    counts = {}
    violations = []
    conjecture_exceedances = []
    skipped = 0
    for rec in records:
        if not (rec.diameter == rec.diameter):  # NaN geometry: non-convex trace
            skipped += 1
            continue
        metrics = ShapeMetrics(
            area=rec.area, perimeter=rec.perimeter, diameter=rec.diameter,
            inradius=rec.inradius, width=rec.width, centroid=Point2(0.0, 0.0),
        )
        report = check_all(metrics, SpectralPoint(x=rec.x, y=rec.y, F=rec.F))
        for chk in report.checks:
            slot = counts.setdefault(chk.name, {"holds": 0, "violated": 0, "equality_within_tol": 0})
            slot[chk.status] += 1
            if chk.status == "violated":
                violations.append({"id": rec.id, "kind": rec.kind, "check": chk.name, "margin": chk.margin})
        for chk in report.advisory:
            if chk.name == "conjecture_f_upper" and chk.status == "violated":
                conjecture_exceedances.append({"id": rec.id, "kind": rec.kind, "F": rec.F, "excess": -chk.margin})
    f_vals = [rec.F for rec in records]
    best = max(records, key=lambda r: r.F)
    f_disc = math.pi**2 * bc.j01**2 * bc.j11p**2
    f_square = 2 * math.pi**4
    return {
        "attempted": len(records),
        "checked": len(records) - skipped,
        "skipped_nonconvex": skipped,
        "counts": counts,
        "violations": violations,
        "F_min": min(f_vals),
        "F_max": max(f_vals),
        "F_argmax": {"id": best.id, "kind": best.kind},
        "F_square_exact": f_square,
        "F_disc_conjectured_max": f_disc,
        "max_F_minus_F_square": max(f_vals) - f_square,
        "max_F_minus_F_disc": max(f_vals) - f_disc,
        "conjecture_exceedances": conjecture_exceedances,
    }
