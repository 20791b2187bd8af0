"""Shape generators: Valtr random convex polygons and named families.

Randomness is PCG64 (numpy's default generator) seeded from a 64-bit
integer; per-shape streams are derived from a master seed with a
splitmix64 mix so parallel sampling is order-independent.
"""

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidParam
from .geom import ConvexPolygon, SimplePolygon, basic_metrics, normalize_unit_area

_MASK64 = (1 << 64) - 1


def mix_seed(master_seed: int, index: int) -> int:
    """splitmix64 finalizer applied to master_seed + golden-ratio * index."""
    z = (master_seed + 0x9E3779B97F4A7C15 * (index + 1)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _valtr_deltas(vals, rng):
    """Signed consecutive differences along two random chains; sums to 0."""
    n = len(vals)
    vals = np.sort(vals)
    deltas = np.empty(n)
    last = [vals[0], vals[0]]
    sides = rng.integers(0, 2, size=n - 2)
    k = 0
    for i in range(1, n - 1):
        if sides[i - 1]:
            deltas[k] = vals[i] - last[0]
            last[0] = vals[i]
        else:
            deltas[k] = last[1] - vals[i]
            last[1] = vals[i]
        k += 1
    deltas[k] = vals[-1] - last[0]
    deltas[k + 1] = last[1] - vals[-1]
    return deltas


def valtr_random(n: int, seed: int) -> ConvexPolygon:
    """Uniform random convex n-gon inside the unit square.

    Sorted coordinate differences are split into two chains per axis,
    paired after shuffling, angle-sorted and chained end to end.
    """
    if n < 3 or n > 1000:
        raise InvalidParam(f"n={n} outside [3, 1000]")
    rng = np.random.default_rng(np.uint64(seed))
    while True:
        dx = _valtr_deltas(rng.random(n), rng)
        dy = _valtr_deltas(rng.random(n), rng)
        rng.shuffle(dy)
        order = np.argsort(np.arctan2(dy, dx), kind="stable")
        verts = np.cumsum(np.column_stack([dx[order], dy[order]]), axis=0)
        # translate into the unit square
        verts -= verts.min(axis=0)
        span = verts.max(axis=0)
        verts += (1.0 - span) * 0.5
        try:
            poly = ConvexPolygon(verts)
        except Exception:
            # near-collinear angle tie; probability ~0, redraw from the stream
            continue
        if len(poly) == n:
            return poly


@dataclass(frozen=True)
class ConvexityStats:
    n: int
    p_n: float
    expected_iterations: float


def convexity_probability(n: int) -> ConvexityStats:
    """Probability that n uniform points in a square are in convex position.

    p_n = (C(2n-2, n-1) / n!)^2, evaluated with exact integers.
    """
    if n < 3 or n > 60:
        raise InvalidParam(f"n={n} outside [3, 60]")
    p = Fraction(math.comb(2 * n - 2, n - 1), math.factorial(n)) ** 2
    return ConvexityStats(n=n, p_n=float(p), expected_iterations=float(1 / p))


def regular_ngon(n: int, area: float) -> ConvexPolygon:
    """Regular n-gon centered at the origin with the given area.

    First vertex lies on the positive x-axis, so n=4 gives a diamond
    (square rotated 45 degrees).
    """
    if n < 3 or area <= 0:
        raise InvalidParam("need n >= 3 and area > 0")
    circumradius = math.sqrt(2.0 * area / (n * math.sin(2.0 * math.pi / n)))
    theta = 2.0 * np.pi * np.arange(n) / n
    return ConvexPolygon(circumradius * np.column_stack([np.cos(theta), np.sin(theta)]))


def rectangle(aspect: float) -> ConvexPolygon:
    """Unit-area axis-aligned rectangle with side ratio aspect >= 1."""
    if aspect < 1:
        raise InvalidParam("aspect must be >= 1")
    a = math.sqrt(aspect)
    b = 1.0 / a
    return ConvexPolygon([(0, 0), (a, 0), (a, b), (0, b)])


def isosceles_triangle(apex_angle: float) -> ConvexPolygon:
    """Unit-area isosceles triangle with the given apex angle."""
    if not 0 < apex_angle < math.pi:
        raise InvalidParam("apex angle must lie in (0, pi)")
    half = apex_angle / 2.0
    tri = ConvexPolygon(
        [(0.0, 1.0), (-math.sin(half), 1.0 - math.cos(half)), (math.sin(half), 1.0 - math.cos(half))]
    )
    return normalize_unit_area(tri)


def rhombus(d: float) -> ConvexPolygon:
    """Unit-area rhombus with diagonals d and 2/d along the axes."""
    if d < math.sqrt(2.0):
        raise InvalidParam("need d >= sqrt(2) so the long diagonal is the diameter")
    h = 1.0 / d  # half of the short diagonal: d * (2/d) / 2 = 1
    return ConvexPolygon([(d / 2, 0), (0, h), (-d / 2, 0), (0, -h)])


def ellipse_polygon(eps: float, n: int) -> ConvexPolygon:
    """n-gon inscribed in the ellipse with semi-axes 1+eps and 1."""
    if eps < 0 or n < 32:
        raise InvalidParam("need eps >= 0 and n >= 32")
    theta = 2.0 * np.pi * np.arange(n) / n
    return ConvexPolygon(np.column_stack([(1.0 + eps) * np.cos(theta), np.sin(theta)]))


@dataclass(frozen=True)
class DumbbellSpec:
    """Two discs joined by a thin rectangular channel, symmetric in x-axis.

    The unit disc sits at the origin; the small disc of radius eps is
    centered at (1 + channel_length + eps, 0); the channel is the strip
    |y| <= channel_height / 2 between the two circles.
    """

    eps: float
    channel_height: float
    channel_length: float
    arc_points: int = 64

    def __post_init__(self):
        if not 0 < self.eps < 0.8:
            raise InvalidParam("eps must lie in (0, 0.8)")
        if self.channel_height <= 0 or self.channel_length <= 0:
            raise InvalidParam("channel dimensions must be positive")
        if self.channel_height >= 2 * self.eps:
            raise InvalidParam("channel does not attach inside the small disc")
        if self.arc_points < 16:
            raise InvalidParam("need arc_points >= 16")


def dumbbell(spec: DumbbellSpec) -> SimplePolygon:
    """Polygonal dumbbell domain tracing both discs and the channel."""
    h = spec.channel_height / 2.0
    cx = 1.0 + spec.channel_length + spec.eps
    # attachment angles on each circle
    a_big = math.asin(h)
    a_small = math.pi - math.asin(h / spec.eps)
    m = spec.arc_points
    # big-circle arc CCW from +a_big through pi to -a_big (i.e. 2pi - a_big)
    t_big = np.linspace(a_big, 2.0 * math.pi - a_big, m)
    big = np.column_stack([np.cos(t_big), np.sin(t_big)])
    # small-circle arc CCW from -a_small up through 0 to +a_small
    t_small = np.linspace(-a_small, a_small, m)
    small = np.column_stack([cx + spec.eps * np.cos(t_small), spec.eps * np.sin(t_small)])
    verts = np.vstack([big, small])
    return SimplePolygon(verts)


def shapes_to_jsonl(shapes, path):
    """Write shapes as one JSON object per line: id, kind, params, vertices."""
    with open(path, "w") as f:
        for rec in shapes:
            f.write(json.dumps(rec, separators=(",", ":")) + "\n")


def shapes_from_jsonl(path):
    with open(path) as f:
        return [json.loads(line) for line in f if line.strip()]


def shape_record(shape_id, kind, params, poly):
    return {
        "id": int(shape_id),
        "kind": str(kind),
        "params": params,
        "vertices": [[float(x), float(y)] for x, y in poly.vertices],
    }
