"""Planar convex-geometry kernel: polygons and their geometric functionals.

Computes area, perimeter, diameter, minimal width, inradius and centroid
of polygonal domains.  Diameter and width use rotating calipers; the
inradius is the Chebyshev-center linear program over the edge half-planes.
All tolerances are relative to the bounding-box scale of the input.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import DegenerateShape, NotConvex, NotSimple

REL_TOL = 1e-12


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ValueError("non-finite coordinate")


def _as_array(vertices):
    arr = np.asarray(
        [(v.x, v.y) if isinstance(v, Point2) else (v[0], v[1]) for v in vertices],
        dtype=np.float64,
    )
    if arr.ndim != 2 or arr.shape[1] != 2 or not np.all(np.isfinite(arr)):
        raise ValueError("vertices must be finite 2-D points")
    return arr


def _bbox_scale(arr):
    span = arr.max(axis=0) - arr.min(axis=0)
    return max(float(span[0]), float(span[1]), 1e-300)


def _signed_area(arr):
    x, y = arr[:, 0], arr[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _cross_products(arr):
    d = np.roll(arr, -1, axis=0) - arr
    dn = np.roll(d, -1, axis=0)
    return d[:, 0] * dn[:, 1] - d[:, 1] * dn[:, 0]


def is_strictly_convex(points) -> bool:
    """True iff the points are CCW with all turns strictly left."""
    arr = _as_array(points)
    if len(arr) < 3:
        raise ValueError("need at least 3 points")
    scale = _bbox_scale(arr)
    edges = np.roll(arr, -1, axis=0) - arr
    if np.any(np.hypot(edges[:, 0], edges[:, 1]) < 1e-12 * scale):
        return False
    return bool(np.all(_cross_products(arr) > REL_TOL * scale * scale))


def _segments_intersect(p1, p2, p3, p4, tol):
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if v > tol:
            return 1
        if v < -tol:
            return -1
        return 0

    o1 = orient(p1, p2, p3)
    o2 = orient(p1, p2, p4)
    o3 = orient(p3, p4, p1)
    o4 = orient(p3, p4, p2)
    return o1 != o2 and o3 != o4 and o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0


class SimplePolygon:
    """Non-self-intersecting closed polygon, stored CCW."""

    def __init__(self, vertices, check_simple=True):
        arr = _as_array(vertices)
        if len(arr) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        area = _signed_area(arr)
        if area < 0:
            arr = arr[::-1].copy()
            area = -area
        scale = _bbox_scale(arr)
        if area < 1e-14 * scale * scale:
            raise DegenerateShape(f"polygon area {area:g} below tolerance")
        if check_simple:
            self._check_simple(arr, scale)
        self.vertices = arr
        self.vertices.setflags(write=False)

    @staticmethod
    def _check_simple(arr, scale):
        n = len(arr)
        tol = REL_TOL * scale * scale
        segs = [(arr[i], arr[(i + 1) % n]) for i in range(n)]
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue  # adjacent through the wrap
                if _segments_intersect(*segs[i], *segs[j], tol):
                    raise NotSimple(f"edges {i} and {j} intersect")

    def __len__(self):
        return len(self.vertices)


class ConvexPolygon(SimplePolygon):
    """Strictly convex polygon, stored CCW.

    Clockwise input is reversed; collinear or duplicate vertices are
    rejected (callers merge them before construction).
    """

    def __init__(self, vertices):
        arr = _as_array(vertices)
        if len(arr) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        if _signed_area(arr) < 0:
            arr = arr[::-1].copy()
        if not is_strictly_convex(arr):
            raise NotConvex("vertices are not in strictly convex position")
        # convexity implies simplicity; skip the quadratic check
        super().__init__(arr, check_simple=False)


@dataclass(frozen=True)
class ShapeMetrics:
    area: float
    perimeter: float
    diameter: float
    inradius: float
    width: float
    centroid: Point2


def basic_metrics(poly):
    """(area, perimeter, centroid) by the shoelace formula."""
    arr = poly.vertices
    area = _signed_area(arr)
    nxt = np.roll(arr, -1, axis=0)
    edges = nxt - arr
    perimeter = float(np.hypot(edges[:, 0], edges[:, 1]).sum())
    cross = arr[:, 0] * nxt[:, 1] - nxt[:, 0] * arr[:, 1]
    cx = float(np.sum((arr[:, 0] + nxt[:, 0]) * cross) / (6.0 * area))
    cy = float(np.sum((arr[:, 1] + nxt[:, 1]) * cross) / (6.0 * area))
    return area, perimeter, Point2(cx, cy)


def diameter(poly) -> float:
    """Max vertex-pair distance via rotating calipers."""
    if not isinstance(poly, ConvexPolygon):
        raise NotConvex("diameter requires a ConvexPolygon")
    arr = poly.vertices
    n = len(arr)
    if n == 3:
        return float(np.sqrt(brute_force_diameter_sq(arr)))
    best = 0.0
    k = 1
    for i in range(n):
        j = (i + 1) % n
        e = arr[j] - arr[i]
        # advance the antipodal vertex while the triangle area grows
        while True:
            nk = (k + 1) % n
            cur = e[0] * (arr[k][1] - arr[i][1]) - e[1] * (arr[k][0] - arr[i][0])
            nxt = e[0] * (arr[nk][1] - arr[i][1]) - e[1] * (arr[nk][0] - arr[i][0])
            if nxt > cur:
                k = nk
            else:
                break
        for p in (i, j):
            d = arr[k] - arr[p]
            best = max(best, float(d[0] * d[0] + d[1] * d[1]))
    return float(np.sqrt(best))


def brute_force_diameter_sq(arr):
    """O(n^2) squared-diameter oracle."""
    diff = arr[:, None, :] - arr[None, :, :]
    return float((diff * diff).sum(axis=2).max())


def min_width(poly) -> float:
    """Minimal width: min over edges of the farthest-vertex distance."""
    if not isinstance(poly, ConvexPolygon):
        raise NotConvex("min_width requires a ConvexPolygon")
    arr = poly.vertices
    n = len(arr)
    best = np.inf
    k = 1
    for i in range(n):
        j = (i + 1) % n
        e = arr[j] - arr[i]
        elen = float(np.hypot(e[0], e[1]))
        while True:
            nk = (k + 1) % n
            cur = e[0] * (arr[k][1] - arr[i][1]) - e[1] * (arr[k][0] - arr[i][0])
            nxt = e[0] * (arr[nk][1] - arr[i][1]) - e[1] * (arr[nk][0] - arr[i][0])
            if nxt > cur:
                k = nk
            else:
                break
        cur = e[0] * (arr[k][1] - arr[i][1]) - e[1] * (arr[k][0] - arr[i][0])
        best = min(best, cur / elen)
    return float(best)


def brute_force_width(arr):
    """O(n*m) width oracle: all edges x all vertices."""
    n = len(arr)
    best = np.inf
    for i in range(n):
        j = (i + 1) % n
        e = arr[j] - arr[i]
        elen = np.hypot(e[0], e[1])
        dist = (e[0] * (arr[:, 1] - arr[i][1]) - e[1] * (arr[:, 0] - arr[i][0])) / elen
        best = min(best, float(dist.max()))
    return float(best)


def inradius(poly):
    """(r, incenter) of the largest inscribed disc.

    Solves max rho s.t. (c - v_i).n_i >= rho over all edges, n_i the
    inward unit normal; this is the Chebyshev-center LP.
    """
    if not isinstance(poly, ConvexPolygon):
        raise NotConvex("inradius requires a ConvexPolygon")
    arr = poly.vertices
    edges = np.roll(arr, -1, axis=0) - arr
    elen = np.hypot(edges[:, 0], edges[:, 1])
    # inward normal of CCW edge (dx,dy) is (-dy,dx)/len
    nx = -edges[:, 1] / elen
    ny = edges[:, 0] / elen
    # variables (cx, cy, rho); constraints -n.c + rho <= -n.v
    a_ub = np.column_stack([-nx, -ny, np.ones(len(arr))])
    b_ub = -(nx * arr[:, 0] + ny * arr[:, 1])
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=a_ub,
        b_ub=b_ub,
        bounds=[(None, None), (None, None), (0.0, None)],
        method="highs",
    )
    if not res.success:
        raise NotConvex(f"inradius LP failed: {res.message}")
    cx, cy, rho = res.x
    # refine to machine precision on the active constraint set
    slack = b_ub - a_ub @ res.x
    scale = _bbox_scale(arr)
    active = np.where(slack < 1e-6 * scale)[0]
    if len(active) >= 2:
        sol, *_ = np.linalg.lstsq(a_ub[active], b_ub[active], rcond=None)
        new_slack = b_ub - a_ub @ sol
        if sol[2] >= rho - 1e-9 * scale and np.all(new_slack >= -1e-12 * scale):
            cx, cy, rho = sol
    return float(rho), Point2(float(cx), float(cy))


def metrics(poly) -> ShapeMetrics:
    """All geometric functionals of a convex polygon."""
    area, perimeter, centroid = basic_metrics(poly)
    r, _ = inradius(poly)
    return ShapeMetrics(
        area=area,
        perimeter=perimeter,
        diameter=diameter(poly),
        inradius=r,
        width=min_width(poly),
        centroid=centroid,
    )


def normalize_unit_area(poly):
    """Scale about the centroid so the area becomes exactly 1."""
    area, _, c = basic_metrics(poly)
    if area <= 0:
        raise DegenerateShape("cannot normalize non-positive area")
    s = 1.0 / np.sqrt(area)
    ctr = np.array([c.x, c.y])
    verts = ctr + (poly.vertices - ctr) * s
    return type(poly)(verts)
