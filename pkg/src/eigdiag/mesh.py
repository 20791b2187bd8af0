"""Triangulation, uniform refinement and Laplacian smoothing.

Convex polygons are fanned from the centroid; simple polygons are
ear-clipped.  Refinement splits every triangle into four by edge
midpoints, which halves the longest edge exactly and keeps meshes nested
(the property Richardson extrapolation relies on).
"""

import numpy as np

from . import accel
from .errors import NotConvex, NotSimple
from .geom import ConvexPolygon, basic_metrics


class TriMesh:
    """Conforming triangle mesh with boundary flags.

    Boundary flags are recomputed from topology (a node is boundary iff
    it lies on an edge shared by exactly one triangle), so they survive
    any sequence of refine/smooth operations.
    """

    def __init__(self, nodes, triangles):
        self.nodes = np.ascontiguousarray(nodes, dtype=np.float64)
        self.triangles = np.ascontiguousarray(triangles, dtype=np.int64)
        self.boundary_node = self._boundary_flags()
        self.nodes.setflags(write=False)
        self.triangles.setflags(write=False)
        self._quality = None

    def _edge_counts(self):
        t = self.triangles
        edges = np.vstack([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        edges.sort(axis=1)
        uniq, counts = np.unique(edges, axis=0, return_counts=True)
        return uniq, counts

    def _boundary_flags(self):
        uniq, counts = self._edge_counts()
        flags = np.zeros(len(self.nodes), dtype=bool)
        bnd = uniq[counts == 1]
        flags[bnd.ravel()] = True
        return flags

    @property
    def h(self):
        if self._quality is None:
            self._quality = accel.tri_quality(self.nodes, self.triangles)
        return self._quality[0]

    @property
    def min_angle(self):
        if self._quality is None:
            self._quality = accel.tri_quality(self.nodes, self.triangles)
        return self._quality[1]

    def triangle_areas(self):
        p = self.nodes[self.triangles]
        return 0.5 * (
            (p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1])
            - (p[:, 1, 1] - p[:, 0, 1]) * (p[:, 2, 0] - p[:, 0, 0])
        )


def audit_mesh(mesh):
    """Raise AssertionError if any structural invariant is violated."""
    areas = mesh.triangle_areas()
    assert np.all(areas > 0), "inverted or degenerate triangle"
    uniq, counts = mesh._edge_counts()
    assert np.all((counts == 1) | (counts == 2)), "non-conforming edge"
    flags = np.zeros(len(mesh.nodes), dtype=bool)
    flags[uniq[counts == 1].ravel()] = True
    assert np.array_equal(flags, mesh.boundary_node), "stale boundary flags"
    # duplicate-node check
    order = np.lexsort((mesh.nodes[:, 1], mesh.nodes[:, 0]))
    pts = mesh.nodes[order]
    gaps = np.hypot(*(pts[1:] - pts[:-1]).T)
    assert np.all(gaps > 1e-12 * mesh.h), "duplicate nodes"
    return True


def triangulate_convex(poly) -> TriMesh:
    """Fan triangulation from the centroid: n triangles, n+1 nodes."""
    if not isinstance(poly, ConvexPolygon):
        raise NotConvex("fan triangulation requires a ConvexPolygon")
    _, _, c = basic_metrics(poly)
    n = len(poly.vertices)
    nodes = np.vstack([poly.vertices, [c.x, c.y]])
    tris = np.column_stack([np.arange(n), (np.arange(n) + 1) % n, np.full(n, n)])
    return TriMesh(nodes, tris)


def _point_in_triangle(p, a, b, c, tol):
    d1 = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    d2 = (c[0] - b[0]) * (p[1] - b[1]) - (c[1] - b[1]) * (p[0] - b[0])
    d3 = (a[0] - c[0]) * (p[1] - c[1]) - (a[1] - c[1]) * (p[0] - c[0])
    return d1 >= -tol and d2 >= -tol and d3 >= -tol


def triangulate_simple(poly) -> TriMesh:
    """Ear-clipping triangulation of a CCW simple polygon: n-2 triangles."""
    verts = poly.vertices
    n = len(verts)
    span = verts.max(axis=0) - verts.min(axis=0)
    scale = max(span[0], span[1])
    tol = 1e-12 * scale * scale
    idx = list(range(n))
    tris = []
    guard = 0
    while len(idx) > 3:
        m = len(idx)
        clipped = False
        for pos in range(m):
            i0, i1, i2 = idx[pos - 1], idx[pos], idx[(pos + 1) % m]
            a, b, c = verts[i0], verts[i1], verts[i2]
            cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if cross <= tol:
                continue  # reflex or flat corner
            ok = True
            for j in idx:
                if j in (i0, i1, i2):
                    continue
                if _point_in_triangle(verts[j], a, b, c, tol):
                    ok = False
                    break
            if ok:
                tris.append((i0, i1, i2))
                del idx[pos]
                clipped = True
                break
        if not clipped:
            guard += 1
            if guard > 2:
                raise NotSimple("ear clipping failed; polygon may self-intersect")
            tol *= 10.0  # retry with a looser flatness tolerance
    tris.append(tuple(idx))
    return TriMesh(verts.copy(), np.array(tris, dtype=np.int64))


def refine(mesh) -> TriMesh:
    """Split every triangle into four by edge midpoints."""
    t = mesh.triangles
    n = len(mesh.nodes)
    edges = np.vstack([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
    edges.sort(axis=1)
    uniq, inv = np.unique(edges, axis=0, return_inverse=True)
    mid = 0.5 * (mesh.nodes[uniq[:, 0]] + mesh.nodes[uniq[:, 1]])
    nodes = np.vstack([mesh.nodes, mid])
    m = len(t)
    mab = n + inv[:m]
    mbc = n + inv[m : 2 * m]
    mca = n + inv[2 * m :]
    a, b, c = t[:, 0], t[:, 1], t[:, 2]
    tris = np.vstack(
        [
            np.column_stack([a, mab, mca]),
            np.column_stack([b, mbc, mab]),
            np.column_stack([c, mca, mbc]),
            np.column_stack([mab, mbc, mca]),
        ]
    )
    return TriMesh(nodes, tris)


def smooth(mesh, iters: int) -> TriMesh:
    """Laplacian smoothing of interior nodes; boundary and topology fixed.

    Each round moves every interior node to the average of its edge
    neighbors (Jacobi update); any move that would invert an incident
    triangle is reverted for all interior nodes of that triangle.
    """
    if iters <= 0:
        return mesh
    t = mesh.triangles
    n = len(mesh.nodes)
    uniq, _ = mesh._edge_counts()
    # symmetric adjacency as index arrays
    src = np.concatenate([uniq[:, 0], uniq[:, 1]])
    dst = np.concatenate([uniq[:, 1], uniq[:, 0]])
    deg = np.bincount(src, minlength=n).astype(float)
    interior = ~mesh.boundary_node
    xy = mesh.nodes.copy()
    p0 = t[:, 0]
    p1 = t[:, 1]
    p2 = t[:, 2]
    for _ in range(iters):
        avg = np.zeros_like(xy)
        np.add.at(avg, src, xy[dst])
        avg /= deg[:, None]
        prop = np.where(interior[:, None], avg, xy)
        # revert nodes of any triangle the joint move would invert
        for _pass in range(32):
            ax = prop[p1, 0] - prop[p0, 0]
            ay = prop[p1, 1] - prop[p0, 1]
            bx = prop[p2, 0] - prop[p0, 0]
            by = prop[p2, 1] - prop[p0, 1]
            bad = (ax * by - ay * bx) <= 0
            if not bad.any():
                break
            revert = np.unique(t[bad].ravel())
            prop[revert] = xy[revert]
        xy = prop
    return TriMesh(xy, t.copy())


def mesh_stats(mesh):
    """(h, min_angle, node_count, tri_count)."""
    return mesh.h, mesh.min_angle, len(mesh.nodes), len(mesh.triangles)


def write_mesh(mesh, path):
    """Plain-text dump: header, node lines 'x y b', triangle lines 'i j k'."""
    with open(path, "w") as f:
        f.write(f"nodes {len(mesh.nodes)} tris {len(mesh.triangles)}\n")
        for (x, y), b in zip(mesh.nodes, mesh.boundary_node):
            f.write(f"{x:.17g} {y:.17g} {int(b)}\n")
        for i, j, k in mesh.triangles:
            f.write(f"{i} {j} {k}\n")


def read_mesh(path) -> TriMesh:
    with open(path) as f:
        header = f.readline().split()
        n, m = int(header[1]), int(header[3])
        nodes = np.empty((n, 2))
        for i in range(n):
            x, y, _b = f.readline().split()
            nodes[i] = float(x), float(y)
        tris = np.empty((m, 3), dtype=np.int64)
        for i in range(m):
            tris[i] = [int(v) for v in f.readline().split()]
    return TriMesh(nodes, tris)
