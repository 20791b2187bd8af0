"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

Set ``EIGDIAG_NO_NUMBA=1`` to force the numpy path (useful on machines
without a working numba install, and for the benchmark in
``benchmarks/bench_accel.py``).  Both paths produce identical results up
to floating-point associativity; the COO layouts are identical.
"""

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("EIGDIAG_NO_NUMBA", "") not in ("", "0")

HAVE_NUMBA = False
if not _FORCE_NUMPY:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        pass

BACKEND = "numba" if HAVE_NUMBA else "numpy"

# local P1 mass matrix pattern, scaled by area/12 per element
_MASS_PATTERN = (np.ones((3, 3)) + np.eye(3)).ravel()

# COO layout per element: rows (i,i,i,j,j,j,k,k,k), cols (i,j,k)*3
_ROW_SLOT = np.array([0, 0, 0, 1, 1, 1, 2, 2, 2], dtype=np.int64)
_COL_SLOT = np.array([0, 1, 2, 0, 1, 2, 0, 1, 2], dtype=np.int64)


def _assemble_coo_numpy(xy, tris):
    x = xy[tris, 0]
    y = xy[tris, 1]
    b = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    c = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    area2 = x[:, 0] * b[:, 0] + x[:, 1] * b[:, 1] + x[:, 2] * b[:, 2]
    kloc = (b[:, :, None] * b[:, None, :] + c[:, :, None] * c[:, None, :])
    kloc /= (2.0 * area2)[:, None, None]
    mloc = (area2 / 24.0)[:, None] * _MASS_PATTERN[None, :]
    rows = tris[:, _ROW_SLOT].ravel()
    cols = tris[:, _COL_SLOT].ravel()
    return rows, cols, kloc.reshape(-1, 9).ravel(), mloc.ravel()


def _tri_quality_numpy(xy, tris):
    x = xy[tris, 0]
    y = xy[tris, 1]
    ex = x[:, [1, 2, 0]] - x
    ey = y[:, [1, 2, 0]] - y
    lengths = np.hypot(ex, ey)
    h = float(lengths.max())
    # angle at vertex a lies between outgoing edge e_a and reversed e_{a-1}
    min_angle = np.pi
    for a in range(3):
        p = (a + 2) % 3
        ux, uy = ex[:, a], ey[:, a]
        vx, vy = -ex[:, p], -ey[:, p]
        dot = ux * vx + uy * vy
        crs = ux * vy - uy * vx
        ang = np.arctan2(np.abs(crs), dot)
        min_angle = min(min_angle, float(ang.min()))
    return h, min_angle


if HAVE_NUMBA:

    @njit(cache=True)
    def _assemble_coo_numba(xy, tris):  # pragma: no cover - exercised via wrapper
        m = tris.shape[0]
        rows = np.empty(9 * m, dtype=np.int64)
        cols = np.empty(9 * m, dtype=np.int64)
        kv = np.empty(9 * m)
        mv = np.empty(9 * m)
        b = np.empty(3)
        c = np.empty(3)
        for t in range(m):
            i0, i1, i2 = tris[t, 0], tris[t, 1], tris[t, 2]
            x0, y0 = xy[i0, 0], xy[i0, 1]
            x1, y1 = xy[i1, 0], xy[i1, 1]
            x2, y2 = xy[i2, 0], xy[i2, 1]
            b[0] = y1 - y2
            b[1] = y2 - y0
            b[2] = y0 - y1
            c[0] = x2 - x1
            c[1] = x0 - x2
            c[2] = x1 - x0
            area2 = x0 * b[0] + x1 * b[1] + x2 * b[2]
            base = 9 * t
            s = 0
            for a in range(3):
                for bb in range(3):
                    rows[base + s] = tris[t, a]
                    cols[base + s] = tris[t, bb]
                    kv[base + s] = (b[a] * b[bb] + c[a] * c[bb]) / (2.0 * area2)
                    mv[base + s] = (area2 / 24.0) * (2.0 if a == bb else 1.0)
                    s += 1
        return rows, cols, kv, mv

    @njit(cache=True)
    def _tri_quality_numba(xy, tris):  # pragma: no cover - exercised via wrapper
        h = 0.0
        min_angle = np.pi
        for t in range(tris.shape[0]):
            for a in range(3):
                i = tris[t, a]
                j = tris[t, (a + 1) % 3]
                k = tris[t, (a + 2) % 3]
                ux = xy[j, 0] - xy[i, 0]
                uy = xy[j, 1] - xy[i, 1]
                vx = xy[k, 0] - xy[i, 0]
                vy = xy[k, 1] - xy[i, 1]
                e = (ux * ux + uy * uy) ** 0.5
                if e > h:
                    h = e
                dot = ux * vx + uy * vy
                crs = ux * vy - uy * vx
                ang = np.arctan2(abs(crs), dot)
                if ang < min_angle:
                    min_angle = ang
        return h, min_angle


def assemble_coo(xy, tris):
    """COO arrays (rows, cols, stiffness, mass) for P1 elements.

    Stiffness entry K_ab = grad(phi_a).grad(phi_b) * area; mass is the
    consistent (area/12) * [[2,1,1],[1,2,1],[1,1,2]] block.
    """
    xy = np.ascontiguousarray(xy, dtype=np.float64)
    tris = np.ascontiguousarray(tris, dtype=np.int64)
    if HAVE_NUMBA:
        return _assemble_coo_numba(xy, tris)
    return _assemble_coo_numpy(xy, tris)


def tri_quality(xy, tris):
    """(max edge length, min interior angle) over all triangles."""
    xy = np.ascontiguousarray(xy, dtype=np.float64)
    tris = np.ascontiguousarray(tris, dtype=np.int64)
    if HAVE_NUMBA:
        return _tri_quality_numba(xy, tris)
    return _tri_quality_numpy(xy, tris)
