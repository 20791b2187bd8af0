"""P1 finite elements: stiffness/mass assembly, first Dirichlet and first
nonzero Neumann eigenvalues, Richardson extrapolation, strip test functions.

Eigenvalues come from ARPACK shift-invert Lanczos (scipy.sparse.linalg.eigsh
with a sparse LU factorization); starting vectors are fixed so every solve
is deterministic.  P1 eigenvalues converge from above at O(h^2), which the
two-level Richardson step exploits.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import accel, geom
from .errors import MismatchedMeshes, NoConvergence, NoMeanZero, SpuriousKernel, TooCoarse
from .geom import ConvexPolygon, ShapeMetrics, basic_metrics, normalize_unit_area
from .mesh import refine, smooth, triangulate_convex, triangulate_simple

RESIDUAL_TOL = 1e-8
MEAN_FREE_TOL = 1e-8


@dataclass
class EigenResult:
    eigenvalue: float
    eigenvector: np.ndarray
    h: float
    residual: float
    extrapolated: Optional[float] = None
    error_estimate: Optional[float] = None

    @property
    def best(self) -> float:
        return self.eigenvalue if self.extrapolated is None else self.extrapolated


@dataclass(frozen=True)
class SpectralPoint:
    x: float
    y: float
    F: float


def assemble(mesh):
    """(K, M) CSR matrices for the P1 basis on the mesh."""
    rows, cols, kv, mv = accel.assemble_coo(mesh.nodes, mesh.triangles)
    n = len(mesh.nodes)
    k = sp.coo_matrix((kv, (rows, cols)), shape=(n, n)).tocsr()
    m = sp.coo_matrix((mv, (rows, cols)), shape=(n, n)).tocsr()
    return k, m


def _start_vector(n):
    # fixed stream: determinism of every eigsh call
    return np.random.default_rng(0x5EED).standard_normal(n)


def _residual(k, m, lam, u):
    return float(np.linalg.norm(k @ u - lam * (m @ u)) / np.linalg.norm(m @ u))


def _polish(k, m, lam, u, deflate_constants=False, shift=0.0, steps=8):
    """Inverse iteration to drive the residual below RESIDUAL_TOL * lam.

    Factorizes K + shift*M once; with deflation the iteration is kept
    M-orthogonal to constants so it converges to the first nonzero mode.
    """
    lu = spla.splu((k + shift * m).tocsc() if shift else k.tocsc())
    ones = np.ones(k.shape[0])
    m_ones = m @ ones
    total = ones @ m_ones
    for _ in range(steps):
        res = _residual(k, m, lam, u)
        if res <= RESIDUAL_TOL * lam:
            return lam, u, res
        u = lu.solve(m @ u)
        if deflate_constants:
            u = u - (ones @ (m @ u)) / total * ones
        u = u / np.sqrt(u @ (m @ u))
        lam = float(u @ (k @ u))
    res = _residual(k, m, lam, u)
    if res > RESIDUAL_TOL * lam:
        raise NoConvergence(f"residual {res:g} exceeds {RESIDUAL_TOL * lam:g} after polishing")
    return lam, u, res


def dirichlet_lambda1(mesh) -> EigenResult:
    """Smallest Dirichlet eigenvalue via shift-invert about 0."""
    k, m = assemble(mesh)
    interior = ~mesh.boundary_node
    if int(interior.sum()) < 10:
        raise TooCoarse(f"only {int(interior.sum())} interior nodes")
    ki = k[interior][:, interior].tocsc()
    mi = m[interior][:, interior].tocsc()
    try:
        vals, vecs = spla.eigsh(
            ki, k=1, M=mi, sigma=0.0, which="LM", v0=_start_vector(ki.shape[0]), maxiter=500
        )
    except spla.ArpackNoConvergence as exc:
        raise NoConvergence("Dirichlet eigsh did not converge") from exc
    lam, ui, res = _polish(ki, mi, float(vals[0]), vecs[:, 0])
    u = np.zeros(len(mesh.nodes))
    u[interior] = ui
    return EigenResult(eigenvalue=lam, eigenvector=u, h=mesh.h, residual=res)


def neumann_mu1(mesh) -> EigenResult:
    """Smallest nonzero Neumann eigenvalue.

    Shift-invert about -1 (K + M is positive definite) for the three
    smallest eigenvalues of K u = mu M u, then returns the smallest one
    whose eigenvector is M-mean-free; the constant mode carries mu = 0.
    """
    k, m = assemble(mesh)
    kc = k.tocsc()
    mc = m.tocsc()
    try:
        vals, vecs = spla.eigsh(
            kc, k=3, M=mc, sigma=-1.0, which="LM", v0=_start_vector(kc.shape[0]), maxiter=500
        )
    except spla.ArpackNoConvergence as exc:
        raise NoConvergence("Neumann eigsh did not converge") from exc
    order = np.argsort(vals)
    ones = np.ones(kc.shape[0])
    for idx in order:
        u = vecs[:, idx]
        mean = abs(ones @ (mc @ u)) / np.sqrt(u @ (mc @ u))
        if mean < MEAN_FREE_TOL:
            mu, u, res = _polish(kc, mc, float(vals[idx]), u, deflate_constants=True, shift=1.0)
            return EigenResult(eigenvalue=mu, eigenvector=u, h=mesh.h, residual=res)
    raise SpuriousKernel("no mean-free eigenvector among the 3 smallest modes")


def richardson(coarse: EigenResult, fine: EigenResult):
    """Eliminate the O(h^2) term from a nested pair of eigenvalues."""
    if abs(fine.h - coarse.h / 2.0) > 1e-12 * coarse.h:
        raise MismatchedMeshes(f"h_fine={fine.h:g} is not h_coarse/2={coarse.h / 2:g}")
    extrapolated = fine.eigenvalue + (fine.eigenvalue - coarse.eigenvalue) / 3.0
    error_estimate = abs(fine.eigenvalue - coarse.eigenvalue) / 3.0
    return extrapolated, error_estimate


def mesh_pipeline(poly, refinements: int, smooth_iters: int = 4):
    """(coarse, fine) nested meshes: refine+smooth to level refinements-1,
    then one plain refinement so h_fine = h_coarse / 2 exactly."""
    if isinstance(poly, ConvexPolygon):
        mesh = triangulate_convex(poly)
    else:
        mesh = triangulate_simple(poly)
    for _ in range(max(refinements - 1, 0)):
        mesh = smooth(refine(mesh), smooth_iters)
    return mesh, refine(mesh)


def solve_shape(poly, refinements: int):
    """Full pipeline: normalize, mesh, solve both eigenvalues at two nested
    levels, extrapolate.  Returns (SpectralPoint, (lam, mu), metrics)."""
    poly = normalize_unit_area(poly)
    coarse, fine = mesh_pipeline(poly, refinements)
    lam_c = dirichlet_lambda1(coarse)
    lam_f = dirichlet_lambda1(fine)
    lam_f.extrapolated, lam_f.error_estimate = richardson(lam_c, lam_f)
    mu_c = neumann_mu1(coarse)
    mu_f = neumann_mu1(fine)
    mu_f.extrapolated, mu_f.error_estimate = richardson(mu_c, mu_f)
    x = lam_f.extrapolated
    y = mu_f.extrapolated
    point = SpectralPoint(x=x, y=y, F=x * y)
    if isinstance(poly, ConvexPolygon):
        shape_metrics = geom.metrics(poly)
    else:
        area, perim, centroid = basic_metrics(poly)
        shape_metrics = ShapeMetrics(
            area=area,
            perimeter=perim,
            diameter=float("nan"),
            inradius=float("nan"),
            width=float("nan"),
            centroid=centroid,
        )
    return point, (lam_f, mu_f), shape_metrics


def strip_test_function(mesh, direction, window_length: float):
    """Mean-zero ramp profile along a direction and its Rayleigh quotient.

    The profile is -1, then a half-period cosine ramp over a window of
    the given length, then +1.  The window offset is found by bisection
    so the M-weighted mean vanishes; the returned Rayleigh quotient
    v'Kv / v'Mv is an upper bound for the discrete first nonzero Neumann
    eigenvalue of the same mesh (min-max principle).
    """
    direction = np.asarray(direction, dtype=float)
    direction = direction / np.linalg.norm(direction)
    t = mesh.nodes @ direction
    tmin, tmax = float(t.min()), float(t.max())
    if window_length <= 0:
        raise NoMeanZero("window length must be positive")
    k, m = assemble(mesh)
    ones = np.ones(len(t))
    total = ones @ (m @ ones)

    def profile(a):
        v = np.where(
            t <= a, -1.0, np.where(t >= a + window_length, 1.0, -np.cos(np.pi * (t - a) / window_length))
        )
        return v

    def mean(a):
        v = profile(a)
        return ones @ (m @ v)

    lo, hi = tmin - window_length, tmax
    f_lo, f_hi = mean(lo), mean(hi)
    if not (f_lo > 0 >= f_hi or f_lo >= 0 > f_hi):
        raise NoMeanZero("profile window cannot balance the mean on this mesh")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mean(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16 * max(abs(tmin), abs(tmax), 1.0):
            break
    v = profile(0.5 * (lo + hi))
    # exact M-orthogonality to constants, up to rounding
    v = v - (ones @ (m @ v)) / total
    rayleigh = float((v @ (k @ v)) / (v @ (m @ v)))
    return v, rayleigh
