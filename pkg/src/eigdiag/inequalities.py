"""Inequality catalog for unit-area convex shapes, Bessel constants, and
the product functional F = x * y of the diagram coordinates.

Theorem-grade inequalities are asserted with a 0.5% slack on spectral
quantities (FEM + polygonalization error) and 1e-9 on purely geometric
ones.  The conjectured band for F is reported with margins but never
asserted: the exact square values F = 2*pi^4 already exceed the
conjectured disc bound pi^2 * j01^2 * j11p^2.
"""

import json
import math
from dataclasses import dataclass, field, asdict
from typing import List

from scipy.special import j0, j1, jvp

from .errors import InvalidParam

SPECTRAL_TOL = 0.005
GEOMETRIC_TOL = 1e-9

_J01_REF = 2.404825557695773
_J11P_REF = 1.841183781340659


@dataclass(frozen=True)
class BesselConstants:
    j01: float
    j11p: float


def bessel_constants() -> BesselConstants:
    """First zero of J0 and first zero of J1', by Newton iteration."""
    x = 2.4
    for _ in range(60):
        step = j0(x) / j1(x)  # J0' = -J1
        x += step
        if abs(step) < 1e-15:
            break
    y = 1.8
    for _ in range(60):
        step = jvp(1, y, 1) / jvp(1, y, 2)
        y -= step
        if abs(step) < 1e-15:
            break
    if abs(x - _J01_REF) > 1e-12 or abs(y - _J11P_REF) > 1e-12:
        raise ArithmeticError("Bessel Newton iteration drifted from reference values")
    return BesselConstants(j01=x, j11p=y)


_BC = None


def _bc() -> BesselConstants:
    global _BC
    if _BC is None:
        _BC = bessel_constants()
    return _BC


@dataclass
class Check:
    name: str
    lhs: float
    rhs: float
    margin: float
    status: str  # holds | violated | equality_within_tol


@dataclass
class InequalityReport:
    checks: List[Check] = field(default_factory=list)
    advisory: List[Check] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(c.status != "violated" for c in self.checks)

    def to_json(self, shape_id=None) -> str:
        payload = {
            "shape_id": shape_id,
            "checks": [asdict(c) for c in self.checks],
            "advisory": [asdict(c) for c in self.advisory],
        }
        return json.dumps(payload)


def _check(name, lhs, rhs, tol):
    """Record lhs <= rhs with relative slack tol."""
    scale = max(abs(lhs), abs(rhs), 1e-300)
    margin = rhs - lhs
    if margin < -tol * scale:
        status = "violated"
    elif abs(margin) <= tol * scale:
        status = "equality_within_tol"
    else:
        status = "holds"
    return Check(name=name, lhs=lhs, rhs=rhs, margin=margin, status=status)


def F_functional(spectral) -> float:
    return spectral.x * spectral.y


def check_all(metrics, spectral, spectral_tol=SPECTRAL_TOL, geom_tol=GEOMETRIC_TOL) -> InequalityReport:
    """Evaluate every catalogued inequality for one unit-area convex shape."""
    bc = _bc()
    a = metrics.area
    d = metrics.diameter
    r = metrics.inradius
    w = metrics.width
    lam = spectral.x / a  # unit area: x = lambda1, but stay scale-correct
    mu = spectral.y / a
    if min(a, d, r, w, spectral.x, spectral.y) <= 0:
        raise InvalidParam("metrics and spectral values must be positive")
    f_val = spectral.F
    pi = math.pi
    report = InequalityReport()
    add = report.checks.append
    add(_check("faber_krahn", pi * bc.j01**2, spectral.x, spectral_tol))
    add(_check("weinberger", spectral.y, pi * bc.j11p**2, spectral_tol))
    add(_check("hersch", pi**2 / (4 * r**2), lam, spectral_tol))
    add(_check("payne_weinberger", pi**2 / d**2, mu, spectral_tol))
    add(_check("hll_width", mu, pi**2 * w**2 / a**2, spectral_tol))
    add(_check("lambda_inradius", lam, bc.j01**2 / r**2, spectral_tol))
    add(_check("lambda_width", lam, 9 * bc.j01**2 / w**2, spectral_tol))
    hcs = r * math.sqrt(max(d**2 - 4 * r**2, 0.0)) + r**2 * (pi - 2 * math.acos(min(2 * r / d, 1.0)))
    add(_check("hcs_area", hcs, a, geom_tol))
    add(_check("f_lower", pi**4 / 4, f_val, spectral_tol))
    add(_check("f_upper", f_val, 9 * pi**2 * bc.j01**2, spectral_tol))
    # conjectured band: reported only, never asserted
    report.advisory.append(_check("conjecture_f_lower", pi**2 * bc.j01**2, f_val, spectral_tol))
    report.advisory.append(
        _check("conjecture_f_upper", f_val, pi**2 * bc.j01**2 * bc.j11p**2, spectral_tol)
    )
    return report


def reference_curves():
    """Hyperbolas y = c/x and strip lines bounding the diagram."""
    bc = _bc()
    pi = math.pi
    return [
        ("f_lower", pi**4 / 4, "theorem-lower-hyperbola"),
        ("f_upper", 9 * pi**2 * bc.j01**2, "theorem-upper-hyperbola"),
        ("conjecture_f_lower", pi**2 * bc.j01**2, "conjecture-lower-hyperbola"),
        ("conjecture_f_upper", pi**2 * bc.j01**2 * bc.j11p**2, "conjecture-upper-hyperbola"),
        ("faber_krahn_line", pi * bc.j01**2, "strip-line-x"),
        ("weinberger_line", pi * bc.j11p**2, "strip-line-y"),
    ]
