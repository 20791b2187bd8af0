"""Laplace eigenvalue diagrams of planar convex shapes.

P1 finite elements on polygonal domains, unbiased random convex polygon
generation, a catalog of spectral-geometric inequalities, and tooling to
sample and plot the (|O|*lambda1, |O|*mu1) diagram.
"""

from .accel import BACKEND
from .geom import (
    ConvexPolygon,
    Point2,
    ShapeMetrics,
    SimplePolygon,
    basic_metrics,
    diameter,
    inradius,
    is_strictly_convex,
    metrics,
    min_width,
    normalize_unit_area,
)
from .shapes import (
    ConvexityStats,
    DumbbellSpec,
    convexity_probability,
    dumbbell,
    ellipse_polygon,
    isosceles_triangle,
    rectangle,
    regular_ngon,
    rhombus,
    valtr_random,
)
from .mesh import TriMesh, mesh_stats, refine, smooth, triangulate_convex, triangulate_simple
from .fem import (
    EigenResult,
    SpectralPoint,
    assemble,
    dirichlet_lambda1,
    neumann_mu1,
    richardson,
    solve_shape,
    strip_test_function,
)
from .inequalities import (
    BesselConstants,
    InequalityReport,
    F_functional,
    bessel_constants,
    check_all,
    reference_curves,
)
from .diagram import (
    DiagramRecord,
    SampleConfig,
    family_trace,
    read_csv,
    run_sample,
    verify_report,
    write_csv,
    write_svg,
)

__version__ = "0.1.0"
