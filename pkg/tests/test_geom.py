import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigdiag import (
    ConvexPolygon,
    SimplePolygon,
    basic_metrics,
    diameter,
    inradius,
    is_strictly_convex,
    metrics,
    min_width,
    normalize_unit_area,
    valtr_random,
)
from eigdiag.errors import DegenerateShape, NotConvex
from eigdiag.geom import brute_force_diameter_sq, brute_force_width

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def equilateral(side=1.0):
    return ConvexPolygon([(0, 0), (side, 0), (side / 2, side * math.sqrt(3) / 2)])


def test_strict_convexity_predicate():
    assert is_strictly_convex(SQUARE)
    assert not is_strictly_convex([(0, 0), (1, 0), (2, 0), (1, 1)])  # collinear triple
    assert not is_strictly_convex([(0, 0), (0, 1), (1, 0)])  # clockwise


def test_clockwise_input_is_reversed_not_rejected():
    poly = ConvexPolygon(list(reversed(SQUARE)))
    assert basic_metrics(poly)[0] == pytest.approx(1.0)


def test_collinear_vertices_rejected():
    with pytest.raises(NotConvex):
        ConvexPolygon([(0, 0), (1, 0), (2, 0), (1, 1)])


def test_basic_metrics_square_and_triangle():
    area, perim, c = basic_metrics(ConvexPolygon(SQUARE))
    assert area == pytest.approx(1.0)
    assert perim == pytest.approx(4.0)
    assert (c.x, c.y) == (pytest.approx(0.5), pytest.approx(0.5))
    area, _, _ = basic_metrics(ConvexPolygon([(0, 0), (1, 0), (0, 1)]))
    assert area == pytest.approx(0.5)


def test_basic_metrics_hexagon():
    theta = 2 * np.pi * np.arange(6) / 6
    hexagon = ConvexPolygon(np.column_stack([np.cos(theta), np.sin(theta)]))  # side 1
    area, _, _ = basic_metrics(hexagon)
    assert area == pytest.approx(3 * math.sqrt(3) / 2, rel=1e-12)


def test_degenerate_area_raises():
    with pytest.raises(DegenerateShape):
        SimplePolygon([(0, 0), (1, 0), (2, 1e-17)])


def test_diameter_examples():
    assert diameter(ConvexPolygon(SQUARE)) == pytest.approx(math.sqrt(2))
    theta = 2 * np.pi * np.arange(5) / 5
    pentagon = ConvexPolygon(np.column_stack([np.cos(theta), np.sin(theta)]))
    assert diameter(pentagon) == pytest.approx(2 * math.sin(2 * math.pi / 5), rel=1e-12)
    rect = ConvexPolygon([(0, 0), (10, 0), (10, 0.1), (0, 0.1)])
    assert diameter(rect) == pytest.approx(math.sqrt(100.01), rel=1e-12)


def test_width_examples():
    rect = ConvexPolygon([(0, 0), (3, 0), (3, 2), (0, 2)])
    assert min_width(rect) == pytest.approx(2.0)
    assert min_width(equilateral()) == pytest.approx(math.sqrt(3) / 2, rel=1e-12)
    assert min_width(ConvexPolygon(SQUARE)) == pytest.approx(1.0)


def test_inradius_examples():
    r, c = inradius(ConvexPolygon(SQUARE))
    assert r == pytest.approx(0.5, abs=1e-9)
    assert (c.x, c.y) == (pytest.approx(0.5, abs=1e-9), pytest.approx(0.5, abs=1e-9))
    r, _ = inradius(equilateral())
    assert r == pytest.approx(math.sqrt(3) / 6, abs=1e-9)
    r, _ = inradius(ConvexPolygon([(0, 0), (2, 0), (2, 0.5), (0, 0.5)]))
    assert r == pytest.approx(0.25, abs=1e-9)


def test_diameter_requires_convex():
    tri = SimplePolygon([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(NotConvex):
        diameter(tri)
    with pytest.raises(NotConvex):
        min_width(tri)
    with pytest.raises(NotConvex):
        inradius(tri)


def test_metrics_square():
    m = metrics(ConvexPolygon(SQUARE))
    assert (m.area, m.perimeter) == (pytest.approx(1.0), pytest.approx(4.0))
    assert m.diameter == pytest.approx(math.sqrt(2))
    assert m.inradius == pytest.approx(0.5, abs=1e-9)
    assert m.width == pytest.approx(1.0)


def test_metrics_equilateral_scott_equality():
    m = metrics(equilateral())
    assert m.area == pytest.approx(math.sqrt(3) / 4, rel=1e-12)
    assert m.diameter == pytest.approx(1.0)
    assert m.inradius == pytest.approx(math.sqrt(3) / 6, abs=1e-9)
    assert m.width == pytest.approx(math.sqrt(3) / 2, rel=1e-12)
    lhs = math.sqrt(3) * (m.width / m.inradius - 2) * m.diameter
    assert lhs == pytest.approx(2 * m.width, rel=1e-6)


def test_metrics_disc_polygon():
    theta = 2 * np.pi * np.arange(256) / 256
    disc = ConvexPolygon(np.column_stack([np.cos(theta), np.sin(theta)]))
    m = metrics(disc)
    assert m.area == pytest.approx(math.pi, rel=1e-3)
    assert m.diameter == pytest.approx(2.0, rel=1e-3)
    hcs = m.inradius * math.sqrt(m.diameter**2 - 4 * m.inradius**2) + m.inradius**2 * (
        math.pi - 2 * math.acos(2 * m.inradius / m.diameter)
    )
    assert hcs == pytest.approx(m.area, rel=1e-3)


def _shape_inequalities(m):
    assert 2 * m.inradius <= m.width * (1 + 1e-9)
    assert m.width <= m.diameter * (1 + 1e-9)
    assert m.width <= m.perimeter / math.pi * (1 + 1e-9) <= m.diameter * (1 + 1e-9) ** 2
    assert m.area <= math.pi * m.diameter**2 / 4 * (1 + 1e-9)
    assert m.width**2 <= math.sqrt(3) * m.area * (1 + 1e-9)
    hcs = m.inradius * math.sqrt(max(m.diameter**2 - 4 * m.inradius**2, 0)) + m.inradius**2 * (
        math.pi - 2 * math.acos(min(2 * m.inradius / m.diameter, 1))
    )
    assert m.area >= hcs * (1 - 1e-9)
    assert math.sqrt(3) * (m.width / m.inradius - 2) * m.diameter <= 2 * m.width * (1 + 1e-7)


@pytest.mark.parametrize("seed", range(0, 40, 4))
def test_random_polygons_oracles_and_invariants(seed):
    poly = valtr_random(3 + seed % 25, seed * 977 + 5)
    arr = poly.vertices
    assert diameter(poly) == pytest.approx(math.sqrt(brute_force_diameter_sq(arr)), rel=1e-9)
    assert min_width(poly) == pytest.approx(brute_force_width(arr), rel=1e-9)
    r, c = inradius(poly)
    edges = np.roll(arr, -1, axis=0) - arr
    elen = np.hypot(edges[:, 0], edges[:, 1])
    dist = (edges[:, 0] * (c.y - arr[:, 1]) - edges[:, 1] * (c.x - arr[:, 0])) / elen
    assert np.all(dist >= r - 1e-9)
    assert np.any(dist < r + 1e-6)
    _shape_inequalities(metrics(poly))


@settings(max_examples=25, deadline=None)
@given(t=st.floats(min_value=0.05, max_value=50), seed=st.integers(min_value=0, max_value=10**6))
def test_scale_invariance(t, seed):
    poly = valtr_random(12, seed)
    m1 = metrics(poly)
    m2 = metrics(ConvexPolygon(poly.vertices * t))
    assert m2.area == pytest.approx(m1.area * t * t, rel=1e-12)
    assert m2.perimeter == pytest.approx(m1.perimeter * t, rel=1e-12)
    assert m2.diameter == pytest.approx(m1.diameter * t, rel=1e-12)
    assert m2.width == pytest.approx(m1.width * t, rel=1e-12)
    assert m2.inradius == pytest.approx(m1.inradius * t, rel=1e-7)


def test_normalize_unit_area():
    big = ConvexPolygon([(0, 0), (2, 0), (2, 2), (0, 2)])
    unit = normalize_unit_area(big)
    assert basic_metrics(unit)[0] == pytest.approx(1.0, abs=1e-12)
    assert diameter(unit) == pytest.approx(diameter(big) / 2, rel=1e-12)
    # unit-area rhombus is a fixed point
    rho = ConvexPolygon([(4, 0), (0, 0.125), (-4, 0), (0, -0.125)])
    again = normalize_unit_area(rho)
    assert np.allclose(again.vertices, rho.vertices, atol=1e-12)
