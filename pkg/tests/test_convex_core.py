import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_polygon
from sdcfence import (AngleInterval, ConvexBody, DegenerateError, DomainError, Frame,
                      arc_param_left, arc_param_right, boundary_arc_length, normal_cone,
                      reverse_gauss, support_derivatives, support_integral, support_value,
                      tangent_points)

coords = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
point_clouds = st.lists(st.tuples(coords, coords), min_size=3, max_size=20)


def test_hull_is_ccw_and_minimal(square):
    body = ConvexBody([(0, 0), (1, 1), (0.5, 0.5), (1, 0), (0, 1), (0.5, 0)])
    assert body.n == 4
    assert body.area() == pytest.approx(1.0)
    assert body == square


def test_point_input_is_degenerate():
    with pytest.raises(DegenerateError):
        ConvexBody([(1, 1), (1, 1)])


def test_segment_body_counts_both_sides():
    seg = ConvexBody([(0, 0), (2, 0)])
    assert seg.is_segment
    assert seg.perimeter == pytest.approx(4.0)


@settings(max_examples=60, deadline=None)
@given(point_clouds)
def test_hull_contains_inputs(pts):
    try:
        body = ConvexBody(pts)
    except DegenerateError:
        return
    d = body.signed_distances(pts)
    assert d.max() <= 1e-7 * body.scale
    if body.n >= 3:
        assert body.area() > 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_normals_increase_by_one_turn(seed):
    body = random_polygon(np.random.default_rng(seed))
    nrm = body.edge_normals
    assert np.all(np.diff(nrm) > 0)
    assert nrm[-1] - nrm[0] < 2 * math.pi


def test_locate_and_position(square):
    assert square.locate((1, 0)) == ("vertex", 1)
    kind, k, t = square.locate((1, 0.25))
    assert (kind, k) == ("edge", 1) and t == pytest.approx(0.25)
    assert square.position((0, 0.5)) == pytest.approx(3.5)
    with pytest.raises(DomainError):
        square.locate((0.5, 0.5))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.floats(0, 1))
def test_point_at_position_roundtrip(seed, u):
    body = random_polygon(np.random.default_rng(seed))
    s = u * body.perimeter * 0.999
    assert body.position(body.point_at(s)) == pytest.approx(s, abs=1e-9 * body.scale)


def test_signed_distance_sign(square):
    assert square.signed_distance((0.5, 0.5)) == pytest.approx(-0.5)
    assert square.signed_distance((2, 0.5)) == pytest.approx(1.0)
    assert square.interior_contains((0.5, 0.5))
    assert not square.interior_contains((1, 0.5))
    assert square.contains((1, 0.5))


def test_support_function(square):
    assert support_value(square, 0.0) == pytest.approx(1.0)
    assert support_value(square, math.pi / 4) == pytest.approx(math.sqrt(2))
    lo, hi = support_derivatives(square, 0.0)
    assert (lo, hi) == (pytest.approx(0.0), pytest.approx(1.0))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.floats(-3, 3), st.floats(0.01, 6))
def test_support_integral_matches_quadrature(seed, a, w):
    from scipy.integrate import quad
    body = random_polygon(np.random.default_rng(seed))
    b = a + w
    breaks = [t for t in np.concatenate([body.edge_normals + k * 2 * math.pi for k in (-2, -1, 0, 1, 2)])
              if a < t < b]
    want, _ = quad(lambda t: support_value(body, t), a, b, points=breaks or None, limit=200)
    assert support_integral(body, a, b) == pytest.approx(want, rel=1e-8, abs=1e-8)


def test_reverse_gauss(square):
    assert reverse_gauss(square, math.pi / 4).points == ((1.0, 1.0),)
    face = reverse_gauss(square, 0.0)
    assert set(face.points) == {(1.0, 0.0), (1.0, 1.0)}
    assert face.length == pytest.approx(1.0)


def test_normal_cone(square):
    c = normal_cone(square, (0, 0))
    assert c.width == pytest.approx(math.pi / 2)
    assert c.contains(-3 * math.pi / 4)
    assert c.contains_direction((-1, -1))
    assert not c.contains_direction((1, 1))
    assert normal_cone(square, (0.5, 0.5)).empty
    assert normal_cone(square, (0.5, 0)).width == 0
    with pytest.raises(DomainError):
        normal_cone(square, (3, 3))


def test_angle_interval_wraps():
    c = AngleInterval(3.0, 3.5)
    assert c.contains(3.2 + 2 * math.pi)
    assert c.contains(3.2 - 4 * math.pi)


def test_frame_defaults(square):
    f = Frame(square, (0, 0))
    assert f.theta_minus == pytest.approx(math.pi)
    assert f.theta_plus == pytest.approx(1.5 * math.pi)
    assert f.theta0 == f.theta_plus
    assert f.opening == pytest.approx(math.pi / 2)
    e = Frame(square, (0.5, 0))
    assert e.theta_minus == e.theta_plus == pytest.approx(1.5 * math.pi)
    with pytest.raises(DomainError):
        Frame(square, (0, 0), 0.0, 0.3)


def test_arc_params_on_square(square):
    f = Frame(square, (0, 0), 0.0, -math.pi / 2)
    # after the corner the support point is (1, 0) for normals in (-pi/2, 0)
    assert arc_param_left(f, -0.3) == pytest.approx(1.0)
    assert arc_param_left(f, 0.1) == pytest.approx(2.0)
    assert arc_param_left(f, -math.pi / 2 + 2 * math.pi + 0.1) == pytest.approx(5.0)
    g = Frame(square, (0, 0), 0.0, math.pi)
    assert arc_param_right(g, math.pi - 0.2) == pytest.approx(1.0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.01, 12))
def test_left_arc_param_periodic(seed, dt):
    rng = np.random.default_rng(seed)
    body = random_polygon(rng)
    f = Frame(body, tuple(body.vertices[0]))
    t = f.theta0 + dt
    assert arc_param_left(f, t + 2 * math.pi) == pytest.approx(arc_param_left(f, t) + body.perimeter)


def test_tangent_points_orientation(square):
    zl, zr = tangent_points(square, (3, 0.5))
    assert {zl, zr} == {(1.0, 0.0), (1.0, 1.0)}
    (ax, ay), (bx, by) = np.subtract(zl, (3, 0.5)), np.subtract(zr, (3, 0.5))
    assert ax * by - ay * bx > 0
    with pytest.raises(DomainError):
        tangent_points(square, (0.5, 0.5))


def test_boundary_arc_length(square):
    assert boundary_arc_length(square, (0, 0), (1, 1)) == pytest.approx(2.0)
    assert boundary_arc_length(square, (0, 0), (1, 1), "cw") == pytest.approx(2.0)
    assert boundary_arc_length(square, (0, 0), (0, 1), "cw") == pytest.approx(1.0)
    with pytest.raises(DomainError):
        boundary_arc_length(square, (0, 0), (0, 1), "up")
