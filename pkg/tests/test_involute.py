import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import frozen
from conftest import random_polygon, regular_polygon
from sdcfence import (ConvexBody, DomainError, Frame, build_involute, first_crossing,
                      involute_arc_length, involute_point, involute_tangent, involute_through,
                      parallel_shift_check, theta_star)
from sdcfence.involute import crossing_windows, window_violations
from sdcfence.oracle import crossing_by_string_length


def _frame_for(seed, vertex=True):
    rng = np.random.default_rng(seed)
    body = random_polygon(rng)
    x0 = body.vertices[0] if vertex else body.point_at(rng.uniform(0, body.perimeter))
    return Frame(body, tuple(map(float, x0)))


def test_square_radii_grow_by_edge(square):
    inv = build_involute(Frame(square, (0, 0), 0.0, -math.pi / 2), "left", 2 * math.pi)
    assert [p.radius for p in inv.pieces] == pytest.approx([1, 2, 3, 4])
    assert inv.radius(0.3) == pytest.approx(2.0)
    assert involute_arc_length(inv, -math.pi / 2, 1.5 * math.pi) == pytest.approx(5 * math.pi)


def test_right_involute_mirrors_left(square):
    f = Frame(square, (0, 0))
    right = build_involute(f, "right", 2 * math.pi)
    # the right involute winds clockwise: first around (0, 1), radius 1
    assert right.pieces[-1].radius == pytest.approx(1.0) or right.pieces[0].radius == pytest.approx(1.0)
    assert right.point(f.theta_minus - math.pi / 2) == pytest.approx((-1, 1))


def test_involute_tangent_is_normal_direction(square):
    inv = build_involute(Frame(square, (0, 0), 0.0, -math.pi / 2), "left", 2 * math.pi)
    th = 0.7
    h = 1e-6
    num = (np.subtract(inv.point(th + h), inv.point(th - h))) / (2 * h)
    assert np.hypot(*num) == pytest.approx(inv.radius(th), rel=1e-6)
    assert involute_tangent(inv, th) == pytest.approx(tuple(num / np.hypot(*num)), abs=1e-6)
    assert inv.derivative_direction(th) == pytest.approx((math.cos(th), math.sin(th)))


def test_domain_outside_range(square):
    inv = build_involute(Frame(square, (0, 0)), "left", 1.0)
    with pytest.raises(DomainError):
        involute_point(inv, inv.theta_range[1] + 0.5)
    with pytest.raises(DomainError):
        inv.arc_length(1.0, 0.0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.booleans(), st.floats(0, 1))
def test_parallel_shift(seed, vertex, u):
    f = _frame_for(seed, vertex)
    inv = build_involute(f, "left", 4 * math.pi)
    assert parallel_shift_check(inv, f.theta_plus + u * 2 * math.pi) <= 1e-9 * f.body.scale


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.booleans())
def test_chain_is_c1(seed, vertex):
    f = _frame_for(seed, vertex)
    chain = build_involute(f, "left", 2 * math.pi).chain
    for p, q in zip(chain.pieces, chain.pieces[1:]):
        assert p.end == pytest.approx(q.start, abs=1e-9 * f.body.scale)
        assert p.end_direction == pytest.approx(q.start_direction, abs=1e-9)


def test_square_corner_crossing(square):
    f = Frame(square, (0, 0))
    c = first_crossing(f)
    assert c.point == pytest.approx(frozen.SQUARE_CORNER_CROSSING, abs=1e-12)
    assert c.theta_l == pytest.approx(frozen.SQUARE_CORNER_THETA_L, abs=1e-12)
    assert c.theta_r == pytest.approx(frozen.SQUARE_CORNER_THETA_R, abs=1e-12)
    assert theta_star(f, "left") == pytest.approx(frozen.SQUARE_CORNER_THETA_STAR_L, abs=1e-12)
    assert theta_star(f, "right") == pytest.approx(frozen.SQUARE_CORNER_THETA_STAR_R, abs=1e-12)
    assert c.point[0] == pytest.approx((1 + frozen.SQRT17) / 2)


def test_square_edge_and_hexagon_crossings(square):
    f = Frame(square, (0.5, 0))
    c = first_crossing(f)
    assert c.point == pytest.approx(frozen.SQUARE_EDGE_CROSSING, abs=1e-12)
    assert c.theta_l == pytest.approx(frozen.SQUARE_EDGE_THETA_L, abs=1e-12)
    assert theta_star(f) == pytest.approx(frozen.SQUARE_EDGE_THETA_STAR_L, abs=1e-12)
    h = Frame(regular_polygon(6), (1, 0))
    c = first_crossing(h)
    assert c.point == pytest.approx(frozen.HEXAGON_CROSSING, abs=1e-12)
    assert c.theta_l == pytest.approx(frozen.HEXAGON_THETA_L, abs=1e-12)


def test_window_counterexample():
    # a thin rectangle, x0 near one end of its long bottom edge
    f = Frame(ConvexBody([(0, 0), (3, 0), (3, 0.1), (0, 0.1)]), (2.5, 0.0))
    c = first_crossing(f)
    (lo, hi), _ = crossing_windows(f)
    assert c.point == pytest.approx(frozen.THIN_RECT_CROSSING, abs=1e-12)
    assert c.theta_l == pytest.approx(frozen.THIN_RECT_THETA_L, abs=1e-12) and c.theta_l > hi
    assert "theta_l < theta0+ + 3pi/2" in window_violations(f, c)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.booleans())
def test_crossing_matches_string_oracle(seed, vertex):
    f = _frame_for(seed, vertex)
    c = first_crossing(f)
    p, psi, _ = crossing_by_string_length(f.body.vertices.tolist(), f.x0, f.theta_plus)
    assert math.dist(p, c.point) <= 1e-9 * f.body.scale
    assert theta_star(f, "right") - 1e-9 <= c.theta_r <= c.theta_l
    assert c.theta_l <= theta_star(f, "left") + 1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.2, 6), st.floats(0, 2 * math.pi))
def test_involute_through_reaches_z(seed, dist, ang):
    body = random_polygon(np.random.default_rng(seed))
    c = body.vertices.mean(axis=0)
    z = None
    for k in range(50):
        cand = c + (dist + k) * np.array([math.cos(ang), math.sin(ang)])
        if body.signed_distance(cand) > 0.05:
            z = tuple(cand)
            break
    for side in ("left", "right"):
        xi, inv = involute_through(body, z, side)
        end = inv.chain.end if side == "left" else inv.chain.start
        assert math.dist(end, z) <= 1e-7 * (1 + dist + body.scale) or math.dist(inv.chain.end, z) <= 1e-7 * (1 + dist + body.scale)
        assert body.contains(xi)
