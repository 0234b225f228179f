import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import frozen
from conftest import random_polygon, regular_polygon
from sdcfence import ConvexBody, Frame, GFence, JFence, contains, fence_inclusion_check, first_crossing
from sdcfence.arcs import chain_distance
from sdcfence.fence import hausdorff_estimate
from sdcfence.oracle import sampled_membership


def test_square_corner_fence(square):
    J = JFence(Frame(square, (0, 0)))
    assert J.contains((2, 2), "interior")
    assert not J.contains((3, 3))
    assert not J.contains((-1, -1))
    assert not J.contains((0.5, 0.5), "interior")
    assert J.contains(frozen.SQUARE_CORNER_CROSSING, "closure", tol=1e-9)
    assert not J.contains(frozen.SQUARE_CORNER_CROSSING, "interior", tol=1e-9)
    assert contains(J, (2, 2))


def test_fence_of_three_point_hull_has_known_arc():
    s8 = math.sqrt(8)
    K = ConvexBody([(0, 0), (0, 2), (1, s8)])
    J = JFence(Frame(K, (1, s8)))
    pts = np.asarray(J.boundary_samples(4000))
    quad = pts[(pts[:, 0] < -1e-6) & (pts[:, 1] > 1e-6)]
    assert len(quad) > 100
    assert np.hypot(*quad.T) == pytest.approx(frozen.QUARTER_DISC_FENCE_RADIUS, abs=1e-9)
    assert J.contains((-1, s8), "interior")


def test_boundary_is_closed(hexagon):
    J = JFence(Frame(hexagon, (1, 0)))
    b = J.boundary()
    assert b.start == pytest.approx(b.end, abs=1e-9)
    assert b.start == pytest.approx((1, 0))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.booleans())
def test_membership_matches_crossing_number(seed, vertex):
    rng = np.random.default_rng(seed)
    body = random_polygon(rng)
    x0 = body.vertices[0] if vertex else body.point_at(rng.uniform(0, body.perimeter))
    J = JFence(Frame(body, tuple(x0)))
    loop = list(J.boundary().pieces)
    lo, hi = J.bounding_box()
    for p in rng.uniform(lo, hi, size=(30, 2)):
        p = tuple(p)
        if J.boundary().is_point or abs(body.signed_distance(p)) < 1e-6:
            continue
        if chain_distance(p, J.boundary()) < 1e-6:
            continue
        want = sampled_membership(loop, p, seed=seed) and not body.contains(p)
        assert J.contains(p, "interior") == want


def test_crossing_is_on_fence_boundary(square):
    f = Frame(square, (0.5, 0))
    c = first_crossing(f)
    J = JFence(f)
    assert J.contains(c.point, "closure", tol=1e-9)
    assert not J.contains(c.point, "interior", tol=1e-9)


def test_g_fence_of_square(square):
    G = GFence(square, (2, 0.5))
    assert G.xi_l == pytest.approx((1 - (math.sqrt(1.25) - 1), 0.0))
    assert G.xi_r == pytest.approx((1 - (math.sqrt(1.25) - 1), 1.0))
    assert G.contains((1.5, 0.5))
    assert not G.contains((3, 3))
    assert len(G.boundary_loops()) == 2


def test_nested_inclusion_outside_the_larger_body():
    K = ConvexBody([(0, 0), (1, 0), (0, 1)])
    H = ConvexBody([(0, 0), (1, 0), (1, 1), (0, 1)])
    rep = fence_inclusion_check(JFence(Frame(H, (0, 0))), JFence(Frame(K, (0, 0))), samples=1500,
                                skip=H.interior_contains)
    assert rep.ok and rep.checked > 100


def test_inclusion_fails_inside_the_larger_body():
    # points of Int H can lie in J(K) while J(H) leaves out its own body
    K = ConvexBody([(0, 0), (1, 0), (0, 1)])
    H = ConvexBody([(0, 0), (1, 0), (1, 1), (0, 1)])
    rep = fence_inclusion_check(JFence(Frame(H, (0, 0))), JFence(Frame(K, (0, 0))), samples=1500)
    assert not rep.ok
    assert all(H.contains(p) for p in rep.violations)


def test_polygon_fences_converge():
    hs = []
    for n in (8, 16, 32):
        a = JFence(Frame(regular_polygon(n), (1, 0))).boundary_samples(3000)
        b = JFence(Frame(regular_polygon(2 * n), (1, 0))).boundary_samples(3000)
        hs.append(hausdorff_estimate(a, b))
    assert hs[0] > hs[1] > hs[2]
