import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import frozen
from conftest import random_polygon
from sdcfence import (DomainError, Frame, InvalidInput, OrientedPolyline, Segment,
                      can_connect, classify_region, connect_with_suffix, is_distancing_from,
                      is_self_distancing, minimal_connectors, random_sdc_from, tilde_involute)
from sdcfence.connect import tilde_involute_data


@pytest.fixture
def corner(square):
    return Frame(square, (0, 0))


@pytest.mark.parametrize("case", [frozen.CONNECT_V, frozen.CONNECT_FAR, frozen.CONNECT_BR,
                                  frozen.CONNECT_UP])
def test_frozen_connector_lengths(corner, case):
    x1, lengths = case
    got = [c.length for c in minimal_connectors(corner, x1)]
    assert got == pytest.approx(lengths, abs=1e-9)


def test_regions(corner):
    assert classify_region(corner, (-1, -2)) == "N"
    assert classify_region(corner, (-3, 0.5)) == "B_r"
    assert classify_region(corner, (2, -3)) == "B_l"
    assert classify_region(corner, (3, 3)) == "V"
    assert classify_region(corner, (1.5, 1.5)) == "FORBIDDEN"
    assert not can_connect(corner, (1.5, 1.5))
    assert minimal_connectors(corner, (1.5, 1.5)) == []
    with pytest.raises(DomainError):
        classify_region(corner, (0.5, 0.5))


def test_normal_sector_connector_is_a_segment(corner):
    (c,) = minimal_connectors(corner, (-1, -2))
    assert len(c.pieces) == 1 and isinstance(c.pieces[0], Segment)
    assert c.length == pytest.approx(math.sqrt(5))


def test_tilde_involute_of_square(corner):
    d = tilde_involute_data(corner, "left")
    assert d.end[0] == pytest.approx(frozen.SQUARE_TILDE_END_X, abs=1e-9)
    assert d.end[1] == pytest.approx(0.0, abs=1e-9)
    assert len(d.chain.pieces) == frozen.SQUARE_TILDE_PIECES
    assert d.chain.length == pytest.approx(frozen.SQUARE_TILDE_LENGTH, abs=1e-9)
    assert d.theta_star == pytest.approx(3 * math.pi)
    assert d.q_point == pytest.approx((0, 4), abs=1e-12)
    r = tilde_involute(corner, "right")
    assert r.end == pytest.approx((d.end[1], d.end[0]), abs=1e-9)


def test_tilde_end_matches_closed_form(corner):
    # with the exact hull the end is at x = 1 - cos f - (4 + f) sin f, tan f = 4 + f;
    # the circumscribed hull differs by its tangent sampling error
    from scipy.optimize import brentq
    phi = brentq(lambda f: math.tan(f) - 4 - f, 1.0, 1.5)
    exact = 1 - math.cos(phi) - (4 + phi) * math.sin(phi)
    assert tilde_involute_data(corner, "left").end[0] == pytest.approx(exact, abs=1e-4)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.booleans())
def test_tilde_involutes_are_sdc(seed, vertex):
    rng = np.random.default_rng(seed)
    body = random_polygon(rng)
    x0 = body.vertices[0] if vertex else body.point_at(rng.uniform(0, body.perimeter))
    f = Frame(body, tuple(map(float, x0)))
    for side in ("left", "right"):
        c = tilde_involute(f, side)
        assert is_self_distancing(c) and is_distancing_from(c, body)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_connectors_are_short_and_valid(seed):
    rng = np.random.default_rng(seed)
    body = random_polygon(rng, hi=6, box=2.0)
    x0 = tuple(map(float, body.vertices[0]))
    f = Frame(body, x0)
    g = random_sdc_from(body, x0, rng, steps=int(rng.integers(3, 40)), turn=["ccw", "cw", None][seed % 3])
    etas = minimal_connectors(f, g.end)
    assert etas
    assert g.length >= min(e.length for e in etas) - 1e-9
    for e in etas:
        assert e.start == pytest.approx(x0) and e.end == pytest.approx(tuple(g.end), abs=1e-9)
        assert is_self_distancing(e) and is_distancing_from(e, body)


def test_connect_with_suffix(corner):
    suffix = OrientedPolyline([(3, 3), (4, 4)])
    out = connect_with_suffix(corner, (3, 3), suffix)
    assert out is not None
    assert out.length == pytest.approx(frozen.CONNECT_V[1][0] + math.sqrt(2))
    assert is_self_distancing(out)
    with pytest.raises(InvalidInput):
        connect_with_suffix(corner, (3, 3), OrientedPolyline([(3, 3), (3, 5), (3, 4)]))
