import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import frozen
from sdcfence import (InvalidInput, SelfDistancingSet, SinglePoint, decide_extendible, essential_pair,
                      is_self_distancing, necessary_fence_condition, sufficient_normal_cone,
                      validate_sds)
from sdcfence.extend import covers_components, curve_hull, dedup_family
from sdcfence.curve import OrientedPolyline

S8 = math.sqrt(8)


def quarter_disc_points():
    return SelfDistancingSet.from_points([(0, 0), (0, 2), (1, S8), (-1, S8)])


def four_points(rho):
    return SelfDistancingSet.from_points([(0, 0), (0, 2), (2, 0), (rho, 2)])


def test_validation():
    assert validate_sds(quarter_disc_points())
    bad = validate_sds(SelfDistancingSet.from_points([(0, 0), (2, 0), (1, 0)]))
    assert not bad and bad.witness is not None
    with pytest.raises(InvalidInput):
        decide_extendible(SelfDistancingSet.from_points([(0, 0), (2, 0), (1, 0)]))


def test_four_points_on_a_quarter_disc_are_not_extendible():
    assert not necessary_fence_condition(quarter_disc_points())
    d = decide_extendible(quarter_disc_points())
    assert d.verdict == "no" and d.witness is None
    assert d.family_sizes == [1, 1, 0]


@pytest.mark.parametrize("rho", [2.9, 3.0, 3.1])
def test_fence_condition_is_not_sufficient(rho):
    assert necessary_fence_condition(four_points(rho))
    assert decide_extendible(four_points(rho)).verdict == "no"


@pytest.mark.parametrize("rho", [3.3, 3.6])
def test_far_fourth_point_is_reachable(rho):
    d = decide_extendible(four_points(rho))
    assert d.verdict == "yes"
    assert covers_components(d.witness, four_points(rho))
    assert is_self_distancing(d.witness)


def test_sufficient_condition_builds_the_polyline():
    s = SelfDistancingSet([[(0, 0), (1, 0)], [(2, 0.2), (3, 0.5)]])
    bar = sufficient_normal_cone(s)
    assert bar is not None
    assert bar.length == pytest.approx(frozen.DIVERGING_BAR_LENGTH, abs=1e-12)
    assert sufficient_normal_cone(quarter_disc_points()) is None


def test_fast_path_and_full_search_agree():
    s = SelfDistancingSet.from_points([(0, 0), (1, 0), (3, 0)])
    a = decide_extendible(s)
    b = decide_extendible(s, fast_path=False)
    assert a.fast_path and not b.fast_path
    assert a.verdict == b.verdict == "yes"
    assert a.witness.length == pytest.approx(3.0) and b.witness.length == pytest.approx(3.0)


def test_cap_gives_exhausted_not_no():
    d = decide_extendible(four_points(3.0), cap=0, fast_path=False)
    assert d.verdict == "resource_exhausted"


def test_single_component():
    d = decide_extendible(SelfDistancingSet([SinglePoint((1.0, 2.0))]))
    assert d.verdict == "yes" and d.witness.is_point


def test_essential_pair_from_point_to_point():
    fam = essential_pair(SinglePoint((0.0, 0.0)), SinglePoint((3.0, 4.0)))
    assert len(fam) == 1 and fam[0].length == pytest.approx(5.0)


def test_dedup_merges_near_copies():
    a = OrientedPolyline([(0, 0), (1, 0), (2, 1)])
    b = OrientedPolyline([(0, 0), (1, 1e-9), (2, 1)])
    c = OrientedPolyline([(0, 0), (1, 0.5), (2, 1)])
    assert len(dedup_family([a, b, c])) == 2


def test_curve_hull_covers_arcs():
    from sdcfence import Arc, ArcChain
    arc = ArcChain([Arc((0, 0), 1.0, 0.0, math.pi / 2)])
    hull = curve_hull(arc)
    ts = np.linspace(0, math.pi / 2, 200)
    assert hull.signed_distances(np.column_stack([np.cos(ts), np.sin(ts)])).max() <= 1e-9


@settings(max_examples=20, deadline=None)
@given(st.lists(st.floats(0.2, 2.0), min_size=2, max_size=5), st.floats(-0.3, 0.3))
def test_outward_point_sequences_are_extendible(steps, tilt):
    # points moving along directions that drift slowly: each next point is
    # far ahead of the previous ones, so the sufficient test applies
    pts = [(0.0, 0.0)]
    ang = 0.0
    for s in steps:
        ang += tilt / len(steps)
        pts.append((pts[-1][0] + s * math.cos(ang), pts[-1][1] + s * math.sin(ang)))
    sigma = SelfDistancingSet.from_points(pts)
    if not validate_sds(sigma):
        return
    d = decide_extendible(sigma)
    assert d.verdict == "yes"
    assert covers_components(d.witness, sigma)


def test_threshold_sits_at_pi():
    assert decide_extendible(four_points(math.pi - 1e-3)).verdict == "no"
    assert decide_extendible(four_points(math.pi + 1e-3)).verdict == "yes"
