"""Can a self-distancing set be threaded by one steepest descent curve?

A set is an ordered list of components, each a single point or a
self-distancing polyline.  The decision procedure grows families of
candidate curves one component at a time; every candidate is the shortest
way of joining the previous candidate to the next component.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from .arcs import Arc, ArcChain, concat
from .connect import minimal_connectors
from .convex_core import ConvexBody, Frame
from .curve import (OrientedPolyline, as_curve, curve_length, h_region, is_self_distancing,
                    region_contains)
from .errors import DegenerateError, DomainError, InvalidInput
from .fence import JFence

DEFAULT_CAP = 4096
DEDUP_TOL = 1e-7
HULL_ARC_STEP = 1e-3


@dataclass(frozen=True)
class SinglePoint:
    point: tuple

    @property
    def first(self):
        return self.point

    @property
    def last(self):
        return self.point

    def samples(self, per_edge=0):
        return [self.point]

    def to_json(self):
        return {"point": list(self.point)}


@dataclass(frozen=True)
class CurveComponent:
    curve: ArcChain

    @property
    def first(self):
        return tuple(self.curve.start)

    @property
    def last(self):
        return tuple(self.curve.end)

    def samples(self, per_edge=16):
        out = [tuple(self.curve.start)]
        for p in self.curve.pieces:
            for k in range(1, per_edge + 1):
                out.append(tuple(p.at_fraction(k / (per_edge + 1))))
            out.append(tuple(p.end))
        return out

    def to_json(self):
        return {"polyline": [list(v) for v in self.curve.vertices()]}


def component(obj):
    """Build a component from a point, a vertex list or a chain."""
    if isinstance(obj, (SinglePoint, CurveComponent)):
        return obj
    if isinstance(obj, ArcChain):
        return SinglePoint(tuple(obj.start)) if obj.is_point else CurveComponent(obj)
    arr = np.asarray(obj, dtype=float)
    if arr.shape == (2,):
        return SinglePoint((float(arr[0]), float(arr[1])))
    if arr.ndim == 2 and arr.shape[1] == 2:
        if len(arr) == 1:
            return SinglePoint((float(arr[0, 0]), float(arr[0, 1])))
        return CurveComponent(OrientedPolyline(arr))
    raise InvalidInput(f"cannot read a component from {obj!r}")


class SelfDistancingSet:
    def __init__(self, components):
        self.components = [component(c) for c in components]
        if not self.components:
            raise InvalidInput("a self-distancing set needs at least one component")

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @classmethod
    def from_points(cls, points):
        return cls([SinglePoint(tuple(map(float, p))) for p in points])

    def samples(self, per_edge=16):
        out = []
        for c in self.components:
            out.extend(c.samples(per_edge) if isinstance(c, CurveComponent) else c.samples())
        return out

    def to_json(self):
        return {"components": [c.to_json() for c in self.components]}


def as_sds(obj):
    return obj if isinstance(obj, SelfDistancingSet) else SelfDistancingSet(obj)


# -- validation ---------------------------------------------------------------------------

@dataclass
class Check:
    ok: bool
    witness: tuple = None
    index: int = None

    def __bool__(self):
        return self.ok


def validate_sds(sigma, per_edge=16):
    """Distance from each point to the later ones never decreases.

    Curve components get the exact chain test; the whole set is then
    checked on vertices and ``per_edge`` samples per edge.
    """
    sigma = as_sds(sigma)
    for c in sigma:
        if isinstance(c, CurveComponent):
            v = is_self_distancing(c.curve)
            if not v:
                return Check(False, v.witness)
    pts = np.array(sigma.samples(per_edge), dtype=float)
    tol = 1e-9 * (1.0 + float(np.abs(pts).max()))
    for a in range(len(pts) - 2):
        d = np.hypot(*(pts[a + 1:] - pts[a]).T)
        run = np.maximum.accumulate(d)
        bad = np.nonzero(d < run - tol)[0]
        if len(bad):
            j = int(bad[0])
            i = int(np.argmax(d[:j + 1]))
            trio = (pts[a], pts[a + 1 + i], pts[a + 1 + j])
            return Check(False, tuple(tuple(map(float, q)) for q in trio))
    return Check(True)


def _require_valid(sigma):
    check = validate_sds(sigma)
    if not check:
        raise InvalidInput(f"not a self-distancing set: {check.witness}")


# -- convex hulls of curves ------------------------------------------------------------

def _arc_outer_points(arc, step=HULL_ARC_STEP):
    """Arc endpoints plus the corners of a circumscribed polygon."""
    m = max(1, int(math.ceil(abs(arc.sweep) / step)))
    ts = np.linspace(arc.t0, arc.t1, m + 1)
    half = 0.5 * (ts[1] - ts[0])
    mid = ts[:-1] + half
    r = arc.radius / math.cos(half)
    c = arc.center
    pts = np.column_stack([c[0] + r * np.cos(mid), c[1] + r * np.sin(mid)])
    return np.vstack([[arc.start, arc.end], pts])


def curve_hull(curve, step=HULL_ARC_STEP):
    """Convex polygon containing the curve; exact for polylines."""
    curve = as_curve(curve)
    rows = [np.array([curve.start])]
    for p in curve.pieces:
        rows.append(_arc_outer_points(p, step) if isinstance(p, Arc) else np.array([p.b]))
    return ConvexBody(np.vstack(rows))


# -- necessary and sufficient tests ------------------------------------------------------------

def _ordered_points(sigma):
    """Component endpoints and vertices in order, with the component index."""
    out = []
    for k, c in enumerate(sigma):
        if isinstance(c, SinglePoint):
            out.append((c.point, k))
        else:
            out.extend((tuple(v), k) for v in c.curve.vertices())
    return out


def necessary_fence_condition(sigma, per_edge=8):
    """Later points never enter the open J-fence of the hull of the earlier
    ones.  Anchors are component endpoints and polyline vertices; the later
    points include ``per_edge`` samples on each edge."""
    sigma = as_sds(sigma)
    anchors = _ordered_points(sigma)
    later = []
    for k, c in enumerate(sigma):
        later.extend((q, k) for q in (c.samples(per_edge) if isinstance(c, CurveComponent)
                                      else c.samples()))
    for i in range(1, len(anchors) - 1):
        prefix = np.array([p for p, _ in anchors[:i + 1]])
        x0, k0 = anchors[i]
        try:
            body = ConvexBody(prefix)
        except DegenerateError:
            continue
        fence = JFence(Frame(body, x0))
        start = _position_after(later, x0, k0)
        for j in range(start, len(later)):
            if fence.contains(later[j][0], "interior"):
                return Check(False, (tuple(map(float, x0)), tuple(map(float, later[j][0]))), j)
    return Check(True)


def _position_after(samples, x0, k0):
    """Index just past the sample equal to x0 inside component k0."""
    for j, (q, k) in enumerate(samples):
        if k == k0 and q[0] == x0[0] and q[1] == x0[1]:
            return j + 1
    raise InvalidInput(f"anchor {x0} not among the samples")


def _segment_chain(a, b):
    return OrientedPolyline([a, b])


def sufficient_normal_cone(sigma):
    """The straight-linked curve when each next component starts in the
    normal cone of the hull so far and sees the past behind its normals;
    None when the test is inconclusive."""
    sigma = as_sds(sigma)
    _require_valid(sigma)
    comps = sigma.components
    seen = []
    for k, c in enumerate(comps):
        if k:
            prev_last = np.asarray(comps[k - 1].last)
            step = np.asarray(c.first) - prev_last
            past = np.array(seen)
            tol = 1e-9 * (1.0 + float(np.abs(past).max()))
            if float(((past - prev_last) @ step).max()) > tol:
                return None
            if isinstance(c, CurveComponent):
                region = h_region(c.curve, c.first)
                if not all(region.contains_point(p) for p in seen):
                    return None
        seen.extend(c.samples(0) if isinstance(c, CurveComponent) else c.samples())
    verts = []
    for c in comps:
        vs = [c.point] if isinstance(c, SinglePoint) else [tuple(v) for v in c.curve.vertices()]
        for v in vs:
            if not verts or math.hypot(v[0] - verts[-1][0], v[1] - verts[-1][1]) > 0:
                verts.append(v)
    if len(verts) == 1:
        return ArcChain.point(verts[0])
    return OrientedPolyline(verts)


# -- essential families ----------------------------------------------------------------------

def _as_curve_part(c):
    return as_curve(c.curve) if isinstance(c, CurveComponent) else c


def _connectors(gamma1, x1):
    body = curve_hull(gamma1)
    try:
        return minimal_connectors(Frame(body, gamma1.end), x1)
    except DomainError:
        return []


def essential_pair(c1, c2):
    """Shortest extensions of c1 (a point, a component or a curve) through
    the component c2, following the five cases of the two-component study."""
    c2 = component(c2)
    if isinstance(c1, ArcChain) and not c1.is_point:
        gamma1 = c1
    else:
        c1 = component(c1)
        gamma1 = c1.curve if isinstance(c1, CurveComponent) else None
    if gamma1 is None:
        x1 = c1.point
        if isinstance(c2, SinglePoint):   # two points: the segment
            return [_segment_chain(x1, c2.point)]
        region = h_region(c2.curve, c2.first)
        if not region.contains_point(x1):
            return []
        return [concat(_segment_chain(x1, c2.first), c2.curve, tol=1e-9)]
    if isinstance(c2, SinglePoint):
        return [concat(gamma1, eta, tol=1e-7) for eta in _connectors(gamma1, c2.point)]
    region = h_region(c2.curve, c2.first)
    if not region_contains(region, gamma1):
        return []
    out = []
    for eta in _connectors(gamma1, c2.first):
        if region_contains(region, eta):
            out.append(concat(gamma1, eta, c2.curve, tol=1e-7))
    return out


def _canonical_key(chain):
    pts = chain.sample_uniform(9) if not chain.is_point else [chain.start]
    return (round(curve_length(chain), 9),) + tuple(round(float(v), 9) for p in pts for v in p)


def dedup_family(curves, tol=DEDUP_TOL):
    """Drop curves within tol (sampled Hausdorff) of an earlier one, then
    sort by a canonical key so the order does not depend on construction."""
    curves = sorted(curves, key=_canonical_key)
    kept, samples = [], []
    for c in curves:
        s = np.asarray(c.sample_uniform(129))
        dup = False
        for c2, s2 in zip(kept, samples):
            if abs(c.length - c2.length) <= tol and \
                    max(directed_hausdorff(s, s2)[0], directed_hausdorff(s2, s)[0]) <= tol:
                dup = True
                break
        if not dup:
            kept.append(c)
            samples.append(s)
    return kept


@dataclass
class Decision:
    verdict: str
    witness: ArcChain = None
    family_sizes: list = field(default_factory=list)
    family: list = field(default_factory=list)
    fast_path: bool = False


YES, NO, EXHAUSTED = "yes", "no", "resource_exhausted"


def decide_extendible(sigma, cap=DEFAULT_CAP, fast_path=True):
    """Three-valued verdict on whether some steepest descent curve passes
    through every component in order, with a witness curve for yes."""
    sigma = as_sds(sigma)
    _require_valid(sigma)
    comps = sigma.components
    if fast_path:
        bar = sufficient_normal_cone(sigma)
        if bar is not None:
            return Decision(YES, bar, [], [bar], True)
    if len(comps) == 1:
        c = comps[0]
        w = c.curve if isinstance(c, CurveComponent) else ArcChain.point(c.point)
        return Decision(YES, w, [1], [w])
    family = dedup_family(essential_pair(comps[0], comps[1]))
    sizes = [len(family)]
    for c in comps[2:]:
        if not family:
            break
        grown = []
        for eta in family:
            grown.extend(essential_pair(eta, c))
        if len(grown) > cap:
            return Decision(EXHAUSTED, None, sizes + [len(grown)], [])
        family = dedup_family(grown)
        sizes.append(len(family))
    if not family:
        return Decision(NO, None, sizes, [])
    return Decision(YES, family[0], sizes, family)


def covers_components(witness, sigma, tol=1e-9):
    """Every component point and vertex lies on the witness within tol."""
    from .arcs import chain_distance
    sigma = as_sds(sigma)
    scale = 1.0 + max(abs(v) for p, _ in _ordered_points(sigma) for v in p)
    for p, _ in _ordered_points(sigma):
        if chain_distance(p, witness) > tol * scale:
            return False
    for c in sigma:
        if isinstance(c, CurveComponent):
            for q in c.samples(8):
                if chain_distance(q, witness) > tol * scale:
                    return False
    return True
