"""Shortest steepest descent connections from a boundary point to a target.

Around x0 the plane splits into the forbidden J-fence, the normal sector
N, two bands B_l and B_r, and the rest V.  The connectors are built from
the tilde involutes: the involute of K up to its critical angle, continued
as the involute of the hull of K and that first arc.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arcs import (Arc, ArcChain, Segment, concat, point_piece_distance, ray_piece_hits,
                   winding_number)
from .convex_core import ConvexBody, Frame, as_point, normal_cone, tangent, unit
from .curve import (OrientedPolyline, as_curve, h_region, is_self_distancing, region_contains)
from .errors import DomainError, InvalidInput, NumericalError
from .fence import JFence
from .involute import build_involute, reflect_frame, reflect_point, theta_star

TANGENT_STEP = 1e-2


class RegionTag:
    N = "N"
    B_L = "B_l"
    B_R = "B_r"
    V = "V"
    FORBIDDEN = "FORBIDDEN"


def _tangent_point_samples(inv, lo, hi, extra=(), step=TANGENT_STEP):
    """Vertices of a polygon circumscribing the left involute over [lo, hi]:
    the endpoints and the crossings of tangent lines at sampled angles."""
    pts = [inv.point(lo), inv.point(hi)]
    for p in inv.pieces:
        a, b = max(p.lo, lo), min(p.hi, hi)
        if b <= a:
            continue
        m = max(1, int(math.ceil((b - a) / step)))
        angs = set(np.linspace(a, b, m + 1).tolist())
        angs.update(e for e in extra if a < e < b)
        angs = sorted(angs)
        for t0, t1 in zip(angs, angs[1:]):
            half = 0.5 * (t1 - t0)
            mid = tangent(t0 + half)
            r = p.radius / math.cos(half)
            pts.append((p.center[0] - r * mid[0], p.center[1] - r * mid[1]))
        pts.extend(inv.point(t) for t in angs)
    return pts


@dataclass
class TildeInvolute:
    chain: ArcChain
    end: tuple
    q_point: tuple
    theta_star: float
    hull: ConvexBody


def _ray_hits(chain, origin, dirs, skip_radius):
    """Earliest point of the chain on any of the rays, in curve order."""
    for i, piece in enumerate(chain.pieces):
        best = None
        for d in dirs:
            for lam, u in ray_piece_hits(origin, d, piece):
                q = piece.at_fraction(u)
                if math.hypot(q[0] - origin[0], q[1] - origin[1]) <= skip_radius:
                    continue
                if best is None or u < best[0]:
                    best = (u, q)
        if best is not None:
            return i, best[0], best[1]
    return None


def _tilde_left(frame):
    body = frame.body
    ts = theta_star(frame, "left")
    start = frame.theta_plus
    inv = build_involute(frame, "left", ts - start)
    q = inv.point(ts)
    psi = ts - 1.5 * math.pi
    samples = _tangent_point_samples(inv, start, ts, extra=(psi, ts - 0.5 * math.pi))
    hull = ConvexBody(np.vstack([body.vertices, np.array(samples)]))
    hframe = Frame(hull, q, 0.0, ts)
    j = build_involute(hframe, "left", 2 * math.pi)
    whole = concat(inv.chain, j.chain, tol=1e-7)
    dirs = [tuple(unit(frame.theta_plus)), tuple(unit(frame.theta_minus))]
    hit = _ray_hits(whole, frame.x0, dirs, 1e-7 * body.perimeter)
    if hit is None:
        raise NumericalError("continued involute never reaches the normal sector")
    i, u, p_end = hit
    pieces = list(whole.pieces[:i])
    if u > 0:
        pieces.append(whole.pieces[i].split(u)[0])
    chain = ArcChain(pieces, origin=frame.x0, tol=1e-7)
    return TildeInvolute(chain, tuple(map(float, p_end)), tuple(map(float, q)), ts, hull)


def _reflect_chain(chain):
    return chain.transformed(reflect_point, reflect=True)


@lru_cache(maxsize=256)
def tilde_involute_data(frame, side="left"):
    if side == "left":
        return _tilde_left(frame)
    if side != "right":
        raise DomainError(f"unknown side {side!r}")
    m = _tilde_left(reflect_frame(frame))
    hull = ConvexBody([reflect_point(v) for v in m.hull.vertices])
    return TildeInvolute(_reflect_chain(m.chain), reflect_point(m.end), reflect_point(m.q_point),
                         -m.theta_star, hull)


def tilde_involute(frame, side="left"):
    """The tilde involute from x0 up to its first meeting with the normal
    sector boundary."""
    return tilde_involute_data(frame, side).chain


# -- regions --------------------------------------------------------------------------

def _split_at_point(chain, p, tol):
    """Prefix and suffix of a chain at the first piece passing within tol of p."""
    from .curve import locate_on_curve
    i, u = locate_on_curve(chain, p, tol)
    head = list(chain.pieces[:i])
    tail = list(chain.pieces[i:])
    if tail:
        if u >= 1.0:
            head.append(tail.pop(0))
        elif u > 0:
            a, b = tail[0].split(u)
            head.append(a)
            tail[0] = b
    return ArcChain(head, origin=chain.start, tol=1e-6), ArcChain(tail, origin=p, tol=1e-6)


class ConnectionGeometry:
    """Everything about the frame needed to classify targets and build
    connectors; computed once per frame."""

    def __init__(self, frame):
        self.frame = frame
        self.body = frame.body
        self.fence = JFence(frame)
        self.tilde = {"left": tilde_involute_data(frame, "left"),
                      "right": tilde_involute_data(frame, "right")}
        self.crossing = self.fence.crossing
        self.tol = 1e-9 * self.body.scale
        x0 = frame.x0
        loose = 1e-6 * self.body.scale
        # B_r: x0 -> (right involute) -> P -> (tilde left) -> P_l -> x0
        _, tl_after = _split_at_point(self.tilde["left"].chain, self.crossing, loose)
        _, tr_after = _split_at_point(self.tilde["right"].chain, self.crossing, loose)
        right_arc = self.fence.right_chain.reversed()        # x0 -> P
        left_arc = self.fence.left_chain                     # x0 -> P
        self.b_right = list(right_arc.pieces) + list(tl_after.pieces) + \
            [Segment(self.tilde["left"].end, x0)]
        self.b_left = list(left_arc.pieces) + list(tr_after.pieces) + \
            [Segment(self.tilde["right"].end, x0)]
        self.b_right_open_arc = right_arc
        self.b_left_open_arc = left_arc

    def in_normal_sector(self, p):
        f = self.frame
        v = (p[0] - f.x0[0], p[1] - f.x0[1])
        r = math.hypot(*v)
        if r <= self.tol:
            return True
        ang = math.atan2(v[1], v[0])
        lo, hi = f.theta_minus, f.theta_plus
        tol = self.tol / r
        u = lo - tol + (ang - lo + tol) % (2 * math.pi)
        return u <= hi + tol

    def _in_loop_closure(self, loop, p):
        if min(point_piece_distance(p, q) for q in loop) <= self.tol:
            return True
        return winding_number(p, loop) != 0

    def classify(self, x1):
        p = tuple(map(float, as_point(x1)))
        if self.body.interior_contains(p):
            raise DomainError("x1 lies inside the body")
        if self.fence.contains(p, "interior"):
            return RegionTag.FORBIDDEN
        if self.in_normal_sector(p):
            return RegionTag.N
        if self._in_loop_closure(self.b_right, p) and not _is_point(p, self.crossing, self.tol):
            return RegionTag.B_R
        if self._in_loop_closure(self.b_left, p) and not _is_point(p, self.crossing, self.tol):
            return RegionTag.B_L
        return RegionTag.V

    def connector(self, side, x1):
        """Tilde involute up to the first point whose forward tangent line
        passes through x1, then the segment to x1."""
        chain = self.tilde[side].chain
        p = tuple(map(float, x1))
        tol = 1e-9 * self.body.scale
        for i, piece in enumerate(chain.pieces):
            if point_piece_distance(p, piece) <= tol:
                return _prefix(chain, i, p, p)
            y = _forward_tangency(piece, p, tol)
            if y is not None:
                return _prefix(chain, i, y, p)
        raise NumericalError(f"no tangency point toward {p} on the {side} tilde involute")


def _is_point(p, q, tol):
    return math.hypot(p[0] - q[0], p[1] - q[1]) <= tol


def _forward_tangency(piece, p, tol):
    """Earliest point y of the piece whose forward direction points at p."""
    if isinstance(piece, Segment):
        d = piece.direction()
        w = (p[0] - piece.a[0], p[1] - piece.a[1])
        if abs(d[0] * w[1] - d[1] * w[0]) <= tol and d[0] * w[0] + d[1] * w[1] >= piece.length:
            return piece.b
        return None
    c = piece.center
    dx, dy = p[0] - c[0], p[1] - c[1]
    dist = math.hypot(dx, dy)
    if dist <= piece.radius:
        return None
    base = math.atan2(dy, dx)
    off = math.acos(piece.radius / dist)
    best = None
    for t in (base + off, base - off):
        u = piece.contains_angle(t, 1e-12)
        if u is None:
            continue
        y = piece.point(t)
        d = piece.direction(t)
        if d[0] * (p[0] - y[0]) + d[1] * (p[1] - y[1]) > 0 and (best is None or u < best[0]):
            best = (u, y)
    return None if best is None else best[1]


def _prefix(chain, i, y, x1):
    pieces = list(chain.pieces[:i])
    piece = chain.pieces[i]
    if isinstance(piece, Arc):
        t = math.atan2(y[1] - piece.center[1], y[0] - piece.center[0])
        u = piece.contains_angle(t, 1e-9)
        if u is None:
            u = 1.0
        if u > 0:
            head = piece.split(u)[0] if u < 1 else piece
            pieces.append(head)
        y = pieces[-1].end if pieces else chain.start
    else:
        pieces.append(Segment(piece.a, y))
    head = ArcChain(pieces, origin=chain.start, tol=1e-7)
    if math.hypot(x1[0] - head.end[0], x1[1] - head.end[1]) > 0:
        return ArcChain(list(head.pieces) + [Segment(head.end, tuple(x1))], origin=chain.start)
    return head


@lru_cache(maxsize=64)
def connection_geometry(frame):
    return ConnectionGeometry(frame)


def classify_region(frame, x1):
    return connection_geometry(frame).classify(x1)


def minimal_connectors(frame, x1):
    """The minimally connecting curves from x0 to x1 (empty when none)."""
    geo = connection_geometry(frame)
    p = tuple(map(float, as_point(x1)))
    tag = geo.classify(p)
    if tag == RegionTag.FORBIDDEN:
        return []
    if tag == RegionTag.N:
        return [OrientedPolyline([frame.x0, p])]
    if tag == RegionTag.B_R:
        return [geo.connector("right", p)]
    if tag == RegionTag.B_L:
        return [geo.connector("left", p)]
    return [geo.connector("left", p), geo.connector("right", p)]


def can_connect(frame, x1):
    p = tuple(map(float, as_point(x1)))
    if frame.body.interior_contains(p):
        return False
    return not connection_geometry(frame).fence.contains(p, "interior")


def connect_with_suffix(frame, x1, gamma1):
    """A curve from x0 through x1 continuing along gamma1, or None."""
    gamma1 = as_curve(gamma1)
    if not is_self_distancing(gamma1):
        raise InvalidInput("the continuation is not self-distancing")
    if not can_connect(frame, x1):
        return None
    region = h_region(gamma1, x1)
    if not region_contains(region, frame.body):
        return None
    for eta in minimal_connectors(frame, x1):
        if region_contains(region, eta):
            return concat(eta, gamma1, tol=1e-7)
    return None


# -- random instances -------------------------------------------------------------------

def random_sdc_from(body, x0, rng, steps=None, margin=0.05, step_range=(0.05, 0.5), turn=None):
    """A polyline from x0 that moves away from K and its own past at every
    step: each edge direction is drawn from the normal cone of the hull of
    K and the points so far, shrunk by ``margin`` radians on each side.

    ``turn="ccw"`` or ``"cw"`` restricts the draw to the outer fifth of
    the cone on that side, so the curve winds around K.
    """
    if steps is None:
        steps = int(rng.integers(3, 16))
    pts = [tuple(map(float, x0))]
    hull_pts = [tuple(map(float, v)) for v in body.vertices]
    for _ in range(steps):
        hull = ConvexBody(np.array(hull_pts + pts))
        cone = normal_cone(hull, pts[-1])
        lo, hi = cone.lo, cone.hi
        if hi - lo > 2 * margin:
            lo, hi = lo + margin, hi - margin
        else:
            lo = hi = 0.5 * (lo + hi)
        if turn == "ccw":
            lo = hi - 0.2 * (hi - lo)
        elif turn == "cw":
            hi = lo + 0.2 * (hi - lo)
        ang = float(rng.uniform(lo, hi))
        step = float(rng.uniform(*step_range))
        p = pts[-1]
        pts.append((p[0] + step * math.cos(ang), p[1] + step * math.sin(ang)))
    return OrientedPolyline(pts)
