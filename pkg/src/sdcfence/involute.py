"""Left and right involutes of a convex polygon as exact arc chains.

A left involute started at x0 unwinds a string counterclockwise around the
body; on the normal cone of each vertex it is an arc centred at that vertex
whose radius is the string length already used.  Right involutes are the
mirror images of left involutes of the reflected body.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .arcs import Arc, ArcChain, circle_circle
from .convex_core import (EPS_ROOT, TWO_PI, ConvexBody, Frame, edge_normal_breaks, support_value,
                          tangent, tangent_points, unit)
from .errors import DomainError, NumericalError

HALF_PI = 0.5 * math.pi


def reflect_point(p):
    return (float(p[0]), -float(p[1]))


def reflect_body(body):
    return ConvexBody([reflect_point(v) for v in body.vertices])


def reflect_frame(frame):
    return Frame(reflect_body(frame.body), reflect_point(frame.x0), frame.s0, -frame.theta0)


@dataclass(frozen=True)
class InvolutePiece:
    """Arc centred at a body vertex over the angle interval [lo, hi]."""
    center: tuple
    radius: float
    lo: float
    hi: float


class Involute:
    """An involute of a body boundary, parameterised by lifted normal angle.

    ``side`` is 'left' or 'right'.  Left pieces are listed by increasing
    angle, right pieces by decreasing angle (the traversal order from x0).
    """

    def __init__(self, frame, side, pieces, theta_range):
        self.frame = frame
        self.side = side
        self.pieces = tuple(pieces)
        self.theta_range = (float(theta_range[0]), float(theta_range[1]))
        self._sign = -1.0 if side == "left" else 1.0
        self._bounds = np.array([p.lo for p in self.pieces] + [self.pieces[-1].hi]) \
            if side == "left" else np.array([p.lo for p in reversed(self.pieces)] + [self.pieces[0].hi])

    def __repr__(self):
        lo, hi = self.theta_range
        return f"Involute({self.side}, x0={self.frame.x0}, theta=[{lo:.6g}, {hi:.6g}], pieces={len(self.pieces)})"

    @property
    def start(self):
        return self.frame.x0

    def piece_at(self, theta):
        lo, hi = self.theta_range
        tol = EPS_ROOT * (1 + abs(theta))
        if theta < lo - tol or theta > hi + tol:
            raise DomainError(f"theta={theta} outside involute range [{lo}, {hi}]")
        ordered = self.pieces if self.side == "left" else self.pieces[::-1]
        k = int(np.searchsorted(self._bounds, theta, side="right") - 1)
        return ordered[min(max(k, 0), len(ordered) - 1)]

    def point(self, theta):
        p = self.piece_at(theta)
        t = tangent(theta)
        return (p.center[0] + self._sign * p.radius * t[0],
                p.center[1] + self._sign * p.radius * t[1])

    def points(self, thetas):
        """Vectorised point(): an (n, 2) array."""
        th = np.asarray(thetas, dtype=float)
        lo, hi = self.theta_range
        tol = EPS_ROOT * (1 + np.abs(th))
        if np.any(th < lo - tol) or np.any(th > hi + tol):
            raise DomainError(f"angles outside involute range [{lo}, {hi}]")
        ordered = self.pieces if self.side == "left" else self.pieces[::-1]
        k = np.clip(np.searchsorted(self._bounds, th, side="right") - 1, 0, len(ordered) - 1)
        cen = np.array([p.center for p in ordered])[k]
        rad = np.array([p.radius for p in ordered])[k]
        t = np.column_stack([-np.sin(th), np.cos(th)])
        return cen + self._sign * rad[:, None] * t

    def radius(self, theta):
        return self.piece_at(theta).radius

    def derivative_direction(self, theta):
        """Unit direction of d i / d theta: n_theta for left, -n_theta for right."""
        self.piece_at(theta)
        n = unit(theta)
        return (float(n[0]), float(n[1])) if self.side == "left" else (-float(n[0]), -float(n[1]))

    def arc_length(self, a, b):
        if b < a:
            raise DomainError("theta_a must not exceed theta_b")
        self.piece_at(a)
        self.piece_at(b)
        total = 0.0
        for p in self.pieces:
            lo, hi = max(p.lo, a), min(p.hi, b)
            if hi > lo:
                total += p.radius * (hi - lo)
        return total

    def truncated(self, lo, hi):
        """Restriction to the angle interval [lo, hi] (the frame is kept)."""
        self.piece_at(lo)
        self.piece_at(hi)
        pieces = []
        for p in self.pieces:
            a, b = max(p.lo, lo), min(p.hi, hi)
            if b > a or (b == a and not pieces and lo == hi):
                pieces.append(InvolutePiece(p.center, p.radius, a, b))
        if not pieces:
            raise DomainError("empty truncation")
        return Involute(self.frame, self.side, pieces, (lo, hi))

    @property
    def chain(self):
        """The involute as an ArcChain oriented away from x0."""
        arcs = []
        for p in self.pieces:
            if self.side == "left":
                arcs.append(Arc(p.center, p.radius, p.lo - HALF_PI, p.hi - HALF_PI))
            else:
                arcs.append(Arc(p.center, p.radius, p.hi + HALF_PI, p.lo + HALF_PI))
        return ArcChain(arcs, origin=self.point(self.theta_range[0] if self.side == "left"
                                                else self.theta_range[1]))

    def to_json(self):
        return {"side": self.side, "theta_range": list(self.theta_range),
                "x0": list(self.frame.x0), "chain": self.chain.to_json()}


def _left_pieces(frame, extent):
    body = frame.body
    n = body.n
    start = frame.theta_plus
    stop = start + extent
    if frame.vertex_index >= 0:
        j = (frame.vertex_index + 1) % n
        r = float(body.edge_len[frame.vertex_index])
    else:
        k = int(np.searchsorted(body.cum_len, frame.pos0, side="right") - 1)
        k = min(max(k, 0), n - 1)
        j = (k + 1) % n
        r = float(body.cum_len[k + 1] - frame.pos0)
    pieces = []
    a = start
    while a < stop - 1e-15:
        lo, hi = body.vertex_cone(j)
        b = min(a + (hi - lo), stop)
        v = body.vertices[j]
        pieces.append(InvolutePiece((float(v[0]), float(v[1])), r, a, b))
        a = a + (hi - lo)
        r += float(body.edge_len[j])
        j = (j + 1) % n
    return pieces


def build_involute(frame, side="left", theta_extent=TWO_PI):
    """Involute of the frame's body started at x0, covering theta_extent."""
    if not theta_extent > 0 or not math.isfinite(theta_extent):
        raise DomainError("theta_extent must be positive and finite")
    if side == "left":
        pieces = _left_pieces(frame, theta_extent)
        return Involute(frame, "left", pieces,
                        (frame.theta_plus, frame.theta_plus + theta_extent))
    if side != "right":
        raise DomainError(f"unknown side {side!r}")
    mirrored = _left_pieces(reflect_frame(frame), theta_extent)
    pieces = [InvolutePiece(reflect_point(p.center), p.radius, -p.hi, -p.lo) for p in mirrored]
    return Involute(frame, "right", pieces,
                    (frame.theta_minus - theta_extent, frame.theta_minus))


def involute_point(inv, theta):
    return inv.point(theta)


def involute_tangent(inv, theta):
    return inv.derivative_direction(theta)


def involute_arc_length(inv, theta_a, theta_b):
    return inv.arc_length(theta_a, theta_b)


def parallel_shift_check(inv, theta):
    """Residual of the one-turn parallel shift identity at theta."""
    L = inv.frame.body.perimeter
    t = tangent(theta)
    if inv.side == "left":
        p, q = inv.point(theta), inv.point(theta + TWO_PI)
        return math.hypot(q[0] - p[0] + L * t[0], q[1] - p[1] + L * t[1])
    p, q = inv.point(theta), inv.point(theta - TWO_PI)
    return math.hypot(q[0] - p[0] - L * t[0], q[1] - p[1] - L * t[1])


# -- critical angle -------------------------------------------------------------

def _theta_star_left(frame):
    start = frame.theta_plus
    if frame.opening <= HALF_PI + 1e-12:
        return start + 1.5 * math.pi
    inv = build_involute(frame, "left", math.pi)
    body = frame.body

    def f(psi):
        p = inv.point(psi)
        d = -tangent(psi)
        return d[0] * p[0] + d[1] * p[1] - support_value(body, psi + 1.5 * math.pi)

    stop = start + HALF_PI
    breaks = {start, stop}
    breaks.update(p.lo for p in inv.pieces if start < p.lo < stop)
    breaks.update(a - 1.5 * math.pi for a in edge_normal_breaks(body, start + 1.5 * math.pi,
                                                                stop + 1.5 * math.pi))
    grid = sorted(breaks)
    tol = 1e-12 * body.scale
    prev_x, prev_f = grid[0], f(grid[0])
    if prev_f >= -tol:
        raise NumericalError("tangency function is not negative at the start")
    for a, b in zip(grid, grid[1:]):
        xs = np.linspace(a, b, 17)[1:]
        for x in xs:
            fx = f(x)
            if fx >= 0.0:
                root = brentq(f, prev_x, x, xtol=1e-15, rtol=4 * np.finfo(float).eps) \
                    if fx > 0.0 else x
                return root + 1.5 * math.pi
            prev_x, prev_f = x, fx
    if abs(prev_f) <= 1e-9 * body.scale:
        return stop + 1.5 * math.pi
    raise NumericalError("no tangency root in the first quarter turn")


def theta_star(frame, side="left"):
    """Critical angle up to which the involute stays self-distancing."""
    if side == "left":
        return _theta_star_left(frame)
    if side == "right":
        return -_theta_star_left(reflect_frame(frame))
    raise DomainError(f"unknown side {side!r}")


# -- crossing of the two involutes ------------------------------------------------

@dataclass(frozen=True)
class Crossing:
    point: tuple
    theta_l: float
    theta_r: float

    def __iter__(self):
        return iter((self.point, self.theta_l, self.theta_r))


def _piece_angle(piece, side, p):
    """Parameter angle of point p (on the piece's circle), or None."""
    c = piece.center
    if side == "left":
        tx, ty = (c[0] - p[0]) / piece.radius, (c[1] - p[1]) / piece.radius
    else:
        tx, ty = (p[0] - c[0]) / piece.radius, (p[1] - c[1]) / piece.radius
    ang = math.atan2(-tx, ty)
    tol = 1e-9 / max(piece.radius, 1e-12)
    lifted = piece.lo - tol + (ang - piece.lo + tol) % TWO_PI
    if lifted <= piece.hi + tol:
        return min(max(lifted, piece.lo), piece.hi)
    return None


def involute_intersections(left, right, exclude_radius=None):
    """All intersection points of a left and a right involute, sorted by the
    left parameter; points within exclude_radius of x0 are dropped."""
    body = left.frame.body
    x0 = left.frame.x0
    if exclude_radius is None:
        exclude_radius = 1e-7 * body.perimeter
    dedupe = 1e-9 * body.scale
    hits = []
    for lp in left.pieces:
        for rp in right.pieces:
            for q in circle_circle(lp.center, lp.radius, rp.center, rp.radius):
                if math.hypot(q[0] - x0[0], q[1] - x0[1]) <= exclude_radius:
                    continue
                tl = _piece_angle(lp, "left", q)
                if tl is None:
                    continue
                tr = _piece_angle(rp, "right", q)
                if tr is None:
                    continue
                pl = left.point(tl)
                hits.append(Crossing(pl, tl, tr))
    hits.sort(key=lambda c: c.theta_l)
    out = []
    for h in hits:
        if out and math.hypot(h.point[0] - out[-1].point[0], h.point[1] - out[-1].point[1]) <= dedupe:
            continue
        out.append(h)
    return out


def crossing_windows(frame):
    """Open windows (left, right) that contain the crossing angles."""
    ts_l = theta_star(frame, "left")
    ts_r = theta_star(frame, "right")
    return ((ts_r + TWO_PI, frame.theta_plus + 1.5 * math.pi),
            (frame.theta_minus - 1.5 * math.pi, ts_l - TWO_PI))


def window_violations(frame, crossing, tol=1e-9):
    """Names of the window bounds the crossing angles fail to satisfy."""
    (wl_lo, wl_hi), (wr_lo, wr_hi) = crossing_windows(frame)
    out = []
    if not crossing.theta_l > wl_lo - tol:
        out.append("theta_l > theta*_r + 2pi")
    if not crossing.theta_l < wl_hi + tol:
        out.append("theta_l < theta0+ + 3pi/2")
    if not crossing.theta_r > wr_lo - tol:
        out.append("theta_r > theta0- - 3pi/2")
    if not crossing.theta_r < wr_hi + tol:
        out.append("theta_r < theta*_l - 2pi")
    return out


def first_crossing(frame):
    """First point (by left parameter) other than x0 where the left involute
    over one turn meets the right involute over one turn."""
    if frame.body.perimeter <= 0:
        raise DomainError("body has zero perimeter")
    left = build_involute(frame, "left", TWO_PI)
    right = build_involute(frame, "right", TWO_PI)
    hits = involute_intersections(left, right)
    if not hits:
        raise NumericalError("left and right involutes do not meet")
    first = hits[0]
    ts_l = theta_star(frame, "left")
    ts_r = theta_star(frame, "right")
    tol = 1e-9
    if not (first.theta_l < ts_l + tol and first.theta_r > ts_r - tol):
        raise NumericalError(
            f"crossing angles ({first.theta_l}, {first.theta_r}) lie beyond the critical angles")
    return first


# -- involute through an external point ----------------------------------------

def _left_through(body, z):
    z_l, _ = tangent_points(body, z)
    d = math.hypot(z[0] - z_l[0], z[1] - z_l[1])
    L = body.perimeter
    pos = body.position(z_l)
    xi = body.point_at(pos - d)
    frame = Frame(body, (float(xi[0]), float(xi[1])))
    turns = int(math.ceil(d / L)) + 1
    inv = build_involute(frame, "left", TWO_PI * turns)
    tx, ty = (z_l[0] - z[0]) / d, (z_l[1] - z[1]) / d
    ang = math.atan2(-tx, ty)
    best = None
    for p in inv.pieces:
        if math.hypot(p.center[0] - z_l[0], p.center[1] - z_l[1]) > body.eps:
            continue
        if abs(p.radius - d) > 1e-7 * (1 + d):
            continue
        tol = 1e-9
        lifted = p.lo - tol + (ang - p.lo + tol) % TWO_PI
        if lifted <= p.hi + tol:
            best = min(max(lifted, p.lo), p.hi)
            break
    if best is None:
        raise NumericalError("could not locate z on the constructed involute")
    return frame.x0, inv.truncated(frame.theta_plus, best)


def involute_through(body, z, side="left"):
    """Start point xi on the boundary and the involute from xi that ends at z."""
    z = (float(z[0]), float(z[1]))
    if body.contains(z):
        raise DomainError("z must lie outside the body")
    if side == "left":
        return _left_through(body, z)
    if side != "right":
        raise DomainError(f"unknown side {side!r}")
    mbody = reflect_body(body)
    mxi, minv = _left_through(mbody, reflect_point(z))
    xi = reflect_point(mxi)
    frame = Frame(body, xi, 0.0, -minv.frame.theta0)
    pieces = [InvolutePiece(reflect_point(p.center), p.radius, -p.hi, -p.lo) for p in minv.pieces]
    lo, hi = minv.theta_range
    return xi, Involute(frame, "right", pieces, (-hi, -lo))
