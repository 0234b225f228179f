"""Convex polygon bodies and their support-function machinery.

Angles are lifted reals: nothing here reduces an angle modulo 2*pi unless
the operation is explicitly invariant under that reduction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateError, DomainError

TWO_PI = 2.0 * math.pi
EPS_GEOM = 1e-9
EPS_ROOT = 1e-12


def unit(theta):
    """Outward unit vector n_theta."""
    return np.array([math.cos(theta), math.sin(theta)])


def tangent(theta):
    """Counterclockwise unit tangent t_theta, n_theta rotated by +pi/2."""
    return np.array([-math.sin(theta), math.cos(theta)])


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def as_point(p):
    arr = np.asarray(p, dtype=float).reshape(2)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"non-finite point {p!r}")
    return arr


def wrap_to(theta, lo):
    """Lift theta into [lo, lo + 2*pi)."""
    return lo + (theta - lo) % TWO_PI


def _scale(points):
    return 1.0 + float(np.max(np.abs(points))) if len(points) else 1.0


def _monotone_chain(pts, eps):
    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                d = math.hypot(p[0] - o[0], p[1] - o[1])
                if cross(a - o, p - o) <= eps * d:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    return lower[:-1] + upper[:-1]


def hull_vertices(points):
    """Canonical CCW hull vertex array (may have 1, 2 or more rows)."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise DegenerateError("empty point set")
    if not np.all(np.isfinite(pts)):
        raise DomainError("non-finite coordinates")
    eps = EPS_GEOM * _scale(pts)
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    keep = [pts[0]]
    for p in pts[1:]:
        if math.hypot(*(p - keep[-1])) > eps:
            keep.append(p)
    if len(keep) == 1:
        return np.array(keep)
    if len(keep) == 2:
        return np.array(keep)
    hull = _monotone_chain(keep, eps)
    if len(hull) < 2:
        # every point lies on one line; keep the extremes
        return np.array([keep[0], keep[-1]])
    hv = np.array(hull)
    # drop near-duplicates that survived the collinearity test
    out = [hv[0]]
    for p in hv[1:]:
        if math.hypot(*(p - out[-1])) > eps:
            out.append(p)
    if len(out) > 2 and math.hypot(*(out[-1] - out[0])) <= eps:
        out.pop()
    return np.array(out)


class ConvexBody:
    """A convex polygon (or a segment) stored as a canonical CCW vertex cycle.

    The boundary of a segment body is traversed on both sides, so its
    perimeter is twice the segment length.
    """

    def __init__(self, points):
        verts = hull_vertices(points)
        if len(verts) < 2:
            raise DegenerateError("body reduced to a point")
        self.vertices = verts
        self.vertices.setflags(write=False)
        n = len(verts)
        self.n = n
        nxt = np.roll(verts, -1, axis=0)
        edges = nxt - verts
        self.edge_len = np.hypot(edges[:, 0], edges[:, 1])
        self.cum_len = np.concatenate([[0.0], np.cumsum(self.edge_len)])
        self.perimeter = float(self.cum_len[-1])
        raw = np.arctan2(-edges[:, 0], edges[:, 1])
        normals = [raw[0] % TWO_PI]
        for a in raw[1:]:
            normals.append(wrap_to(a, normals[-1]))
        self.edge_normals = np.array(normals)
        self.scale = _scale(verts)
        self.eps = EPS_GEOM * self.scale

    # -- basic data ---------------------------------------------------------
    @property
    def is_segment(self):
        return self.n == 2

    def __eq__(self, other):
        return (isinstance(other, ConvexBody) and self.n == other.n
                and np.allclose(self.vertices, other.vertices, atol=EPS_GEOM, rtol=0))

    def __hash__(self):
        return hash(tuple(np.round(self.vertices, 9).ravel()))

    def __repr__(self):
        pts = ", ".join(f"({x:.6g}, {y:.6g})" for x, y in self.vertices)
        return f"ConvexBody([{pts}])"

    def area(self):
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        return 0.5 * float(np.sum(v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0]))

    def vertex_cone(self, i):
        """Lifted normal-cone interval [lo, hi] of vertex i."""
        hi = self.edge_normals[i]
        lo = self.edge_normals[i - 1] - (TWO_PI if i == 0 else 0.0)
        return lo, hi

    # -- boundary parameterisation -------------------------------------------
    def point_at(self, pos):
        """Boundary point at counterclockwise arc length pos from vertex 0."""
        L = self.perimeter
        u = pos % L
        i = int(np.searchsorted(self.cum_len, u, side="right") - 1)
        i = min(max(i, 0), self.n - 1)
        t = (u - self.cum_len[i]) / self.edge_len[i]
        a = self.vertices[i]
        b = self.vertices[(i + 1) % self.n]
        return a + min(max(t, 0.0), 1.0) * (b - a)

    def locate(self, q, tol=None):
        """Return ('vertex', i) or ('edge', i, t) for a boundary point q."""
        q = as_point(q)
        tol = self.eps if tol is None else tol
        d = np.hypot(*(self.vertices - q).T)
        i = int(np.argmin(d))
        if d[i] <= tol:
            return ("vertex", i)
        best = None
        for k in range(self.n):
            a = self.vertices[k]
            b = self.vertices[(k + 1) % self.n]
            ab = b - a
            t = float(np.dot(q - a, ab) / np.dot(ab, ab))
            if 0.0 <= t <= 1.0:
                dist = abs(cross(ab, q - a)) / self.edge_len[k]
                if dist <= tol and (best is None or dist < best[0]):
                    best = (dist, k, t)
        if best is None:
            raise DomainError(f"point {tuple(q)} is not on the boundary")
        return ("edge", best[1], best[2])

    def position(self, q, tol=None):
        """Counterclockwise arc length from vertex 0 to boundary point q."""
        loc = self.locate(q, tol)
        if loc[0] == "vertex":
            return float(self.cum_len[loc[1]])
        _, k, t = loc
        return float(self.cum_len[k] + t * self.edge_len[k])

    def signed_distance(self, q):
        """Distance to the boundary, negative inside the body."""
        return float(self.signed_distances(np.asarray(as_point(q), dtype=float)[None, :])[0])

    def signed_distances(self, points):
        q = np.asarray(points, dtype=float).reshape(-1, 2)
        a = self.vertices
        ab = np.roll(a, -1, axis=0) - a
        w = q[:, None, :] - a[None, :, :]
        t = np.clip((w * ab).sum(axis=2) / (ab * ab).sum(axis=1), 0.0, 1.0)
        d = np.hypot(w[..., 0] - t * ab[:, 0], w[..., 1] - t * ab[:, 1]).min(axis=1)
        if self.is_segment:
            return d
        inside = (ab[:, 0] * w[..., 1] - ab[:, 1] * w[..., 0] > 0).all(axis=1)
        return np.where(inside, -d, d)

    def contains(self, q, tol=None):
        tol = self.eps if tol is None else tol
        return self.signed_distance(q) <= tol

    def interior_contains(self, q, tol=None):
        tol = self.eps if tol is None else tol
        return self.signed_distance(q) < -tol


# -- support function --------------------------------------------------------

def support_value(body, theta):
    return float(np.max(body.vertices @ unit(theta)))


def _active(body, theta):
    vals = body.vertices @ unit(theta)
    h = float(np.max(vals))
    return h, np.nonzero(vals >= h - body.eps)[0]


def support_derivatives(body, theta):
    """One-sided derivatives (left, right) of the support function."""
    _, act = _active(body, theta)
    dots = body.vertices[act] @ tangent(theta)
    return float(np.min(dots)), float(np.max(dots))


def support_integral(body, a, b):
    """Closed-form integral of the support function over [a, b]."""
    if b < a:
        return -support_integral(body, b, a)
    total = 0.0
    cuts = [a, *edge_normal_breaks(body, a, b), b]
    for lo, hi in zip(cuts, cuts[1:]):
        # the midpoint keeps the vertex choice away from the break angles
        v = body.vertices[_vertex_for_angle(body, 0.5 * (lo + hi))]
        total += (v[0] * (math.sin(hi) - math.sin(lo))
                  - v[1] * (math.cos(hi) - math.cos(lo)))
    return total


def _vertex_for_angle(body, theta, right=True):
    """Vertex whose normal cone contains theta; at an edge normal the later
    vertex (right=True) or the earlier one."""
    base = body.edge_normals[0]
    u = wrap_to(theta, base)
    k = int(np.searchsorted(body.edge_normals, u, side="right" if right else "left"))
    return k % body.n


def edge_normal_breaks(body, a, b):
    """Lifted edge-normal angles in the open interval (a, b), increasing."""
    out = []
    base = math.floor((a - body.edge_normals[0]) / TWO_PI) * TWO_PI
    k = 0
    while True:
        for ang in body.edge_normals:
            t = ang + base + k * TWO_PI
            if t >= b:
                return out
            if t > a:
                out.append(t)
        k += 1


@dataclass(frozen=True)
class FaceSet:
    """Image of the reverse Gauss map: a vertex or a closed edge."""
    points: tuple

    @property
    def is_point(self):
        return len(self.points) == 1

    @property
    def length(self):
        if self.is_point:
            return 0.0
        a, b = self.points
        return math.hypot(b[0] - a[0], b[1] - a[1])


def edge_index_for_normal(body, theta, tol=EPS_ROOT * 1e2):
    base = body.edge_normals[0]
    u = wrap_to(theta, base - tol)
    for k, ang in enumerate(body.edge_normals):
        if abs(ang - u) <= tol or abs(ang + TWO_PI - u) <= tol:
            return k
    return None


def reverse_gauss(body, theta):
    k = edge_index_for_normal(body, theta)
    if k is not None:
        a = body.vertices[k]
        b = body.vertices[(k + 1) % body.n]
        return FaceSet((tuple(map(float, a)), tuple(map(float, b))))
    i = _vertex_for_angle(body, theta)
    return FaceSet((tuple(map(float, body.vertices[i])),))


# -- normal cones --------------------------------------------------------------

@dataclass(frozen=True)
class AngleInterval:
    lo: float
    hi: float
    empty: bool = False

    @property
    def width(self):
        return 0.0 if self.empty else self.hi - self.lo

    def contains(self, theta, tol=EPS_GEOM):
        if self.empty:
            return False
        u = wrap_to(theta, self.lo - tol)
        return u <= self.hi + tol

    def contains_direction(self, v, tol=EPS_GEOM):
        v = np.asarray(v, dtype=float)
        if math.hypot(*v) == 0:
            return True
        return self.contains(math.atan2(v[1], v[0]), tol)


EMPTY_CONE = AngleInterval(0.0, 0.0, True)


def normal_cone(body, q):
    q = as_point(q)
    sd = body.signed_distance(q)
    if sd > body.eps:
        raise DomainError(f"point {tuple(q)} is outside the body")
    if sd < -body.eps:
        return EMPTY_CONE
    loc = body.locate(q)
    if loc[0] == "vertex":
        lo, hi = body.vertex_cone(loc[1])
        return AngleInterval(float(lo), float(hi))
    ang = float(body.edge_normals[loc[1]])
    return AngleInterval(ang, ang)


# -- frames and cadlag arc-length maps ---------------------------------------

@dataclass(frozen=True)
class Frame:
    """Initial data for involutes: a boundary point, its arc-length label and
    a lifted outward normal angle at that point."""
    body: ConvexBody
    x0: tuple
    s0: float = 0.0
    theta0: float = None
    theta_minus: float = field(init=False)
    theta_plus: float = field(init=False)
    pos0: float = field(init=False)
    vertex_index: int = field(init=False)

    def __post_init__(self):
        body = self.body
        loc = body.locate(self.x0)
        if loc[0] == "vertex":
            x0 = body.vertices[loc[1]]
            lo, hi = body.vertex_cone(loc[1])
            vidx = loc[1]
        else:
            _, k, t = loc
            x0 = body.vertices[k] + t * (body.vertices[(k + 1) % body.n] - body.vertices[k])
            lo = hi = float(body.edge_normals[k])
            vidx = -1
        theta0 = self.theta0
        if theta0 is None:
            theta0 = float(hi)
        tol = 1e-9
        shift = math.floor((theta0 - lo + tol) / TWO_PI) * TWO_PI
        if theta0 > hi + shift + tol:
            raise DomainError(f"theta0={theta0} is not an outward normal at x0")
        object.__setattr__(self, "x0", (float(x0[0]), float(x0[1])))
        object.__setattr__(self, "theta0", float(theta0))
        object.__setattr__(self, "theta_minus", float(lo + shift))
        object.__setattr__(self, "theta_plus", float(hi + shift))
        object.__setattr__(self, "pos0", body.position(x0))
        object.__setattr__(self, "vertex_index", vidx)

    @property
    def opening(self):
        """Opening of the tangent sector at x0."""
        return math.pi - (self.theta_plus - self.theta_minus)

    def offset_ccw(self, q):
        """Counterclockwise boundary distance from x0 to q, in [0, L)."""
        L = self.body.perimeter
        u = (self.body.position(q) - self.pos0) % L
        return 0.0 if u > L - self.body.eps else u

    def offset_cw(self, q):
        L = self.body.perimeter
        u = (self.pos0 - self.body.position(q)) % L
        return 0.0 if u > L - self.body.eps else u

    def x_left(self, s):
        return self.body.point_at(self.pos0 + (s - self.s0))

    def x_right(self, s):
        return self.body.point_at(self.pos0 - (s - self.s0))


def _face_offsets(frame, face, ccw):
    """Offset interval [lo, lo + len] of a face in the left (ccw) or right
    boundary parameter, relative to s0."""
    off = frame.offset_ccw if ccw else frame.offset_cw
    if face.is_point:
        u = off(face.points[0])
        return u, u
    a, b = face.points
    start = a if ccw else b
    u = off(start)
    return u, u + face.length


def arc_param_left(frame, theta):
    """Cadlag left arc-length map s_{l+}, following the period-indexed sup
    definition with windows anchored at (theta0, s0)."""
    if theta < frame.theta0 - EPS_ROOT:
        raise DomainError("theta precedes theta0 for the left map")
    L = frame.body.perimeter
    k = math.floor((theta - frame.theta0) / TWO_PI + EPS_ROOT)
    at_period = abs(theta - frame.theta0 - k * TWO_PI) <= EPS_ROOT * (1 + abs(theta))
    face = reverse_gauss(frame.body, theta)
    lo, hi = _face_offsets(frame, face, ccw=True)
    best = None
    for m in (-1, 0, 1):
        a, b = lo + m * L, hi + m * L
        if at_period:
            ok = b >= 0.0 and a < L
        else:
            ok = b > 0.0 and a <= L
        if ok:
            cand = min(b, L)
            best = cand if best is None else max(best, cand)
    return frame.s0 + k * L + best


def arc_param_right(frame, theta):
    """Cadlag right arc-length map s_{r-} (inf definition, clockwise
    parameter), windows anchored at (theta0, s0)."""
    if theta > frame.theta0 + EPS_ROOT:
        raise DomainError("theta exceeds theta0 for the right map")
    L = frame.body.perimeter
    k = math.floor((frame.theta0 - theta) / TWO_PI + EPS_ROOT)
    at_period = abs(frame.theta0 - theta - k * TWO_PI) <= EPS_ROOT * (1 + abs(theta))
    face = reverse_gauss(frame.body, theta)
    lo, hi = _face_offsets(frame, face, ccw=False)
    best = None
    for m in (-1, 0, 1):
        a, b = lo + m * L, hi + m * L
        if at_period:
            ok = b > -L and a <= 0.0
            lo_w = -L
        else:
            ok = b >= 0.0 and a < L
            lo_w = 0.0
        if ok:
            cand = max(a, lo_w)
            best = cand if best is None else min(best, cand)
    return frame.s0 + k * L + best


# -- external points ----------------------------------------------------------

def tangent_points(body, z):
    """Contact points (z_l, z_r) of the two support lines through z.

    The body lies to the left of the ray z -> z_l and to the right of the
    ray z -> z_r, so the triangle z, z_l, z_r is counterclockwise.  When a
    support line touches a whole edge the endpoint nearest z is returned.
    """
    z = as_point(z)
    if body.contains(z):
        raise DomainError("z must lie outside the body")
    c = body.vertices.mean(axis=0)
    ref = c - z
    rel = body.vertices - z
    ang = np.arctan2(ref[0] * rel[:, 1] - ref[1] * rel[:, 0], rel @ ref)
    dist = np.hypot(rel[:, 0], rel[:, 1])
    tol = 1e-12 * (1 + np.abs(ang).max())

    def pick(idx_sorted_val):
        cand = np.nonzero(np.abs(ang - idx_sorted_val) <= tol)[0]
        return body.vertices[cand[np.argmin(dist[cand])]]

    z_l = pick(ang.min())
    z_r = pick(ang.max())
    return (float(z_l[0]), float(z_l[1])), (float(z_r[0]), float(z_r[1]))


def convex_hull(points):
    return ConvexBody(points)


def cap_body(body, p):
    return ConvexBody(np.vstack([body.vertices, as_point(p)]))


def boundary_arc_length(body, x1, x2, orientation="ccw"):
    L = body.perimeter
    u = (body.position(x2) - body.position(x1)) % L
    if u > L - body.eps:
        u = 0.0
    if orientation == "ccw":
        return u
    if orientation == "cw":
        return 0.0 if u == 0.0 else L - u
    raise DomainError(f"unknown orientation {orientation!r}")
