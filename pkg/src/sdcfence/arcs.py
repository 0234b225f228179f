"""Circular arcs, line segments and chains built from them."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, JoinError

JOIN_TOL = 1e-9


def _pt(p):
    return (float(p[0]), float(p[1]))


@dataclass(frozen=True)
class Arc:
    """Arc of the circle (center, radius) from polar angle t0 to t1.

    t1 > t0 means counterclockwise traversal, t1 < t0 clockwise.
    """
    center: tuple
    radius: float
    t0: float
    t1: float

    @property
    def sweep(self):
        return self.t1 - self.t0

    @property
    def orientation(self):
        return 1.0 if self.t1 >= self.t0 else -1.0

    @property
    def length(self):
        return self.radius * abs(self.sweep)

    def point(self, t):
        c = self.center
        return (c[0] + self.radius * math.cos(t), c[1] + self.radius * math.sin(t))

    @property
    def start(self):
        return self.point(self.t0)

    @property
    def end(self):
        return self.point(self.t1)

    def direction(self, t):
        s = self.orientation
        return (-s * math.sin(t), s * math.cos(t))

    @property
    def start_direction(self):
        return self.direction(self.t0)

    @property
    def end_direction(self):
        return self.direction(self.t1)

    def at_fraction(self, u):
        return self.point(self.t0 + u * self.sweep)

    def reversed(self):
        return Arc(self.center, self.radius, self.t1, self.t0)

    def split(self, u):
        tm = self.t0 + u * self.sweep
        return Arc(self.center, self.radius, self.t0, tm), Arc(self.center, self.radius, tm, self.t1)

    def transformed(self, fn_point, reflect=False):
        c = fn_point(self.center)
        if reflect:
            return Arc(c, self.radius, -self.t0, -self.t1)
        return Arc(c, self.radius, self.t0, self.t1)

    def contains_angle(self, t, tol=1e-12):
        """Return the curve fraction u in [0, 1] of polar angle t, or None."""
        lo, hi = sorted((self.t0, self.t1))
        tt = lo + (t - lo) % (2 * math.pi)
        if tt > hi + tol:
            if tt - 2 * math.pi >= lo - tol:
                tt -= 2 * math.pi
            else:
                return None
        if self.sweep == 0:
            return 0.0
        return min(max((tt - self.t0) / self.sweep, 0.0), 1.0)

    def to_json(self):
        return {"arc": {"center": list(self.center), "radius": self.radius,
                        "t0": self.t0, "t1": self.t1}}


@dataclass(frozen=True)
class Segment:
    a: tuple
    b: tuple

    @property
    def length(self):
        return math.hypot(self.b[0] - self.a[0], self.b[1] - self.a[1])

    @property
    def start(self):
        return self.a

    @property
    def end(self):
        return self.b

    def direction(self, _t=None):
        L = self.length
        if L == 0:
            return (0.0, 0.0)
        return ((self.b[0] - self.a[0]) / L, (self.b[1] - self.a[1]) / L)

    @property
    def start_direction(self):
        return self.direction()

    @property
    def end_direction(self):
        return self.direction()

    def at_fraction(self, u):
        return (self.a[0] + u * (self.b[0] - self.a[0]), self.a[1] + u * (self.b[1] - self.a[1]))

    def reversed(self):
        return Segment(self.b, self.a)

    def split(self, u):
        m = self.at_fraction(u)
        return Segment(self.a, m), Segment(m, self.b)

    def transformed(self, fn_point, reflect=False):
        return Segment(fn_point(self.a), fn_point(self.b))

    def to_json(self):
        return {"seg": {"a": list(self.a), "b": list(self.b)}}


def piece_from_json(obj):
    if "arc" in obj:
        d = obj["arc"]
        return Arc(_pt(d["center"]), float(d["radius"]), float(d["t0"]), float(d["t1"]))
    if "seg" in obj:
        d = obj["seg"]
        return Segment(_pt(d["a"]), _pt(d["b"]))
    raise InvalidInput(f"unknown chain piece {obj!r}")


class ArcChain:
    """An oriented curve made of arcs and segments joined end to end.

    A chain may be a single point, stored as ``origin`` with no pieces.
    """

    def __init__(self, pieces=(), origin=None, tol=JOIN_TOL):
        pieces = tuple(p for p in pieces if p.length > 0.0)
        for p, q in zip(pieces, pieces[1:]):
            if _dist(p.end, q.start) > tol * (1 + _mag(p.end)):
                raise JoinError(f"pieces do not join: {p.end} vs {q.start}")
        self.pieces = pieces
        if origin is None:
            if not pieces:
                raise InvalidInput("an empty chain needs an origin point")
            origin = pieces[0].start
        self.origin = _pt(origin)

    @classmethod
    def point(cls, p):
        return cls((), origin=p)

    @classmethod
    def polyline(cls, vertices):
        vs = [_pt(v) for v in vertices]
        if not vs:
            raise InvalidInput("polyline needs at least one vertex")
        segs = [Segment(a, b) for a, b in zip(vs, vs[1:]) if _dist(a, b) > 0]
        return cls(segs, origin=vs[0])

    @property
    def start(self):
        return self.origin

    @property
    def end(self):
        return self.pieces[-1].end if self.pieces else self.origin

    @property
    def length(self):
        return float(sum(p.length for p in self.pieces))

    @property
    def is_point(self):
        return not self.pieces

    def __len__(self):
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def __repr__(self):
        kinds = "".join("A" if isinstance(p, Arc) else "S" for p in self.pieces)
        return f"ArcChain({kinds or 'point'}, start={self.start}, end={self.end})"

    def reversed(self):
        return ArcChain([p.reversed() for p in reversed(self.pieces)], origin=self.end)

    def transformed(self, fn_point, reflect=False):
        return ArcChain([p.transformed(fn_point, reflect) for p in self.pieces],
                        origin=fn_point(self.origin))

    def vertices(self):
        """Piece endpoints in order."""
        out = [self.origin]
        out.extend(p.end for p in self.pieces)
        return out

    def sample(self, step=None, per_arc=None, closed_ends=True):
        """Points along the chain: segment endpoints plus arc samples."""
        out = [self.origin]
        for p in self.pieces:
            if isinstance(p, Arc):
                if per_arc is not None:
                    m = per_arc
                else:
                    d = 1e-3 if step is None else step
                    m = max(2, int(math.ceil(abs(p.sweep) / d)))
                ts = np.linspace(p.t0, p.t1, m + 1)[1:]
                c = p.center
                out.extend(zip(c[0] + p.radius * np.cos(ts), c[1] + p.radius * np.sin(ts)))
            else:
                out.append(p.b)
        return np.array(out, dtype=float)

    def sample_uniform(self, n):
        """n points equally spaced in arc length (n >= 2)."""
        if self.is_point:
            return np.repeat(np.array([self.origin]), n, axis=0)
        lens = np.array([p.length for p in self.pieces])
        cum = np.concatenate([[0.0], np.cumsum(lens)])
        ss = np.linspace(0.0, cum[-1], n)
        idx = np.clip(np.searchsorted(cum, ss, side="right") - 1, 0, len(lens) - 1)
        pts = []
        for s, i in zip(ss, idx):
            u = 0.0 if lens[i] == 0 else min(max((s - cum[i]) / lens[i], 0.0), 1.0)
            pts.append(self.pieces[i].at_fraction(u))
        return np.array(pts)

    def point_at_length(self, s):
        acc = 0.0
        for p in self.pieces:
            if acc + p.length >= s:
                return p.at_fraction((s - acc) / p.length if p.length else 0.0)
            acc += p.length
        return self.end

    def truncated_at_length(self, s):
        """Prefix of the chain with arc length s."""
        out = []
        acc = 0.0
        for p in self.pieces:
            if acc + p.length <= s:
                out.append(p)
                acc += p.length
                continue
            u = (s - acc) / p.length
            if u > 0:
                out.append(p.split(u)[0])
            break
        return ArcChain(out, origin=self.origin)

    def to_json(self):
        return [p.to_json() for p in self.pieces]


def chain_from_json(obj):
    if isinstance(obj, dict) and "vertices" in obj:
        return ArcChain.polyline(obj["vertices"])
    pieces = [piece_from_json(o) for o in obj]
    return ArcChain(pieces)


def concat(*chains, tol=JOIN_TOL):
    """Join chains end to start; raises JoinError on a gap."""
    chains = [c for c in chains]
    out = list(chains[0].pieces)
    end = chains[0].end
    for c in chains[1:]:
        if _dist(end, c.start) > tol * (1 + _mag(end)):
            raise JoinError(f"cannot join {end} to {c.start}")
        pieces = list(c.pieces)
        if pieces and out:
            # absorb rounding so the joint matches exactly
            first = pieces[0]
            if isinstance(first, Segment):
                pieces[0] = Segment(out[-1].end, first.b)
        out.extend(pieces)
        end = c.end
    return ArcChain(out, origin=chains[0].start, tol=max(tol, JOIN_TOL))


def _dist(a, b):
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _mag(a):
    return max(abs(a[0]), abs(a[1]))


# -- intersection primitives ---------------------------------------------------

def circle_circle(c1, r1, c2, r2, tol=1e-12):
    """Intersection points of two circles (0, 1 or 2 points)."""
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    d = math.hypot(dx, dy)
    if d == 0.0:
        return []
    a = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    h2 = r1 * r1 - a * a
    scale = max(r1, r2, d)
    if h2 < -tol * scale * scale:
        return []
    h = math.sqrt(max(h2, 0.0))
    ex, ey = dx / d, dy / d
    mx, my = c1[0] + a * ex, c1[1] + a * ey
    if h == 0.0:
        return [(mx, my)]
    return [(mx - h * ey, my + h * ex), (mx + h * ey, my - h * ex)]


def line_circle(p, d, c, r):
    """Parameters lam with |p + lam*d - c| = r (d need not be unit)."""
    fx, fy = p[0] - c[0], p[1] - c[1]
    A = d[0] * d[0] + d[1] * d[1]
    B = 2 * (fx * d[0] + fy * d[1])
    C = fx * fx + fy * fy - r * r
    disc = B * B - 4 * A * C
    if disc < 0:
        if disc > -1e-12 * max(B * B, 1.0):
            disc = 0.0
        else:
            return []
    s = math.sqrt(disc)
    return sorted({(-B - s) / (2 * A), (-B + s) / (2 * A)})


def arc_fraction(arc, p, tol=1e-9):
    """Curve fraction of a point known to lie on arc's circle, or None."""
    t = math.atan2(p[1] - arc.center[1], p[0] - arc.center[0])
    tol_ang = tol / max(arc.radius, 1e-300)
    return arc.contains_angle(t, tol_ang)


def ray_piece_hits(p, d, piece, tol=1e-12):
    """Ray parameters lam >= 0 where p + lam*d meets the piece, with the
    piece fraction."""
    hits = []
    if isinstance(piece, Segment):
        a, b = piece.a, piece.b
        e = (b[0] - a[0], b[1] - a[1])
        den = d[0] * e[1] - d[1] * e[0]
        w = (a[0] - p[0], a[1] - p[1])
        if abs(den) <= 1e-15 * (math.hypot(*d) * math.hypot(*e)):
            return hits
        lam = (w[0] * e[1] - w[1] * e[0]) / den
        u = (w[0] * d[1] - w[1] * d[0]) / den
        if -tol <= u <= 1 + tol and lam >= -tol:
            hits.append((lam, min(max(u, 0.0), 1.0)))
        return hits
    for lam in line_circle(p, d, piece.center, piece.radius):
        if lam < -tol:
            continue
        q = (p[0] + lam * d[0], p[1] + lam * d[1])
        u = arc_fraction(piece, q)
        if u is not None:
            hits.append((lam, u))
    return hits


def piece_piece_hits(P, Q, tol=1e-9):
    """Intersection points of two pieces as (point, frac_on_P, frac_on_Q)."""
    out = []
    if isinstance(P, Segment) and isinstance(Q, Segment):
        d = (P.b[0] - P.a[0], P.b[1] - P.a[1])
        for lam, u in ray_piece_hits(P.a, d, Q):
            if lam <= 1 + 1e-12:
                out.append((P.at_fraction(min(lam, 1.0)), min(lam, 1.0), u))
        return out
    if isinstance(P, Segment):
        return [(pt, b, a) for pt, a, b in piece_piece_hits(Q, P, tol)]
    if isinstance(Q, Segment):
        d = (Q.b[0] - Q.a[0], Q.b[1] - Q.a[1])
        for lam, u in ray_piece_hits(Q.a, d, P):
            if lam <= 1 + 1e-12:
                out.append((Q.at_fraction(min(lam, 1.0)), u, min(lam, 1.0)))
        return out
    for pt in circle_circle(P.center, P.radius, Q.center, Q.radius):
        u = arc_fraction(P, pt, tol)
        v = arc_fraction(Q, pt, tol)
        if u is not None and v is not None:
            out.append((pt, u, v))
    return out


def point_piece_distance(q, piece):
    if isinstance(piece, Segment):
        a, b = piece.a, piece.b
        ab = (b[0] - a[0], b[1] - a[1])
        L2 = ab[0] ** 2 + ab[1] ** 2
        t = 0.0 if L2 == 0 else ((q[0] - a[0]) * ab[0] + (q[1] - a[1]) * ab[1]) / L2
        t = min(max(t, 0.0), 1.0)
        return math.hypot(q[0] - a[0] - t * ab[0], q[1] - a[1] - t * ab[1])
    c = piece.center
    t = math.atan2(q[1] - c[1], q[0] - c[0])
    if piece.contains_angle(t) is not None:
        return abs(math.hypot(q[0] - c[0], q[1] - c[1]) - piece.radius)
    return min(_dist(q, piece.start), _dist(q, piece.end))


def chain_distance(q, chain):
    if chain.is_point:
        return _dist(q, chain.origin)
    return min(point_piece_distance(q, p) for p in chain.pieces)


def _segment_angle(q, a, b):
    ax, ay = a[0] - q[0], a[1] - q[1]
    bx, by = b[0] - q[0], b[1] - q[1]
    return math.atan2(ax * by - ay * bx, ax * bx + ay * by)


def winding_number(q, pieces):
    """Winding number of a closed piecewise curve around q (q off the curve)."""
    total = 0.0
    for p in pieces:
        if isinstance(p, Segment):
            total += _segment_angle(q, p.a, p.b)
            continue
        m = max(1, int(math.ceil(abs(p.sweep) / (math.pi / 2))))
        for k in range(m):
            ta = p.t0 + p.sweep * k / m
            tb = p.t0 + p.sweep * (k + 1) / m
            a, b = p.point(ta), p.point(tb)
            ang = _segment_angle(q, a, b)
            # q between the chord and the arc: the arc passes on the far side
            c = p.center
            if math.hypot(q[0] - c[0], q[1] - c[1]) < p.radius:
                side_q = (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0])
                mid = p.point(0.5 * (ta + tb))
                side_m = (b[0] - a[0]) * (mid[1] - a[1]) - (b[1] - a[1]) * (mid[0] - a[0])
                if side_q * side_m > 0:
                    ang += -2 * math.pi if side_m > 0 else 2 * math.pi
            total += ang
    return int(round(total / (2 * math.pi)))
