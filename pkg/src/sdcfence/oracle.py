"""Brute-force reference computations used to cross-check the exact code.

Nothing here calls into the modules being checked: the routines work on
raw vertex lists and on the plain fields of chain pieces, with their own
sampling, ray casting and polygon walking.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SLACK = 1e-7


@dataclass(frozen=True)
class SampledCurve:
    params: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        if len(self.params) > 1 and np.any(np.diff(self.params) <= 0):
            raise ValueError("sample parameters must be strictly increasing")


# -- sampling of chain data ------------------------------------------------------

def _piece_kind(piece):
    return "arc" if hasattr(piece, "radius") else "seg"


def _piece_length(piece):
    if _piece_kind(piece) == "arc":
        return abs(piece.t1 - piece.t0) * piece.radius
    return math.hypot(piece.b[0] - piece.a[0], piece.b[1] - piece.a[1])


def _piece_eval(piece, u):
    u = np.asarray(u, dtype=float)
    if _piece_kind(piece) == "arc":
        t = piece.t0 + u * (piece.t1 - piece.t0)
        return np.column_stack([piece.center[0] + piece.radius * np.cos(t),
                                piece.center[1] + piece.radius * np.sin(t)])
    a, b = np.asarray(piece.a, float), np.asarray(piece.b, float)
    return a[None, :] + u[:, None] * (b - a)[None, :]


def sample_curve(chain, n):
    """n points equally spaced in arc length along a chain."""
    pieces = list(chain.pieces)
    if not pieces:
        o = np.asarray(chain.origin, float)
        return SampledCurve(np.arange(n, dtype=float), np.repeat(o[None, :], n, axis=0))
    lens = np.array([_piece_length(p) for p in pieces])
    cum = np.concatenate([[0.0], np.cumsum(lens)])
    s = np.linspace(0.0, cum[-1], n)
    idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(pieces) - 1)
    pts = np.empty((n, 2))
    for k, piece in enumerate(pieces):
        mask = idx == k
        if np.any(mask):
            u = np.clip((s[mask] - cum[k]) / lens[k], 0.0, 1.0)
            pts[mask] = _piece_eval(piece, u)
    # strictly increasing parameters for degenerate zero-length tails
    if n > 1 and np.any(np.diff(s) <= 0):
        s = np.arange(n, dtype=float)
    return SampledCurve(s, pts)


def refined_samples(chain, n, depth=8):
    """Uniform samples plus piece endpoints and points at geometrically
    shrinking offsets after every piece start, in curve order."""
    pieces = list(chain.pieces)
    if not pieces:
        return sample_curve(chain, n).points
    lens = np.array([_piece_length(p) for p in pieces])
    cum = np.concatenate([[0.0], np.cumsum(lens)])
    s = list(np.linspace(0.0, cum[-1], n)) + list(cum)
    for k in range(len(pieces)):
        s.extend(cum[k] + lens[k] * 10.0 ** -np.arange(1, depth + 1))
    s = np.unique(np.clip(s, 0.0, cum[-1]))
    idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(pieces) - 1)
    pts = np.empty((len(s), 2))
    for k, piece in enumerate(pieces):
        mask = idx == k
        if np.any(mask):
            pts[mask] = _piece_eval(piece, np.clip((s[mask] - cum[k]) / lens[k], 0.0, 1.0))
    return pts


def _as_points(curve, n):
    if isinstance(curve, SampledCurve):
        return curve.points
    if hasattr(curve, "pieces"):
        return refined_samples(curve, n)
    return np.asarray(curve, dtype=float).reshape(-1, 2)


# -- self-distancing -------------------------------------------------------------

def sampled_distancing_witness(curve, n_samples=200, slack=SLACK):
    """Indices (anchor, earlier, later) of the worst violation, or None."""
    if n_samples < 3:
        raise ValueError("need at least three samples")
    pts = _as_points(curve, n_samples)
    n = len(pts)
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    worst = (slack, None)
    for a in range(n - 2):
        row = dist[a, a + 1:]
        run = np.maximum.accumulate(row)
        drop = run - row
        j = int(np.argmax(drop))
        if drop[j] > worst[0]:
            i = int(np.argmax(row[:j + 1]))
            worst = (float(drop[j]), (a, a + 1 + i, a + 1 + j))
    return worst[1]


def sampled_self_distancing(curve, n_samples=200, slack=SLACK):
    """True when no sampled triple shows a later point moving back toward an
    earlier anchor by more than slack."""
    return sampled_distancing_witness(curve, n_samples, slack) is None


def sampled_distancing_from(vertices, curve, n_samples=200, grid=12, slack=SLACK):
    """Distance from every sampled point of a convex polygon (vertices, edge
    samples and an interior grid) is nondecreasing along the curve."""
    v = np.asarray(vertices, float).reshape(-1, 2)
    probes = [v]
    for a, b in zip(v, np.roll(v, -1, axis=0)):
        u = np.linspace(0, 1, grid)[1:-1, None]
        probes.append(a + u * (b - a))
    c = v.mean(axis=0)
    for w in np.linspace(0.1, 0.9, 5):
        probes.append(c + w * (v - c))
    probes = np.vstack(probes)
    pts = _as_points(curve, n_samples)
    d = np.hypot(pts[None, :, 0] - probes[:, None, 0], pts[None, :, 1] - probes[:, None, 1])
    run = np.maximum.accumulate(d, axis=1)
    return bool(np.all(run - d <= slack))


# -- arc length ------------------------------------------------------------------

def polygonalized_arc_length(chain, n):
    """Sum of chords over n samples per piece, proportional to piece length."""
    if n < 2:
        raise ValueError("n must be at least 2")
    pieces = list(chain.pieces)
    if not pieces:
        return 0.0
    lens = np.array([_piece_length(p) for p in pieces])
    total_len = float(lens.sum())
    out = 0.0
    for p, L in zip(pieces, lens):
        if _piece_kind(p) == "seg":
            out += L
            continue
        m = max(2, int(round(n * L / total_len)))
        pts = _piece_eval(p, np.linspace(0.0, 1.0, m + 1))
        out += float(np.sum(np.hypot(*np.diff(pts, axis=0).T)))
    return out


# -- membership ------------------------------------------------------------------

def _ray_hits_piece(p, d, piece):
    """Ray parameters lam > 0 where p + lam d crosses the piece."""
    out = []
    if _piece_kind(piece) == "seg":
        a = np.asarray(piece.a, float)
        e = np.asarray(piece.b, float) - a
        den = d[0] * e[1] - d[1] * e[0]
        if den == 0.0:
            return out
        w = a - p
        lam = (w[0] * e[1] - w[1] * e[0]) / den
        u = (w[0] * d[1] - w[1] * d[0]) / den
        if lam > 0 and 0.0 <= u < 1.0:
            out.append(lam)
        return out
    c = np.asarray(piece.center, float)
    f = p - c
    B = 2 * (f @ d)
    C = f @ f - piece.radius ** 2
    disc = B * B - 4 * C
    if disc <= 0:
        return out
    sq = math.sqrt(disc)
    lo, hi = sorted((piece.t0, piece.t1))
    for lam in ((-B - sq) / 2, (-B + sq) / 2):
        if lam <= 0:
            continue
        q = p + lam * d
        t = math.atan2(q[1] - c[1], q[0] - c[0])
        tt = lo + (t - lo) % (2 * math.pi)
        if tt < hi:
            out.append(lam)
    return out


def sampled_membership(boundary, p, n_rays=7, seed=0):
    """Crossing-number vote over random rays for a closed boundary.

    ``boundary`` is a sequence of pieces (or a chain) forming a closed loop.
    """
    pieces = list(boundary.pieces) if hasattr(boundary, "pieces") else list(boundary)
    p = np.asarray(p, dtype=float)
    rng = np.random.default_rng(seed)
    votes = 0
    for ang in rng.uniform(0.0, 2 * math.pi, n_rays):
        d = np.array([math.cos(ang), math.sin(ang)])
        cnt = sum(len(_ray_hits_piece(p, d, q)) for q in pieces)
        votes += cnt % 2
    return votes * 2 > n_rays


# -- involutes from the string model ----------------------------------------------

def _ccw_walk(vertices, x0):
    """Vertices met going counterclockwise from x0 (strictly after it), with
    the string length used on arrival, for one full turn."""
    v = [tuple(map(float, q)) for q in vertices]
    n = len(v)
    x0 = tuple(map(float, x0))
    # find the edge containing x0 (prefer the edge leaving x0 if it is a vertex)
    best = None
    for k in range(n):
        a, b = v[k], v[(k + 1) % n]
        ab = (b[0] - a[0], b[1] - a[1])
        L2 = ab[0] ** 2 + ab[1] ** 2
        t = ((x0[0] - a[0]) * ab[0] + (x0[1] - a[1]) * ab[1]) / L2
        t = min(max(t, 0.0), 1.0)
        dd = math.hypot(x0[0] - a[0] - t * ab[0], x0[1] - a[1] - t * ab[1])
        if t >= 1.0 - 1e-12:
            continue
        if best is None or dd < best[0] - 1e-15:
            best = (dd, k, t)
    _, k, t = best
    out = []
    a, b = v[k], v[(k + 1) % n]
    r = math.hypot(b[0] - x0[0], b[1] - x0[1])
    j = (k + 1) % n
    for _ in range(n):
        out.append((j, v[j], r))
        nxt = v[(j + 1) % n]
        r += math.hypot(nxt[0] - v[j][0], nxt[1] - v[j][1])
        j = (j + 1) % n
    return out


def _edge_angle(a, b):
    return math.atan2(-(b[0] - a[0]), b[1] - a[1])


def left_involute_pieces(vertices, x0, start_angle, turns=1):
    """(center, radius, lo, hi) arcs of the left involute from x0 whose first
    arc starts at start_angle."""
    v = [tuple(map(float, q)) for q in vertices]
    n = len(v)
    walk = _ccw_walk(v, x0)
    perim = sum(math.hypot(v[(i + 1) % n][0] - v[i][0], v[(i + 1) % n][1] - v[i][1]) for i in range(n))
    pieces = []
    ang = start_angle
    for m in range(turns):
        for j, c, r in walk:
            a_in = _edge_angle(v[j - 1], v[j])
            a_out = _edge_angle(v[j], v[(j + 1) % n])
            width = (a_out - a_in) % (2 * math.pi)
            if n == 2:
                width = math.pi
            pieces.append((c, r + m * perim, ang, ang + width))
            ang += width
    return pieces


def right_involute_pieces(vertices, x0, start_angle, turns=1):
    """Arcs of the right involute, as (center, radius, hi, lo) with angles
    decreasing from start_angle."""
    v = [tuple(map(float, q)) for q in vertices][::-1]
    n = len(v)
    walk = _ccw_walk(v, x0)  # counterclockwise walk of the reversed cycle is clockwise
    perim = sum(math.hypot(v[(i + 1) % n][0] - v[i][0], v[(i + 1) % n][1] - v[i][1]) for i in range(n))
    pieces = []
    ang = start_angle
    for m in range(turns):
        for j, c, r in walk:
            # clockwise traversal: turning angle at vertex j
            a_in = math.atan2(v[j][1] - v[j - 1][1], v[j][0] - v[j - 1][0])
            a_out = math.atan2(v[(j + 1) % n][1] - v[j][1], v[(j + 1) % n][0] - v[j][0])
            width = (a_in - a_out) % (2 * math.pi)
            if n == 2:
                width = math.pi
            pieces.append((c, r + m * perim, ang, ang - width))
            ang -= width
    return pieces


def direct_involute_point(pieces, theta, side="left"):
    """Evaluate an involute given by the piece lists above."""
    for c, r, a, b in pieces:
        lo, hi = (a, b) if side == "left" else (b, a)
        if lo - 1e-12 <= theta <= hi + 1e-12:
            t = (-math.sin(theta), math.cos(theta))
            s = -1.0 if side == "left" else 1.0
            return (c[0] + s * r * t[0], c[1] + s * r * t[1])
    raise ValueError("theta outside the sampled involute")


def _contact(pieces, theta):
    for c, r, a, b in pieces:
        if a - 1e-15 <= theta < b:
            return c, r
    c, r, a, b = pieces[-1]
    return c, r


def crossing_by_string_length(vertices, x0, start_angle, tol=1e-14):
    """Crossing of the left and right involutes from x0 found by bisection on
    the distance along the forward tangent ray; returns (point, theta_left,
    theta_at_contact)."""
    v = np.asarray(vertices, float)
    perim = float(sum(np.hypot(*(np.roll(v, -1, axis=0) - v).T)))
    pieces = left_involute_pieces(vertices, x0, start_angle, turns=2)
    pieces = [p for p in pieces if p[2] < start_angle + 2 * math.pi + 1e-12]
    scale = 1.0 + float(np.max(np.abs(v)))

    def forward(theta):
        c, r = _contact(pieces, theta)
        d = np.array([-math.sin(theta), math.cos(theta)])
        p = np.asarray(c, float)
        best = None
        for cc, rr, a, b in pieces:
            f = p - np.asarray(cc)
            B = 2 * (f @ d)
            C = f @ f - rr * rr
            disc = B * B - 4 * C
            if disc < 0:
                continue
            sq = math.sqrt(disc)
            for lam in ((-B - sq) / 2, (-B + sq) / 2):
                if lam <= 1e-12 * scale:
                    continue
                q = p + lam * d
                # parameter angle of q on this arc: q = cc - rr t_psi
                tx, ty = (cc[0] - q[0]) / rr, (cc[1] - q[1]) / rr
                psi = a - 1e-10 + (math.atan2(-tx, ty) - a + 1e-10) % (2 * math.pi)
                if psi <= b + 1e-10 and psi > theta + 1e-9:
                    if best is None or lam < best[0]:
                        best = (lam, psi, (float(q[0]), float(q[1])))
        if best is None:
            return math.inf, None
        return best[0] + r, best

    def g(theta):
        return forward(theta)[0] - perim

    lo = start_angle
    gl = g(lo)
    if gl >= -1e-12 * scale:
        _, hit = forward(lo)
        return hit[2], hit[1], lo
    hi = None
    grid = np.linspace(start_angle, start_angle + 1.5 * math.pi, 600)[1:]
    prev = lo
    for t in grid:
        if g(t) >= 0:
            hi = t
            lo = prev
            break
        prev = t
    if hi is None:
        raise ArithmeticError("string-length function never reaches the perimeter")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if g(mid) >= 0:
            hi = mid
        else:
            lo = mid
    _, hit = forward(hi)
    return hit[2], hit[1], hi
