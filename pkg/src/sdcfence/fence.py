"""J-fences and G-fences: regions bounded by involute arcs.

A J-fence is the union of two convex pieces, each bounded by one involute
out of x0 up to the first crossing and the chord back to x0.  Membership
is decided by casting the ray from x0 through the query point.  G-fences
are bounded by a closed loop and use a winding-number test.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arcs import Arc, ArcChain, Segment, chain_distance, concat, point_piece_distance, winding_number
from .convex_core import as_point, tangent_points
from .errors import DomainError
from .involute import (build_involute, first_crossing, involute_through, reflect_body,
                       reflect_point)

MEMBERSHIP_TOL = 1e-9


def _arc_arrays(chain):
    arcs = [p for p in chain.pieces if isinstance(p, Arc)]
    if not arcs:
        return None
    c = np.array([a.center for a in arcs], dtype=float)
    r = np.array([a.radius for a in arcs])
    lo = np.array([min(a.t0, a.t1) for a in arcs])
    hi = np.array([max(a.t0, a.t1) for a in arcs])
    return c, r, lo, hi


def _max_ray_hit(origin, dirs, arrays, exclude):
    """Largest ray parameter at which each unit direction meets the arcs."""
    c, r, lo, hi = arrays
    f = origin[None, :] - c                         # (k, 2)
    B = dirs @ f.T                                 # (m, k), half the linear term
    C = np.einsum("ij,ij->i", f, f) - r * r        # (k,)
    disc = B * B - C[None, :]
    ok = disc >= 0
    sq = np.sqrt(np.where(ok, disc, 0.0))
    best = np.full(len(dirs), -np.inf)
    for lam in (-B - sq, -B + sq):
        q = origin[None, None, :] + lam[:, :, None] * dirs[:, None, :]
        ang = np.arctan2(q[..., 1] - c[None, :, 1], q[..., 0] - c[None, :, 0])
        tol = 1e-10 / np.maximum(r, 1e-12)
        tt = lo[None, :] - tol + np.mod(ang - lo[None, :] + tol, 2 * math.pi)
        inside = ok & (tt <= hi[None, :] + tol) & (lam > exclude)
        cand = np.where(inside, lam, -np.inf)
        best = np.maximum(best, cand.max(axis=1))
    return best


class JFence:
    """The fence J(K, x0) built from the first crossing of the involutes."""

    kind = "j"

    def __init__(self, frame):
        self.frame = frame
        self.body = frame.body
        crossing = first_crossing(frame)
        self.crossing = tuple(map(float, crossing.point))
        self.theta_l = float(crossing.theta_l)
        self.theta_r = float(crossing.theta_r)
        left = build_involute(frame, "left", self.theta_l - frame.theta_plus)
        right = build_involute(frame, "right", frame.theta_minus - self.theta_r)
        self.left_involute = left
        self.right_involute = right
        self.left_chain = left.chain
        self.right_chain = right.chain.reversed()
        self._x0 = np.array(frame.x0)
        self._arrays = (_arc_arrays(self.left_chain), _arc_arrays(self.right_chain))
        self.tol = MEMBERSHIP_TOL * self.body.scale

    @property
    def x0(self):
        return self.frame.x0

    def boundary(self):
        """Closed boundary chain x0 -> crossing -> x0."""
        return concat(self.left_chain, self.right_chain, tol=1e-7)

    def side_reach(self, points):
        """For each point, the exit distance from x0 along its ray in the
        left and right pieces (-inf when the ray misses)."""
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        rel = pts - self._x0
        dist = np.hypot(rel[:, 0], rel[:, 1])
        dirs = rel / np.where(dist > 0, dist, 1.0)[:, None]
        excl = 1e-9 * self.body.scale
        out = []
        for arrays in self._arrays:
            out.append(_max_ray_hit(self._x0, dirs, arrays, excl) if arrays is not None
                       else np.full(len(pts), -np.inf))
        return dist, out[0], out[1]

    def contains_many(self, points, mode="closure", tol=None):
        tol = self.tol if tol is None else tol
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        dist, reach_l, reach_r = self.side_reach(pts)
        sd = self.body.signed_distances(pts)
        if mode == "closure":
            inside = (dist <= tol) | (reach_l >= dist - tol) | (reach_r >= dist - tol)
            return inside & (sd >= -tol)
        if mode != "interior":
            raise DomainError(f"unknown mode {mode!r}")
        y = np.array(self.crossing)
        near_ends = (dist <= tol) | (np.hypot(*(pts - y).T) <= tol)
        strict = (reach_l > dist + tol) | (reach_r > dist + tol)
        # chord points are interior to the union of the two pieces
        chord = _on_segment(pts, self._x0, y, tol) & (reach_l >= dist - tol) & (reach_r >= dist - tol)
        res = (strict | chord) & ~near_ends & (sd > tol)
        if np.any(res):
            idx = np.nonzero(res)[0]
            for i in idx:
                p = tuple(pts[i])
                if (chain_distance(p, self.left_chain) <= tol
                        or chain_distance(p, self.right_chain) <= tol):
                    res[i] = False
        return res

    def contains(self, p, mode="closure", tol=None):
        return bool(self.contains_many([as_point(p)], mode, tol)[0])

    def bounding_box(self):
        pts = np.vstack([self.left_chain.sample(step=0.05), self.right_chain.sample(step=0.05),
                         self.body.vertices])
        return pts.min(axis=0), pts.max(axis=0)

    def boundary_samples(self, n=1000):
        return self.boundary().sample_uniform(n)

    def to_json(self):
        return {"region": "J", "x0": list(self.x0), "crossing": list(self.crossing),
                "boundary": [self.left_chain.to_json(), self.right_chain.to_json()]}


def _on_segment(pts, a, b, tol):
    ab = b - a
    L2 = float(ab @ ab)
    if L2 == 0:
        return np.hypot(*(pts - a).T) <= tol
    t = ((pts - a) @ ab) / L2
    proj = a[None, :] + np.clip(t, 0, 1)[:, None] * ab[None, :]
    return (np.hypot(*(pts - proj).T) <= tol) & (t > 0) & (t < 1)


def j_fence(frame):
    return JFence(frame)


# -- G-fences ---------------------------------------------------------------------

def _boundary_path_cw(body, a, b):
    """Straight pieces of the body boundary going clockwise from a to b."""
    L = body.perimeter
    pa, pb = body.position(a), body.position(b)
    span = (pa - pb) % L
    if span > L - body.eps:
        span = 0.0
    pts = [tuple(map(float, a))]
    # vertices strictly between a and b going clockwise
    for k in range(body.n):
        idx = None
        pos = body.cum_len[k]
        u = (pa - pos) % L
        if body.eps < u < span - body.eps:
            idx = k
        if idx is not None:
            pts.append((u, tuple(map(float, body.vertices[k]))))
    inner = sorted(pts[1:])
    path = [pts[0]] + [p for _, p in inner] + [tuple(map(float, b))]
    return [Segment(p, q) for p, q in zip(path, path[1:])
            if math.hypot(q[0] - p[0], q[1] - p[1]) > 0]


@dataclass
class GPart:
    """One half of a G-fence: a closed loop; the region is its inside
    with the body removed."""
    loop: tuple
    xi: tuple
    truncated_at: tuple = None

    def chain(self):
        return ArcChain(self.loop, tol=1e-7)


def _left_part(body, z):
    z_l, _ = tangent_points(body, z)
    xi, inv = involute_through(body, z, "left")
    lo, hi = inv.theta_range
    d = math.hypot(z[0] - z_l[0], z[1] - z_l[1])
    if d > body.perimeter + body.eps:
        # the involute has already crossed the tangent segment one turn back
        w_theta = hi - 2 * math.pi
        w = inv.point(w_theta)
        arc = inv.truncated(w_theta, hi).chain
        pieces = list(arc.pieces) + [Segment(tuple(map(float, z)), w)]
        return GPart(tuple(pieces), tuple(map(float, xi)), tuple(map(float, w)))
    pieces = list(inv.chain.pieces)
    pieces.append(Segment(tuple(map(float, z)), z_l))
    pieces.extend(_boundary_path_cw(body, z_l, xi))
    return GPart(tuple(pieces), tuple(map(float, xi)))


def _reflect_part(part):
    loop = tuple(p.transformed(reflect_point, reflect=True) for p in part.loop)
    # reflection reverses orientation; keep orientation irrelevant (winding != 0)
    return GPart(loop, reflect_point(part.xi),
                 None if part.truncated_at is None else reflect_point(part.truncated_at))


class GFence:
    """The fence G(K, z) for an external point z."""

    kind = "g"

    def __init__(self, body, z):
        z = tuple(map(float, as_point(z)))
        if body.contains(z):
            raise DomainError("z must lie outside the body")
        self.body = body
        self.z = z
        self.left = _left_part(body, z)
        self.right = _reflect_part(_left_part(reflect_body(body), reflect_point(z)))
        self.tol = MEMBERSHIP_TOL * body.scale
        self.z_l, self.z_r = tangent_points(body, z)

    @property
    def xi_l(self):
        return self.left.xi

    @property
    def xi_r(self):
        return self.right.xi

    def _part_status(self, part, p, tol):
        """(inside the open part, inside its closure)."""
        sd = self.body.signed_distance(p)
        if sd < -tol:
            return False, False
        on = min(point_piece_distance(p, q) for q in part.loop) <= tol
        if on:
            return False, True
        wound = winding_number(p, part.loop) != 0
        return wound and sd > tol, wound

    def _in_closure(self, p, tol):
        return any(self._part_status(part, p, tol)[1] for part in (self.left, self.right))

    def contains(self, p, mode="interior", tol=None):
        tol = self.tol if tol is None else tol
        p = tuple(map(float, as_point(p)))
        if mode == "closure":
            return self._in_closure(p, tol)
        if mode != "interior":
            raise DomainError(f"unknown mode {mode!r}")
        for part in (self.left, self.right):
            if self._part_status(part, p, tol)[0]:
                return True
        # boundary points of one part can be interior to the closed union
        probe = 1e-6 * self.body.scale
        if self.body.signed_distance(p) <= tol:
            return False
        for ang in np.linspace(0, 2 * math.pi, 12, endpoint=False):
            q = (p[0] + probe * math.cos(ang), p[1] + probe * math.sin(ang))
            if not self._in_closure(q, tol):
                return False
        return True

    def contains_many(self, points, mode="interior", tol=None):
        return np.array([self.contains(p, mode, tol) for p in np.asarray(points).reshape(-1, 2)])

    def boundary_loops(self):
        return [self.left.chain(), self.right.chain()]

    def bounding_box(self):
        pts = np.vstack([c.sample(step=0.05) for c in self.boundary_loops()])
        return pts.min(axis=0), pts.max(axis=0)

    def boundary_samples(self, n=1000):
        return np.vstack([c.sample_uniform(n // 2) for c in self.boundary_loops()])

    def to_json(self):
        return {"region": "G", "z": list(self.z), "xi_l": list(self.xi_l), "xi_r": list(self.xi_r),
                "boundary": [c.to_json() for c in self.boundary_loops()]}


def g_fence(body, z):
    return GFence(body, z)


def contains(fence, p, mode="interior"):
    return fence.contains(p, mode)


# -- inclusion checks ---------------------------------------------------------------

@dataclass
class InclusionReport:
    ok: bool
    checked: int
    violations: list

    def __bool__(self):
        return self.ok


def fence_inclusion_check(outer, inner, samples=2000, seed=0, slack=1e-7,
                          inner_mode="interior", outer_mode="closure", skip=None):
    """Sampled check that the inner region lies in the outer one.

    Random points of the inner bounding box that the inner fence contains,
    plus points along the inner boundary, must be contained by the outer
    fence (after nudging by ``slack``).  ``skip`` filters out points that
    the tested statement excludes.
    """
    rng = np.random.default_rng(seed)
    lo, hi = inner.bounding_box()
    cand = rng.uniform(lo, hi, size=(samples, 2))
    keep = inner.contains_many(cand, inner_mode)
    pts = list(cand[keep])
    pts.extend(inner.boundary_samples(200))
    violations = []
    checked = 0
    for p in pts:
        p = tuple(p)
        if skip is not None and skip(p):
            continue
        checked += 1
        if outer.contains(p, outer_mode, tol=slack):
            continue
        violations.append(p)
    return InclusionReport(not violations, checked, violations)


def hausdorff_estimate(a_pts, b_pts):
    """Symmetric Hausdorff distance between two finite point sets."""
    from scipy.spatial import cKDTree
    a = np.asarray(a_pts, float)
    b = np.asarray(b_pts, float)
    da, _ = cKDTree(b).query(a)
    db, _ = cKDTree(a).query(b)
    return float(max(da.max(), db.max()))
