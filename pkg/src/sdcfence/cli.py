"""Command line front end.

Exit codes: 0 success (including a negative validation result), 2 invalid
input, 3 numerical failure, 4 resource exhausted.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import oracle
from .connect import classify_region, connection_geometry, minimal_connectors
from .convex_core import Frame
from .curve import curve_length, is_distancing_from, is_self_distancing
from .errors import DegenerateError, DomainError, InvalidInput, JoinError, NumericalError
from .extend import EXHAUSTED, decide_extendible
from .fence import GFence, JFence
from .involute import build_involute
from .io import chain_to_json, dumps, load_body, load_chain, load_sds, parse_point
from .render import Scene

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_EXHAUSTED = 0, 2, 3, 4


class VerifyFailed(NumericalError):
    pass


def _frame(args):
    body = load_body(args.body)
    x0 = parse_point(args.x0)
    theta0 = None if getattr(args, "theta0", None) is None else float(args.theta0)
    return Frame(body, x0, 0.0, theta0)


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _note(msg):
    print(msg, file=sys.stderr)


# -- verification against the oracles ------------------------------------------------------

def _verify_involute(frame, inv, rng):
    verts = frame.body.vertices.tolist()
    lo, hi = inv.theta_range
    turns = int(math.ceil((hi - lo) / (2 * math.pi))) + 1
    if inv.side == "left":
        pieces = oracle.left_involute_pieces(verts, frame.x0, frame.theta_plus, turns)
    else:
        pieces = oracle.right_involute_pieces(verts, frame.x0, frame.theta_minus, turns)
    worst = 0.0
    for t in rng.uniform(lo, hi, 64):
        p = inv.point(float(t))
        q = oracle.direct_involute_point(pieces, float(t), inv.side)
        worst = max(worst, math.hypot(p[0] - q[0], p[1] - q[1]))
    tol = 1e-9 * frame.body.scale
    if worst > tol:
        raise VerifyFailed(f"involute differs from the oracle by {worst:.3g}")
    _note(f"verify: involute matches the direct evaluation (max error {worst:.3g})")


def _verify_region(fence, loops, rng, n=400):
    """Compare open-region membership with a crossing-number vote; both
    fences leave out the body itself."""
    from .arcs import point_piece_distance
    lo, hi = fence.bounding_box()
    pts = rng.uniform(lo, hi, size=(n, 2))
    scale = 1.0 + float(np.abs(np.vstack([lo, hi])).max())
    body = fence.body
    bad = 0
    for p in map(tuple, pts):
        near = min(point_piece_distance(p, q) for c in loops for q in c.pieces)
        if near <= 1e-7 * scale or abs(body.signed_distance(p)) <= 1e-7 * scale:
            continue
        seed = int(rng.integers(1 << 30))
        want = any(oracle.sampled_membership(list(c.pieces), p, seed=seed) for c in loops)
        want = want and not body.contains(p)
        bad += want != fence.contains(p, "interior")
    if bad:
        raise VerifyFailed(f"{bad} of {n} membership answers disagree with the oracle")
    _note(f"verify: membership agrees with the crossing-number oracle on {n} points")


def _verify_chain(chain, body, verdict_sd, verdict_from):
    s = oracle.sampled_self_distancing(chain, 200)
    if s != bool(verdict_sd):
        raise VerifyFailed("sampled self-distancing test disagrees")
    if body is not None:
        f = oracle.sampled_distancing_from(body.vertices.tolist(), chain, 200)
        if f != bool(verdict_from):
            raise VerifyFailed("sampled distancing-from test disagrees")
    _note("verify: chain validators agree with the sampled oracle")


# -- subcommands ---------------------------------------------------------------------------------

def cmd_involute(args, rng):
    frame = _frame(args)
    side = {"l": "left", "r": "right"}.get(args.side, args.side)
    inv = build_involute(frame, side, float(args.extent))
    out = inv.to_json()
    out["length"] = curve_length(inv.chain)
    print(dumps(out), end="")
    if args.svg:
        scene = Scene().add_body(frame.body).add_chain(inv.chain, side).add_point(frame.x0)
        _write(args.svg, scene.to_svg())
    if args.verify:
        _verify_involute(frame, inv, rng)
    return EXIT_OK


def cmd_fence(args, rng):
    body = load_body(args.body)
    if args.kind == "j":
        if args.x0 is None:
            raise InvalidInput("fence --kind j needs --x0")
        frame = _frame(args)
        fence = JFence(frame)
        loops = [fence.boundary()]
        style = "fence"
    else:
        if args.z is None:
            raise InvalidInput("fence --kind g needs --z")
        fence = GFence(body, parse_point(args.z))
        loops = fence.boundary_loops()
        style = "gfence"
    print(dumps(fence.to_json()), end="")
    if args.svg:
        scene = Scene()
        for c in loops:
            scene.add_chain(c, style, closed=True)
        scene.add_body(body)
        _write(args.svg, scene.to_svg())
    if args.verify:
        _verify_region(fence, loops, rng)
    return EXIT_OK


def cmd_connect(args, rng):
    frame = _frame(args)
    x1 = parse_point(args.x1)
    tag = classify_region(frame, x1)
    etas = minimal_connectors(frame, x1)
    out = {"region": tag, "x0": list(frame.x0), "x1": list(x1),
           "connectors": [{"length": curve_length(e), "chain": chain_to_json(e)} for e in etas]}
    print(dumps(out), end="")
    if args.svg:
        geo = connection_geometry(frame)
        scene = Scene().add_chain(geo.fence.boundary(), "fence", closed=True).add_body(frame.body)
        for e in etas:
            scene.add_chain(e, "curve")
        scene.add_point(frame.x0).add_point(x1)
        _write(args.svg, scene.to_svg())
    if args.verify:
        for e in etas:
            _verify_chain(e, frame.body, is_self_distancing(e), is_distancing_from(e, frame.body))
    return EXIT_OK


def cmd_extend(args, rng):
    sigma = load_sds(args.sds)
    dec = decide_extendible(sigma, cap=args.cap, fast_path=not args.no_fast_path)
    print(dec.verdict)
    out = {"verdict": dec.verdict, "family_sizes": dec.family_sizes,
           "witness": None if dec.witness is None else chain_to_json(dec.witness)}
    if dec.witness is not None:
        out["length"] = curve_length(dec.witness)
    print(dumps(out), end="")
    if args.verify and dec.witness is not None and not dec.witness.is_point:
        _verify_chain(dec.witness, None, is_self_distancing(dec.witness), True)
    return EXIT_EXHAUSTED if dec.verdict == EXHAUSTED else EXIT_OK


def cmd_validate(args, rng):
    chain = load_chain(args.curve)
    body = load_body(args.against_body) if args.against_body else None
    sd = is_self_distancing(chain)
    out = {"self_distancing": sd.ok, "witness": None if sd.ok else [list(p) for p in sd.witness]}
    df = None
    if body is not None:
        df = is_distancing_from(chain, body)
        out["distancing_from_body"] = df.ok
        if not df.ok:
            out["body_witness"] = [list(p) for p in df.witness]
    print(dumps(out), end="")
    if args.verify:
        _verify_chain(chain, body, sd, df)
    return EXIT_OK


def cmd_render(args, rng):
    frame = _frame(args)
    layers = [s.strip() for s in args.layers.split(",") if s.strip()]
    scene = Scene()
    known = {"body", "fence", "gfence", "left", "right"}
    unknown = set(layers) - known
    if unknown:
        raise InvalidInput(f"unknown layers {sorted(unknown)}")
    if "fence" in layers:
        scene.add_chain(JFence(frame).boundary(), "fence", closed=True)
    if "gfence" in layers:
        if args.z is None:
            raise InvalidInput("the gfence layer needs --z")
        for c in GFence(frame.body, parse_point(args.z)).boundary_loops():
            scene.add_chain(c, "gfence", closed=True)
    if "body" in layers:
        scene.add_body(frame.body)
    for side in ("left", "right"):
        if side in layers:
            scene.add_chain(build_involute(frame, side, float(args.extent)).chain, side)
    scene.add_point(frame.x0)
    svg = scene.to_svg()
    if args.svg:
        _write(args.svg, svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="sdcfence", description="Involutes, fences and steepest "
                                "descent curve tools for convex polygons.")
    p.add_argument("--verify", action="store_true", help="cross-check results with brute-force oracles")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = p.add_subparsers(dest="command", required=True)

    def frame_args(q, x0_required=True):
        q.add_argument("--body", required=True, help="body JSON file or inline JSON")
        q.add_argument("--x0", required=x0_required, help="boundary point 'x,y'")
        q.add_argument("--theta0", type=float, default=None, help="lifted normal angle at x0")

    q = sub.add_parser("involute", help="left or right involute from x0")
    frame_args(q)
    q.add_argument("--side", choices=["l", "r", "left", "right"], default="l")
    q.add_argument("--extent", type=float, default=2 * math.pi, help="angle range covered")
    q.add_argument("--svg")
    q.set_defaults(func=cmd_involute)

    q = sub.add_parser("fence", help="J-fence at x0 or G-fence of a point z")
    frame_args(q, x0_required=False)
    q.add_argument("--kind", choices=["j", "g"], default="j")
    q.add_argument("--z", help="outside point 'x,y' for the G-fence")
    q.add_argument("--svg")
    q.set_defaults(func=cmd_fence)

    q = sub.add_parser("connect", help="region of x1 and the minimal connectors")
    frame_args(q)
    q.add_argument("--x1", required=True)
    q.add_argument("--svg")
    q.set_defaults(func=cmd_connect)

    q = sub.add_parser("extend", help="decide whether a self-distancing set extends")
    q.add_argument("--sds", required=True)
    q.add_argument("--cap", type=int, default=4096)
    q.add_argument("--no-fast-path", action="store_true")
    q.set_defaults(func=cmd_extend)

    q = sub.add_parser("validate", help="run the exact curve validators")
    q.add_argument("--curve", required=True)
    q.add_argument("--against-body")
    q.set_defaults(func=cmd_validate)

    q = sub.add_parser("render", help="compose an SVG scene")
    frame_args(q)
    q.add_argument("--layers", default="fence,body,left,right")
    q.add_argument("--extent", type=float, default=2 * math.pi)
    q.add_argument("--z")
    q.add_argument("--svg")
    q.set_defaults(func=cmd_render)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    rng = np.random.default_rng(args.seed)
    try:
        return args.func(args, rng)
    except (InvalidInput, DomainError, DegenerateError, JoinError) as exc:
        _note(f"error: {exc}")
        return EXIT_INPUT
    except NumericalError as exc:
        _note(f"numerical failure: {exc}")
        return EXIT_NUMERIC


def main(argv=None):
    sys.exit(run(argv))

