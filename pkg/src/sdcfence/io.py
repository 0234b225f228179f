"""JSON readers and writers for bodies, chains and self-distancing sets."""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .arcs import ArcChain, chain_from_json
from .convex_core import ConvexBody
from .errors import InvalidInput

DIGITS = 12


def fmt(x):
    """A number with 12 significant digits, as printed everywhere."""
    x = float(x)
    if x == 0:
        return "0"
    return format(x, f".{DIGITS}g")


def canonical_number(x):
    return float(fmt(x))


def canonicalize(obj):
    """Round every float to 12 significant digits; tuples become lists."""
    if isinstance(obj, dict):
        return {str(k): canonicalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [canonicalize(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise InvalidInput(f"non-finite number {x}")
        return canonical_number(x)
    return obj


def dumps(obj):
    return json.dumps(canonicalize(obj), sort_keys=True, indent=2) + "\n"


def read_json(source):
    """Parse a path, or inline JSON when the text starts with a bracket."""
    if isinstance(source, (dict, list)):
        return source
    text = str(source).strip()
    try:
        if text[:1] in "[{":
            return json.loads(text)
        return json.loads(Path(text).read_text())
    except (OSError, ValueError) as exc:
        raise InvalidInput(f"cannot read JSON from {source!r}: {exc}") from exc


def load_body(source):
    data = read_json(source)
    pts = data.get("vertices") if isinstance(data, dict) else data
    if pts is None:
        raise InvalidInput("body JSON needs a 'vertices' list")
    try:
        arr = np.asarray(pts, dtype=float).reshape(-1, 2)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad vertices: {exc}") from exc
    return ConvexBody(arr)


def body_to_json(body):
    return {"vertices": body.vertices.tolist()}


def load_chain(source):
    data = read_json(source)
    try:
        return chain_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"bad chain JSON: {exc}") from exc


def chain_to_json(chain: ArcChain):
    if chain.is_point:
        return {"point": list(chain.start)}
    return chain.to_json()


def load_sds(source):
    from .extend import SelfDistancingSet, SinglePoint

    data = read_json(source)
    comps = data.get("components") if isinstance(data, dict) else None
    if not isinstance(comps, list):
        raise InvalidInput("SDS JSON needs a 'components' list")
    out = []
    for c in comps:
        if "point" in c:
            out.append(SinglePoint(tuple(float(v) for v in c["point"])))
        elif "polyline" in c:
            out.append(c["polyline"])
        else:
            raise InvalidInput(f"unknown component {c!r}")
    return SelfDistancingSet(out)


def parse_point(text):
    """'x,y' -> (x, y)."""
    try:
        parts = [float(v) for v in str(text).replace(" ", "").split(",")]
    except ValueError as exc:
        raise InvalidInput(f"bad point {text!r}") from exc
    if len(parts) != 2 or not all(math.isfinite(v) for v in parts):
        raise InvalidInput(f"bad point {text!r}")
    return tuple(parts)
