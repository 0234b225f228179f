"""SVG output.  Arcs are written as native path arc commands."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arcs import Arc, ArcChain
from .errors import InvalidInput
from .io import fmt

STYLES = {
    "body": 'fill="#d9d9d9" stroke="#333333" stroke-width="{w}"',
    "left": 'fill="none" stroke="#1f77b4" stroke-width="{w}"',
    "right": 'fill="none" stroke="#d62728" stroke-width="{w}"',
    "fence": 'fill="#ffbf00" fill-opacity="0.25" stroke="#b07800" stroke-width="{w}"',
    "gfence": 'fill="#2ca02c" fill-opacity="0.15" stroke="#2ca02c" stroke-width="{w}"',
    "curve": 'fill="none" stroke="#000000" stroke-width="{w}"',
    "point": 'fill="#000000"',
}


@dataclass
class Drawable:
    kind: str
    style: str
    data: object
    closed: bool = False


@dataclass
class Scene:
    items: list = field(default_factory=list)
    width: int = 600

    def add_body(self, body):
        self.items.append(Drawable("polygon", "body", np.asarray(body.vertices)))
        return self

    def add_chain(self, chain, style="curve", closed=False):
        self.items.append(Drawable("chain", style, chain, closed))
        return self

    def add_point(self, p, style="point"):
        self.items.append(Drawable("point", style, tuple(map(float, p))))
        return self

    def bounding_box(self):
        pts = []
        for it in self.items:
            if it.kind == "polygon":
                pts.extend(it.data.tolist())
            elif it.kind == "point":
                pts.append(it.data)
            else:
                pts.extend(it.data.sample(per_arc=64).tolist())
        if not pts:
            raise InvalidInput("empty scene")
        arr = np.asarray(pts, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise InvalidInput("scene has non-finite coordinates")
        return arr.min(axis=0), arr.max(axis=0)

    def to_svg(self):
        lo, hi = self.bounding_box()
        span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-9))
        pad = 0.05 * span
        x0, y0 = lo[0] - pad, -(hi[1] + pad)
        w, h = hi[0] - lo[0] + 2 * pad, hi[1] - lo[1] + 2 * pad
        stroke = fmt(span / 300.0)
        height = int(round(self.width * h / w))
        out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{height}" '
               f'viewBox="{fmt(x0)} {fmt(y0)} {fmt(w)} {fmt(h)}">']
        for it in self.items:
            style = STYLES[it.style].format(w=stroke)
            if it.kind == "polygon":
                pts = " ".join(_y(q) for q in it.data)
                out.append(f'<polygon points="{pts}" {style}/>')
            elif it.kind == "point":
                r = fmt(span / 120.0)
                out.append(f'<circle cx="{_c(it.data[0])}" cy="{_c(-it.data[1])}" r="{r}" {style}/>')
            else:
                out.append(f'<path d="{path_data(it.data, it.closed)}" {style}/>')
        out.append("</svg>")
        return "\n".join(out) + "\n"


def _c(v):
    # rounding noise around zero would otherwise print as 1e-16
    return fmt(0.0 if abs(v) < 1e-12 else v)


def _y(p):
    return f"{_c(p[0])},{_c(-p[1])}"


def path_data(chain: ArcChain, closed=False):
    """SVG path for the chain in a y-up frame (y is negated)."""
    parts = [f"M{_y(chain.start)}"]
    for piece in chain.pieces:
        if isinstance(piece, Arc):
            m = max(1, int(math.ceil(abs(piece.sweep) / (0.9 * math.pi))))
            r = fmt(piece.radius)
            # counterclockwise in y-up is clockwise on screen: sweep flag 1
            flag = 1 if piece.sweep > 0 else 0
            for k in range(1, m + 1):
                q = piece.at_fraction(k / m)
                parts.append(f"A{r},{r} 0 0 {flag} {_y(q)}")
        else:
            parts.append(f"L{_y(piece.b)}")
    if closed:
        parts.append("Z")
    return " ".join(parts)
