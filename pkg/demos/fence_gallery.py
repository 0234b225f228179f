"""Write SVGs of the two involutes and the fence for a few bodies."""
import math
import sys
from pathlib import Path

from sdcfence import ConvexBody, Frame, JFence, build_involute, first_crossing
from sdcfence.render import Scene

BODIES = {
    "square": ([(0, 0), (1, 0), (1, 1), (0, 1)], (0, 0)),
    "triangle": ([(0, 0), (2, 0), (0.5, 1.5)], (1, 0)),
    "thin_rectangle": ([(0, 0), (3, 0), (3, 0.1), (0, 0.1)], (2.5, 0)),
}

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)
for name, (verts, x0) in BODIES.items():
    frame = Frame(ConvexBody(verts), x0)
    c = first_crossing(frame)
    scene = Scene().add_chain(JFence(frame).boundary(), "fence", closed=True).add_body(frame.body)
    scene.add_chain(build_involute(frame, "left", 2 * math.pi).chain, "left")
    scene.add_chain(build_involute(frame, "right", 2 * math.pi).chain, "right")
    scene.add_point(x0).add_point(c.point)
    (out / f"{name}.svg").write_text(scene.to_svg())
    print(f"{name}: crossing {c.point[0]:.6f}, {c.point[1]:.6f}")
