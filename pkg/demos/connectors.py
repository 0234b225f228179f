"""Shortest steepest descent connections from the corner of the unit square."""
import sys
from pathlib import Path

from sdcfence import ConvexBody, Frame, classify_region, minimal_connectors
from sdcfence.connect import connection_geometry
from sdcfence.render import Scene

frame = Frame(ConvexBody([(0, 0), (1, 0), (1, 1), (0, 1)]), (0, 0))
targets = [(-1, -2), (-3, 0.5), (2, -3), (3, 3), (-6, 6), (1.5, 1.5)]

scene = Scene().add_chain(connection_geometry(frame).fence.boundary(), "fence", closed=True)
scene.add_body(frame.body)
for x1 in targets:
    etas = minimal_connectors(frame, x1)
    print(f"{x1}: region {classify_region(frame, x1)}, lengths {[round(e.length, 6) for e in etas]}")
    for e in etas:
        scene.add_chain(e, "curve")
    scene.add_point(x1)
out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)
(out / "connectors.svg").write_text(scene.to_svg())
