"""Sweep the fourth point of the four-point family and report the verdicts."""
import math

from sdcfence import SelfDistancingSet, decide_extendible, necessary_fence_condition

s8 = math.sqrt(8)
print("quarter-disc set:", decide_extendible(SelfDistancingSet.from_points(
    [(0, 0), (0, 2), (1, s8), (-1, s8)])).verdict)
for rho in (2.9, 3.0, 3.1, 3.2, 3.3, 3.6):
    sigma = SelfDistancingSet.from_points([(0, 0), (0, 2), (2, 0), (rho, 2)])
    d = decide_extendible(sigma)
    extra = f", witness length {d.witness.length:.6f}" if d.witness is not None else ""
    print(f"rho={rho}: fence condition {bool(necessary_fence_condition(sigma))}, verdict {d.verdict}{extra}")
