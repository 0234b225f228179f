import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sdcfence import ConvexBody  # noqa: E402

RESULTS = {}


def random_polygon(rng, lo=3, hi=12, box=5.0, min_area=1e-2):
    while True:
        pts = rng.uniform(-box, box, size=(int(rng.integers(lo, hi + 1)), 2))
        try:
            body = ConvexBody(pts)
        except Exception:
            continue
        if body.n >= 3 and body.area() > min_area:
            return body


def regular_polygon(n, radius=1.0):
    return ConvexBody([(radius * math.cos(2 * math.pi * k / n), radius * math.sin(2 * math.pi * k / n))
                       for k in range(n)])


@pytest.fixture
def square():
    return ConvexBody([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def hexagon():
    return regular_polygon(6)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, detail = RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
