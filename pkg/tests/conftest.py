import numpy as np
import pytest
from scipy.spatial import ConvexHull

from gaugeplane import ArcLengthTable

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(n, name, passed, detail)``."""

    def record(number, name, passed, detail=""):
        _ACCEPTANCE.append((number, name, bool(passed), detail))
        print(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {name} {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {number:>2}. {name}  {detail}")


def s_derivative(f, table: ArcLengthTable, s, h):
    """Five-point central difference of ``f(tau(s))`` in arc length.

    ``h`` may be an array broadcasting against ``s``.
    """
    s = np.asarray(s, dtype=float)
    h = np.broadcast_to(np.asarray(h, dtype=float), s.shape)
    g = lambda ss: f(np.atleast_1d(table.tau_at(ss)))  # noqa: E731
    return (g(s - 2 * h) - 8 * g(s - h) + 8 * g(s + h) - g(s + 2 * h)) / (12 * h)[:, None]


def random_convex_polygon(rng, n_min=3, n_max=12):
    """Convex CCW polygon with the origin strictly inside."""
    while True:
        n = rng.integers(n_min, n_max + 1)
        theta = np.sort(rng.uniform(0, 2 * np.pi, n))
        gaps = np.diff(np.append(theta, theta[0] + 2 * np.pi))
        if gaps.max() >= np.pi * 0.95:
            continue
        r = rng.uniform(0.3, 3.0, n)
        pts = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        hull = ConvexHull(pts)
        v = pts[hull.vertices]  # counter-clockwise in 2-D
        if len(v) >= 3:
            return v
