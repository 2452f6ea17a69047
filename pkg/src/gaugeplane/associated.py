"""Associated gauge, Birkhoff orthogonality and polygon polarity.

The associated gauge is ``F_a(x) = sup{[y, x] : F(y) = 1}`` where ``[., .]``
is the 2x2 determinant.  Three evaluation routes exist: a closed form for
Randers gauges, an exact vertex maximum for polygons, and a numeric
supremum (grid scan plus golden-section refinement) for everything else.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import GaugeDomainError
from .gauges import Gauge, PolygonGauge, RandersGauge, as_points, central_gradient, check_polygon

CLOSED_FORM_RANDERS = "closed_form_randers"
POLYGON_EXACT = "polygon_exact"
NUMERIC_SUP = "numeric_sup"
METHODS = (CLOSED_FORM_RANDERS, POLYGON_EXACT, NUMERIC_SUP)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def det_form(x, y):
    """``[x, y] = x1*y2 - x2*y1``, broadcasting over leading axes."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = x[..., 0] * y[..., 1] - x[..., 1] * y[..., 0]
    return float(out) if np.ndim(out) == 0 else out


def polygon_polar(vertices) -> np.ndarray:
    """Vertices of ``B_a = {x : [v_i, x] <= 1}`` for a polygonal unit disk.

    The edge from ``p = v_i`` to ``q = v_{i+1}`` yields the vertex
    ``(q - p) / [p, q]``; output is counter-clockwise, one vertex per edge.
    """
    p = check_polygon(vertices)
    q = np.roll(p, -1, axis=0)
    return (q - p) / det_form(p, q)[:, None]


def golden_section_max(func, lo, hi, tol):
    """Vectorised golden-section maximisation of a unimodal ``func`` on ``[lo, hi]``.

    ``lo`` and ``hi`` are arrays of bracket ends; ``func`` is evaluated on
    arrays of the same shape.  Returns the arg-max estimates.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    width = float(np.max(hi - lo)) if lo.size else 0.0
    n_iter = max(0, math.ceil(math.log(max(width, tol) / tol) / -math.log(_INV_PHI)))
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = func(x1), func(x2)
    for _ in range(n_iter):
        right = f2 > f1
        # keep [x1, hi] where f2 wins, [lo, x2] otherwise
        lo = np.where(right, x1, lo)
        hi = np.where(right, hi, x2)
        new_x1 = np.where(right, x2, hi - _INV_PHI * (hi - lo))
        new_x2 = np.where(right, lo + _INV_PHI * (hi - lo), x1)
        fp = func(np.where(right, new_x2, new_x1))
        f1, f2 = np.where(right, f2, fp), np.where(right, fp, f1)
        x1, x2 = new_x1, new_x2
    return np.where(f2 > f1, x2, x1)


def _unit_vertices(gauge: Gauge):
    """Vertices of the unit circle for gauges with a polygonal unit disk, else None."""
    if isinstance(gauge, PolygonGauge):
        return gauge.vertices
    if isinstance(gauge, AssociatedGauge) and gauge.method == POLYGON_EXACT:
        return gauge.vertices
    return None


def default_method(base: Gauge) -> str:
    if isinstance(base, RandersGauge):
        return CLOSED_FORM_RANDERS
    if _unit_vertices(base) is not None:
        return POLYGON_EXACT
    return NUMERIC_SUP


class AssociatedGauge(Gauge):
    """The gauge ``F_a`` associated to ``base``.

    Gradients are always fourth-order central differences over
    :meth:`eval`, whatever the evaluation route.
    """

    kind = "associated"

    def __init__(self, base: Gauge, method: str | None = None, grid_size: int = 720, refine_tol: float = 1e-12):
        if method is None:
            method = default_method(base)
        if method not in METHODS:
            raise ValueError(f"unknown associated-gauge method {method!r}")
        if method == CLOSED_FORM_RANDERS and not isinstance(base, RandersGauge):
            raise ValueError("closed_form_randers needs a Randers (or Euclidean) base gauge")
        if method == POLYGON_EXACT and _unit_vertices(base) is None:
            raise ValueError("polygon_exact needs a polygonal base gauge")
        self.base = base
        self.method = method
        self.grid_size = int(grid_size)
        self.refine_tol = float(refine_tol)
        # polarity swaps smoothness and strict convexity
        self.smooth = base.strictly_convex
        self.strictly_convex = base.smooth

        if method == POLYGON_EXACT:
            self.support_vertices = _unit_vertices(base)
            self.vertices = polygon_polar(self.support_vertices)
        elif method == NUMERIC_SUP:
            self._theta = np.linspace(0.0, 2 * np.pi, self.grid_size, endpoint=False)
            self._grid = base.unit_circle_point(self._theta)

    def _eval(self, x):
        if self.method == CLOSED_FORM_RANDERS:
            b = self.base.b
            c = 1.0 - b * b
            return np.sqrt(c * x[..., 0] ** 2 + x[..., 1] ** 2) / c - b * x[..., 1] / c
        if self.method == POLYGON_EXACT:
            v = self.support_vertices
            vals = v[:, 0] * x[..., 1, None] - v[:, 1] * x[..., 0, None]
            return np.max(vals, axis=-1)
        return self._numeric_sup(x)

    has_analytic_gradient = False

    def _grad(self, x):
        return central_gradient(self._eval, x, order=4)

    def _numeric_sup(self, x):
        x = np.asarray(x, dtype=float)
        shape = x.shape[:-1]
        flat = x.reshape(-1, 2)
        g = self._grid
        scan = g[:, 0] * flat[:, 1, None] - g[:, 1] * flat[:, 0, None]
        k = np.argmax(scan, axis=1)
        step = 2 * np.pi / self.grid_size
        lo = self._theta[k] - step
        hi = self._theta[k] + step

        def objective(theta):
            y = self.base.unit_circle_point(theta)
            return y[:, 0] * flat[:, 1] - y[:, 1] * flat[:, 0]

        if len(flat):
            best = objective(golden_section_max(objective, lo, hi, self.refine_tol))
            out = np.maximum(best, scan[np.arange(len(flat)), k])
        else:
            out = np.zeros(0)
        out = np.where(np.all(flat == 0.0, axis=1), 0.0, out)
        return out.reshape(shape)

    def params(self):
        return {"kind": self.kind, "method": self.method, "base": self.base.params()}


def associated(F: Gauge, method: str | None = None, **kwargs) -> AssociatedGauge:
    """Build ``F_a``; the route defaults to the most exact one available for ``F``."""
    return AssociatedGauge(F, method=method, **kwargs)


def associated_eval(A: AssociatedGauge, x):
    return A.eval(x)


def double_associated_residual(F: Gauge, x, method: str | None = None):
    """``|F_{a,a}(x) - F(-x)|``.

    ``method`` applies to both levels when given; by default the first level
    takes the most exact route and the second level is chosen from it.
    """
    x = as_points(x)
    if np.any(np.all(x == 0.0, axis=-1)):
        raise GaugeDomainError("double_associated_residual needs x != 0")
    A = associated(F, method)
    second = None if method in (None, CLOSED_FORM_RANDERS) else method
    AA = associated(A, second)
    out = np.abs(AA._eval(x) - F._eval(-x))
    return float(out) if out.ndim == 0 else out


def birkhoff_orthogonal(F: Gauge, x, y, tol: float = 1e-8, F_a: Gauge | None = None) -> bool:
    """Oriented Birkhoff orthogonality ``x -|_B y``: ``[x, y] = F(x) F_a(y)``."""
    x = as_points(x)
    y = as_points(y)
    if not np.any(x) or not np.any(y):
        raise GaugeDomainError("Birkhoff orthogonality is defined for nonzero vectors")
    if F_a is None:
        F_a = associated(F)
    rhs = F.eval(x) * F_a.eval(y)
    return bool(abs(det_form(x, y) - rhs) <= tol * rhs)
