"""Gauges (convex distance functions) on the plane.

A gauge is positive definite, positively homogeneous and subadditive, but
not necessarily symmetric.  All evaluators are vectorised over arrays of
shape ``(..., 2)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError, GaugeDomainError

#: Relative step of the second-order central-difference gradient.
FD_STEP = float(np.cbrt(np.finfo(float).eps))
#: Relative step of the fourth-order stencil.
FD_STEP_4 = float(np.finfo(float).eps ** 0.2)


def as_points(x) -> np.ndarray:
    """Convert ``x`` to a float array of shape (..., 2), rejecting NaN/Inf."""
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1:] != (2,):
        raise GaugeDomainError(f"expected planar vectors with trailing dimension 2, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise GaugeDomainError("non-finite coordinates")
    return arr


def _scalar_or_array(value):
    value = np.asarray(value)
    return float(value) if value.ndim == 0 else value


def central_gradient(func, x: np.ndarray, order: int = 2, step: float | None = None) -> np.ndarray:
    """Central-difference gradient of a positively homogeneous function.

    ``x`` is first scaled to unit Euclidean length (the gradient is
    invariant under positive scaling).  The per-component step is
    ``step * max(1, |x_i|)`` with ``step`` defaulting to ``cbrt(eps)`` for
    ``order=2`` and ``eps**(1/5)`` for ``order=4``.
    """
    if step is None:
        step = FD_STEP if order == 2 else FD_STEP_4
    x = x / np.linalg.norm(x, axis=-1, keepdims=True)
    h = step * np.maximum(1.0, np.abs(x))
    out = np.empty_like(x)
    for i in range(2):
        e = np.zeros_like(x)
        e[..., i] = h[..., i]
        if order == 2:
            out[..., i] = (func(x + e) - func(x - e)) / (2.0 * h[..., i])
        elif order == 4:
            out[..., i] = (8.0 * (func(x + e) - func(x - e)) - (func(x + 2 * e) - func(x - 2 * e))) / (12.0 * h[..., i])
        else:
            raise ValueError("order must be 2 or 4")
    return out


class Gauge:
    """Base class for convex distance functions.

    Subclasses implement ``_eval`` and optionally ``_grad`` / ``_hessian``.
    Without an analytic gradient, :meth:`grad` falls back to central
    differences.
    """

    kind = "custom"
    smooth = True
    strictly_convex = True

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        x = as_points(x)
        return _scalar_or_array(self._eval(x))

    def _eval(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    # -- derivatives -------------------------------------------------------
    @property
    def has_analytic_gradient(self) -> bool:
        return type(self)._grad is not Gauge._grad

    @property
    def has_hessian(self) -> bool:
        return type(self)._hessian is not Gauge._hessian

    def _grad(self, x: np.ndarray) -> np.ndarray:
        return central_gradient(self._eval, x)

    def _hessian(self, x: np.ndarray) -> np.ndarray:
        raise CapabilityError(f"{self.kind} gauge has no analytic second partials")

    def _check_differentiable(self, x: np.ndarray) -> None:
        if not self.smooth:
            raise CapabilityError(f"{self.kind} gauge is not smooth; derivatives are unavailable")
        if np.any(np.all(x == 0.0, axis=-1)):
            raise GaugeDomainError("gradient of a gauge is undefined at the origin")

    def grad(self, x, numeric: bool = False) -> np.ndarray:
        """Return ``(F_x1, F_x2)`` at ``x``; ``numeric=True`` forces central differences."""
        x = as_points(x)
        self._check_differentiable(x)
        if numeric:
            return central_gradient(self._eval, x)
        return self._grad(x)

    def hessian(self, x) -> np.ndarray:
        x = as_points(x)
        self._check_differentiable(x)
        return self._hessian(x)

    # -- unit circle -------------------------------------------------------
    def unit_circle_point(self, theta):
        """Point of the unit circle S in direction ``theta`` (radians from the x1-axis)."""
        theta = np.asarray(theta, dtype=float)
        d = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        return d / np.asarray(self._eval(d))[..., None]

    def params(self) -> dict:
        return {"kind": self.kind}

    def __repr__(self) -> str:
        extra = ", ".join(f"{k}={v!r}" for k, v in self.params().items() if k != "kind")
        return f"{type(self).__name__}({extra})"


class RandersGauge(Gauge):
    """``F(x) = |x| + b*x1`` with ``|b| < 1``."""

    kind = "randers"

    def __init__(self, b: float):
        b = float(b)
        if not abs(b) < 1.0:
            raise GaugeDomainError(f"Randers parameter must satisfy |b| < 1, got {b}")
        self.b = b

    def _eval(self, x):
        return np.hypot(x[..., 0], x[..., 1]) + self.b * x[..., 0]

    def _grad(self, x):
        g = x / np.hypot(x[..., 0], x[..., 1])[..., None]
        g[..., 0] += self.b
        return g

    def _hessian(self, x):
        r = np.hypot(x[..., 0], x[..., 1])
        u = x / r[..., None]
        eye = np.broadcast_to(np.eye(2), u.shape + (2,))
        return (eye - u[..., :, None] * u[..., None, :]) / r[..., None, None]

    def params(self):
        return {"kind": self.kind, "b": self.b}


class EuclideanGauge(RandersGauge):
    kind = "euclidean"

    def __init__(self):
        super().__init__(0.0)

    def params(self):
        return {"kind": self.kind}


def _polygon_edges(vertices: np.ndarray):
    return vertices, np.roll(vertices, -1, axis=0)


def check_polygon(vertices) -> np.ndarray:
    """Validate a convex counter-clockwise polygon with the origin strictly inside."""
    v = as_points(vertices)
    if v.ndim != 2 or len(v) < 3:
        raise GaugeDomainError("a polygon needs at least three vertices")
    p, q = _polygon_edges(v)
    cross = p[:, 0] * q[:, 1] - p[:, 1] * q[:, 0]
    if np.any(cross <= 0.0):
        raise GaugeDomainError("origin must be an interior point of a counter-clockwise polygon")
    e = q - p
    e_next = np.roll(e, -1, axis=0)
    turn = e[:, 0] * e_next[:, 1] - e[:, 1] * e_next[:, 0]
    if np.any(turn <= 0.0):
        raise GaugeDomainError("polygon vertices must be in convex position, counter-clockwise")
    return v


class PolygonGauge(Gauge):
    """Gauge whose unit disk is a convex polygon containing the origin.

    ``F(x) = max_i <a_i, x>`` where ``a_i`` is the edge functional equal to 1
    on the edge from ``v_i`` to ``v_{i+1}``.
    """

    kind = "polygon"
    smooth = False
    strictly_convex = False

    def __init__(self, vertices):
        self.vertices = check_polygon(vertices)
        p, q = _polygon_edges(self.vertices)
        cross = p[:, 0] * q[:, 1] - p[:, 1] * q[:, 0]
        self.edge_normals = np.stack([q[:, 1] - p[:, 1], p[:, 0] - q[:, 0]], axis=-1) / cross[:, None]

    def _eval(self, x):
        return np.max(x @ self.edge_normals.T, axis=-1)

    def params(self):
        return {"kind": self.kind, "vertices": self.vertices.tolist()}


class CustomGauge(Gauge):
    """User-supplied gauge.

    ``func`` maps an array of shape (..., 2) to (...).  ``grad`` and
    ``hessian`` are optional analytic derivatives with the same convention.
    """

    kind = "custom"

    def __init__(self, func, grad=None, hessian=None, smooth=True, strictly_convex=True, name="custom"):
        self.func = func
        self.grad_func = grad
        self.hessian_func = hessian
        self.smooth = bool(smooth)
        self.strictly_convex = bool(strictly_convex)
        self.name = name

    @property
    def has_analytic_gradient(self):
        return self.grad_func is not None

    @property
    def has_hessian(self):
        return self.hessian_func is not None

    def _eval(self, x):
        return np.asarray(self.func(x), dtype=float)

    def _grad(self, x):
        if self.grad_func is None:
            return central_gradient(self._eval, x)
        return np.asarray(self.grad_func(x), dtype=float)

    def _hessian(self, x):
        if self.hessian_func is None:
            return super()._hessian(x)
        return np.asarray(self.hessian_func(x), dtype=float)

    def params(self):
        return {"kind": self.kind, "name": self.name}


# -- validation ------------------------------------------------------------


@dataclass
class ValidationReport:
    n_samples: int
    positivity_failures: int = 0
    homogeneity_violation: float = 0.0
    subadditivity_violation: float = 0.0
    smooth_inconsistent: bool = False
    corner_angles: list = field(default_factory=list)
    strictly_convex_inconsistent: bool = False
    flat_pieces: list = field(default_factory=list)
    tol: float = 1e-12

    @property
    def ok(self) -> bool:
        return (
            self.positivity_failures == 0
            and self.homogeneity_violation <= self.tol
            and self.subadditivity_violation <= self.tol
            and not self.smooth_inconsistent
            and not self.strictly_convex_inconsistent
        )

    def as_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "positivity_failures": self.positivity_failures,
            "homogeneity_violation": self.homogeneity_violation,
            "subadditivity_violation": self.subadditivity_violation,
            "smooth_inconsistent": self.smooth_inconsistent,
            "corner_angles": self.corner_angles,
            "strictly_convex_inconsistent": self.strictly_convex_inconsistent,
            "flat_pieces": self.flat_pieces,
            "ok": self.ok,
        }


def _normal_angle(F: Gauge, theta):
    g = central_gradient(F._eval, F.unit_circle_point(theta))
    return np.arctan2(g[..., 1], g[..., 0])


def _wrapped(delta):
    return np.abs((delta + np.pi) % (2 * np.pi) - np.pi)


def find_corners(F: Gauge, n_grid: int = 2048, n_candidates: int = 8, n_halvings: int = 8) -> list:
    """Angles where the outer normal of S jumps.

    The largest normal-angle increments on a grid are bisected repeatedly;
    on a smooth circle the increment halves each time, at a corner it
    stays put.
    """
    theta = np.linspace(0.0, 2 * np.pi, n_grid + 1)
    jumps = _wrapped(np.diff(_normal_angle(F, theta)))
    corners = []
    for i in np.argsort(jumps)[::-1][:n_candidates]:
        lo, hi = theta[i], theta[i + 1]
        start = jumps[i]
        if start < 1e-9:
            break
        for _ in range(n_halvings):
            mid = 0.5 * (lo + hi)
            a_lo, a_mid, a_hi = _normal_angle(F, np.array([lo, mid, hi]))
            if _wrapped(a_mid - a_lo) >= _wrapped(a_hi - a_mid):
                hi = mid
            else:
                lo = mid
        final = _wrapped(np.diff(_normal_angle(F, np.array([lo, hi])))[0])
        if final > 0.25 * start and final > 1e-6:
            corners.append(float(0.5 * (lo + hi)))
    merged = []
    for c in sorted(corners):
        if not merged or c - merged[-1] > 2 * np.pi / n_grid:
            merged.append(c)
    if len(merged) > 1 and merged[0] + 2 * np.pi - merged[-1] <= 2 * np.pi / n_grid:
        merged.pop()
    return merged


def find_flat_pieces(F: Gauge, n_grid: int = 2048, rel_tol: float = 1e-9) -> list:
    """Angular intervals ``(start, end)`` over which sampled points of S are collinear."""
    theta = np.linspace(0.0, 2 * np.pi, n_grid, endpoint=False)
    pts = F.unit_circle_point(theta)
    a = np.roll(pts, 1, axis=0)
    b = np.roll(pts, -1, axis=0)
    u, w = pts - a, b - pts
    turn = u[:, 0] * w[:, 1] - u[:, 1] * w[:, 0]
    scale = np.linalg.norm(u, axis=1) * np.linalg.norm(w, axis=1)
    flat = np.abs(turn) <= rel_tol * scale
    pieces = []
    step = theta[1] - theta[0]
    last = None
    for i in np.flatnonzero(flat):
        hi = float(theta[i] + step)
        if last is not None and i == last + 1:
            pieces[-1][1] = hi
        else:
            pieces.append([float(theta[i] - step), hi])
        last = i
    return [tuple(p) for p in pieces]


def validate(F: Gauge, n_samples: int = 1000, seed: int = 0, tol: float = 1e-12) -> ValidationReport:
    """Sample-test the gauge axioms and the declared smoothness/convexity flags."""
    if n_samples < 1:
        raise GaugeDomainError("n_samples must be at least 1")
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n_samples, 2)) * rng.uniform(0.1, 10.0, size=(n_samples, 1))
    y = rng.normal(size=(n_samples, 2)) * rng.uniform(0.1, 10.0, size=(n_samples, 1))
    lam = rng.uniform(0.0, 10.0, size=n_samples)
    lam[lam == 0.0] = 1.0

    fx, fy = F._eval(x), F._eval(y)
    report = ValidationReport(n_samples=n_samples, tol=tol)
    report.positivity_failures = int(np.sum(~(fx > 0.0))) + int(np.asarray(F._eval(np.zeros(2))) != 0.0)
    hom = np.abs(F._eval(lam[:, None] * x) - lam * fx) / (lam * np.abs(fx) + np.finfo(float).tiny)
    report.homogeneity_violation = float(np.max(hom))
    sub = (F._eval(x + y) - fx - fy) / (np.abs(fx) + np.abs(fy))
    report.subadditivity_violation = float(max(np.max(sub), 0.0))

    if F.smooth:
        report.corner_angles = find_corners(F)
        report.smooth_inconsistent = bool(report.corner_angles)
    if F.strictly_convex:
        report.flat_pieces = find_flat_pieces(F)
        report.strictly_convex_inconsistent = bool(report.flat_pieces)
    return report
