"""Minkowski, normal, circular and arc-length curvature; right and left normals.

All functions take a raw curve parameter ``tau`` (scalar or array).  The
formulas are ratios that do not depend on the parametrization, so no
arc-length reparametrization is needed to evaluate them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arclength import ArcLengthTable
from .associated import associated, det_form
from .curves import ParamCurve
from .errors import CapabilityError
from .gauges import Gauge

#: Relative size of the outer-derivative stencil, by gradient accuracy.
RATE_STEP_ANALYTIC = 1e-3
RATE_STEP_NUMERIC = 2e-3

#: ``|k_c|`` below this marks a sample where the evolute is undefined.
DEGENERATE_KC = 1e-12


def _out(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def _require_smooth(F: Gauge) -> None:
    if not F.smooth:
        raise CapabilityError(f"curvature needs a smooth gauge; {F.kind} gauge is not smooth")


def _derivatives(curve: ParamCurve, tau):
    tau = np.asarray(tau, dtype=float)
    return curve.d1(tau), curve.d2(tau)


def gradient_rate(G: Gauge, d1: np.ndarray, d2: np.ndarray) -> np.ndarray:
    """``d/dtau grad G(gamma'(tau))`` given ``gamma'`` and ``gamma''``.

    Uses the Hessian when the gauge provides one, otherwise a five-point
    central difference along ``gamma''``.
    """
    if G.has_hessian:
        return np.einsum("...ij,...j->...i", G.hessian(d1), d2)
    rel = RATE_STEP_ANALYTIC if G.has_analytic_gradient else RATE_STEP_NUMERIC
    n1 = np.linalg.norm(d1, axis=-1)
    n2 = np.linalg.norm(d2, axis=-1)
    eps = np.where(n2 > 0.0, rel * n1 / np.where(n2 > 0.0, n2, 1.0), 1.0)[..., None]
    g = lambda k: G.grad(d1 + k * eps * d2)  # noqa: E731
    return (g(-2) - 8 * g(-1) + 8 * g(1) - g(2)) / (12 * eps)


def _branch_formula(rate: np.ndarray, d1: np.ndarray) -> np.ndarray:
    """Pick the better-conditioned of the two equivalent quotients."""
    use_first = np.abs(d1[..., 0]) >= np.abs(d1[..., 1])
    den1 = np.where(use_first, d1[..., 0], 1.0)
    den2 = np.where(use_first, 1.0, d1[..., 1])
    return np.where(use_first, rate[..., 1] / den1, -rate[..., 0] / den2)


def minkowski_curvature(F: Gauge, curve: ParamCurve, tau):
    """``k_m = (g1' g2'' - g1'' g2') / F(g')^3``."""
    _require_smooth(F)
    d1, d2 = _derivatives(curve, tau)
    return _out(det_form(d1, d2) / np.asarray(F._eval(d1)) ** 3)


def right_normal(F: Gauge, curve: ParamCurve, tau):
    """``n = (-F_x2(g'), F_x1(g'))``, a point of the associated unit circle."""
    _require_smooth(F)
    g = F.grad(curve.d1(np.asarray(tau, dtype=float)))
    return np.stack([-g[..., 1], g[..., 0]], axis=-1)


def normal_curvature(F: Gauge, curve: ParamCurve, tau, branch: int | None = None):
    """``k_n = (F_x2(g'))' / g1'`` or ``-(F_x1(g'))' / g2'``.

    ``branch`` forces 1 or 2; by default the larger ``|g_i'|`` is used.
    """
    _require_smooth(F)
    d1, d2 = _derivatives(curve, tau)
    rate = gradient_rate(F, d1, d2)
    if branch == 1:
        return _out(rate[..., 1] / d1[..., 0])
    if branch == 2:
        return _out(-rate[..., 0] / d1[..., 1])
    return _out(_branch_formula(rate, d1))


def circular_curvature(F: Gauge, curve: ParamCurve, tau, F_a: Gauge | None = None, branch: int | None = None):
    """Same quotient as :func:`normal_curvature` with the partials of ``F_a``."""
    _require_smooth(F)
    if F_a is None:
        F_a = associated(F)
    return normal_curvature(F_a, curve, tau, branch=branch)


def arc_length_curvature(F: Gauge, curve: ParamCurve, tau):
    """``k_l = k_m * F(n)``."""
    n = right_normal(F, curve, tau)
    return _out(minkowski_curvature(F, curve, tau) * np.asarray(F._eval(n)))


def left_normal(F: Gauge, curve: ParamCurve, tau, F_a: Gauge | None = None):
    """``((F_a)_x2(g'), -(F_a)_x1(g'))``: the point of S with tangent direction g' and ``[g', l] < 0``."""
    _require_smooth(F)
    if F_a is None:
        F_a = associated(F)
    g = F_a.grad(curve.d1(np.asarray(tau, dtype=float)))
    return np.stack([g[..., 1], -g[..., 0]], axis=-1)


def unit_tangent(F: Gauge, curve: ParamCurve, tau):
    """``dgamma/ds = g' / F(g')``."""
    d1 = curve.d1(np.asarray(tau, dtype=float))
    return d1 / np.asarray(F._eval(d1))[..., None]


@dataclass
class CurvatureProfile:
    """Per-sample curvature data on an arc-length-uniform grid (column arrays)."""

    s: np.ndarray
    tau: np.ndarray
    point: np.ndarray
    tangent: np.ndarray
    right_normal: np.ndarray
    left_normal: np.ndarray
    k_m: np.ndarray
    k_n: np.ndarray
    k_c: np.ndarray
    k_l: np.ndarray

    COLUMNS = ("s", "tau", "x1", "x2", "t1", "t2", "n1", "n2", "l1", "l2", "k_m", "k_n", "k_c", "k_l")

    def __len__(self):
        return len(self.s)

    @property
    def degenerate(self) -> np.ndarray:
        """Samples where ``|k_c|`` is too small for an evolute point."""
        return np.abs(self.k_c) < DEGENERATE_KC

    def rows(self) -> np.ndarray:
        return np.column_stack([
            self.s, self.tau, self.point, self.tangent, self.right_normal, self.left_normal,
            self.k_m, self.k_n, self.k_c, self.k_l,
        ])


def sample_grid(table: ArcLengthTable, n_samples: int, closed: bool):
    s = np.linspace(0.0, table.length, n_samples, endpoint=not closed)
    return s, table.tau_at(s)


def profile(F: Gauge, curve: ParamCurve, n_samples: int, tol: float = 1e-10, F_a: Gauge | None = None) -> CurvatureProfile:
    """Evaluate every curvature type at ``n_samples`` arc-length-uniform points.

    Closed curves omit the duplicate end sample.
    """
    if n_samples < 2:
        raise ValueError("a profile needs at least two samples")
    _require_smooth(F)
    if F_a is None:
        F_a = associated(F)
    table = ArcLengthTable(F, curve, tol=tol)
    s, tau = sample_grid(table, n_samples, curve.closed)
    k_m = minkowski_curvature(F, curve, tau)
    n = right_normal(F, curve, tau)
    return CurvatureProfile(
        s=s,
        tau=tau,
        point=curve.value(tau),
        tangent=unit_tangent(F, curve, tau),
        right_normal=n,
        left_normal=left_normal(F, curve, tau, F_a=F_a),
        k_m=k_m,
        k_n=normal_curvature(F, curve, tau),
        k_c=circular_curvature(F, curve, tau, F_a=F_a),
        k_l=k_m * F._eval(n),
    )
