"""Gauge arc length ``s(tau) = int F(gamma'(u)) du`` and its inverse."""
from __future__ import annotations

import numpy as np
from scipy.interpolate import PchipInterpolator

from .curves import ParamCurve
from .errors import GaugeDomainError, NumericalError
from .gauges import Gauge

_LO_NODES, _LO_WEIGHTS = np.polynomial.legendre.leggauss(10)
_HI_NODES, _HI_WEIGHTS = np.polynomial.legendre.leggauss(20)


def _gauss(f, a, b, nodes, weights):
    """Gauss-Legendre rule on each interval ``[a_i, b_i]`` at once."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    t = mid[:, None] + half[:, None] * nodes
    return half * (f(t) @ weights)


class ArcLengthTable:
    """Cumulative arc length of ``curve`` measured with ``F``.

    Breakpoints are refined by bisection until the 10- and 20-point
    Gauss-Legendre rules agree on every piece; the pieces' error budget sums
    to ``tol``.  Inverse queries start from monotone cubic interpolation and
    are polished with Newton steps using ``ds/dtau = F(gamma')``.
    """

    def __init__(self, F: Gauge, curve: ParamCurve, tol: float = 1e-10, n_initial: int = 64, max_pieces: int = 100_000):
        self.F = F
        self.curve = curve
        self.quadrature_tol = float(tol)
        self._check_regular(np.linspace(curve.t0, curve.t1, 4 * n_initial + 1))

        edges = np.linspace(curve.t0, curve.t1, n_initial + 1)
        a, b = edges[:-1], edges[1:]
        done_a, done_b, done_val = [], [], []
        span = curve.t1 - curve.t0
        while len(a):
            lo = _gauss(self.speed, a, b, _LO_NODES, _LO_WEIGHTS)
            hi = _gauss(self.speed, a, b, _HI_NODES, _HI_WEIGHTS)
            ok = np.abs(hi - lo) <= tol * (b - a) / span
            done_a.append(a[ok]), done_b.append(b[ok]), done_val.append(hi[ok])
            mid = 0.5 * (a + b)
            a, b = np.concatenate([a[~ok], mid[~ok]]), np.concatenate([mid[~ok], b[~ok]])
            if sum(map(len, done_a)) + len(a) > max_pieces:
                raise NumericalError("arc-length quadrature did not reach its tolerance")
        a, b, val = map(np.concatenate, (done_a, done_b, done_val))
        order = np.argsort(a)
        self.breakpoints = np.append(a[order], b[order][-1])
        self.s_values = np.concatenate([[0.0], np.cumsum(val[order])])
        if np.any(np.diff(self.s_values) <= 0.0):
            raise GaugeDomainError("arc length is not strictly increasing; curve is not regular")
        self._guess = PchipInterpolator(self.s_values, self.breakpoints)

    def _check_regular(self, tau):
        speed = self.speed(tau)
        if not np.all(speed > 0.0):
            bad = tau[~(speed > 0.0)]
            raise GaugeDomainError(f"curve is not regular: F(gamma') vanishes near tau={bad[0]:.6g}")

    def speed(self, tau):
        """``ds/dtau = F(gamma'(tau))``."""
        return np.asarray(self.F._eval(self.curve.d1(np.asarray(tau, dtype=float))))

    @property
    def length(self) -> float:
        return float(self.s_values[-1])

    def s_at(self, tau):
        tau = np.asarray(tau, dtype=float)
        flat = np.clip(tau.ravel(), self.breakpoints[0], self.breakpoints[-1])
        k = np.clip(np.searchsorted(self.breakpoints, flat, side="right") - 1, 0, len(self.breakpoints) - 2)
        s = self.s_values[k] + _gauss(self.speed, self.breakpoints[k], flat, _HI_NODES, _HI_WEIGHTS)
        s = s.reshape(tau.shape)
        return float(s) if s.ndim == 0 else s

    def tau_at(self, s, max_newton: int = 8):
        s = np.asarray(s, dtype=float)
        target = np.clip(s, 0.0, self.length)
        tau = np.asarray(self._guess(target), dtype=float)
        lo, hi = self.breakpoints[0], self.breakpoints[-1]
        scale = max(abs(lo), abs(hi), 1.0)
        for _ in range(max_newton):
            step = (np.asarray(self.s_at(tau)) - target) / self.speed(tau)
            tau = np.clip(tau - step, lo, hi)
            if np.all(np.abs(step) <= 4 * np.finfo(float).eps * scale):
                break
        return float(tau) if tau.ndim == 0 else tau


def arc_length(F: Gauge, curve: ParamCurve, tol: float = 1e-10) -> ArcLengthTable:
    return ArcLengthTable(F, curve, tol=tol)
