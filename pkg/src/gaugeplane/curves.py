"""Parametric planar curves with first and second derivatives.

Every callable is vectorised: a scalar parameter gives a (2,) vector, an
array of shape (n,) gives (n, 2).
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy.interpolate import make_interp_spline

_EPS = np.finfo(float).eps


def _stack(x, y):
    return np.stack(np.broadcast_arrays(x, y), axis=-1)


@dataclass(frozen=True)
class ParamCurve:
    """Oriented curve ``tau -> gamma(tau)`` on ``[t0, t1]``."""

    t0: float
    t1: float
    value: Callable
    d1: Callable
    d2: Callable
    derivative_mode: str = "analytic"
    closed: bool = False
    name: str = "curve"

    def __call__(self, tau):
        return self.value(np.asarray(tau, dtype=float))

    @property
    def domain(self) -> tuple[float, float]:
        return (self.t0, self.t1)

    def first(self, tau):
        return self.d1(np.asarray(tau, dtype=float))

    def second(self, tau):
        return self.d2(np.asarray(tau, dtype=float))


def circle(r: float = 1.0, center=(0.0, 0.0), t0: float = 0.0, t1: float = 2 * np.pi) -> ParamCurve:
    cx, cy = map(float, center)
    return ParamCurve(
        t0, t1,
        value=lambda t: _stack(cx + r * np.cos(t), cy + r * np.sin(t)),
        d1=lambda t: _stack(-r * np.sin(t), r * np.cos(t)),
        d2=lambda t: _stack(-r * np.cos(t), -r * np.sin(t)),
        closed=bool(np.isclose(t1 - t0, 2 * np.pi)),
        name=f"circle(r={r:g})",
    )


def ellipse(a: float, b: float, t0: float = 0.0, t1: float = 2 * np.pi) -> ParamCurve:
    return ParamCurve(
        t0, t1,
        value=lambda t: _stack(a * np.cos(t), b * np.sin(t)),
        d1=lambda t: _stack(-a * np.sin(t), b * np.cos(t)),
        d2=lambda t: _stack(-a * np.cos(t), -b * np.sin(t)),
        closed=bool(np.isclose(t1 - t0, 2 * np.pi)),
        name=f"ellipse(a={a:g}, b={b:g})",
    )


def lissajous(a: float, b: float, omega: float, t0: float = 0.0, t1: float = 2 * np.pi) -> ParamCurve:
    """``(a cos t, b sin(omega t))``; regular for integer ``omega``."""
    return ParamCurve(
        t0, t1,
        value=lambda t: _stack(a * np.cos(t), b * np.sin(omega * t)),
        d1=lambda t: _stack(-a * np.sin(t), b * omega * np.cos(omega * t)),
        d2=lambda t: _stack(-a * np.cos(t), -b * omega**2 * np.sin(omega * t)),
        closed=bool(np.isclose(t1 - t0, 2 * np.pi)) and float(omega).is_integer(),
        name=f"lissajous(a={a:g}, b={b:g}, omega={omega:g})",
    )


def segment(start, direction, t0: float = 0.0, t1: float = 1.0) -> ParamCurve:
    """Straight line ``start + tau * direction``."""
    p = np.asarray(start, dtype=float)
    w = np.asarray(direction, dtype=float)

    def value(t):
        t = np.asarray(t, dtype=float)
        return p + t[..., None] * w

    return ParamCurve(
        t0, t1,
        value=value,
        d1=lambda t: np.broadcast_to(w, np.shape(t) + (2,)).copy(),
        d2=lambda t: np.zeros(np.shape(t) + (2,)),
        name="segment",
    )


def _trig_component(coeffs):
    """``a0 + sum_k (a_k cos k t + b_k sin k t)`` from ``[a0, [a1, b1], [a2, b2], ...]``."""
    a0 = float(coeffs[0])
    harm = np.asarray(coeffs[1:], dtype=float).reshape(-1, 2)
    k = np.arange(1, len(harm) + 1, dtype=float)

    def derivative(order):
        def f(t):
            t = np.asarray(t, dtype=float)
            kt = np.multiply.outer(t, k)
            c, s = np.cos(kt), np.sin(kt)
            if order == 0:
                return a0 + c @ harm[:, 0] + s @ harm[:, 1]
            if order == 1:
                return (-s * k) @ harm[:, 0] + (c * k) @ harm[:, 1]
            return (-c * k**2) @ harm[:, 0] + (-s * k**2) @ harm[:, 1]
        return f

    return derivative(0), derivative(1), derivative(2)


def trig_polynomial(x_coeffs, y_coeffs, t0: float = 0.0, t1: float = 2 * np.pi) -> ParamCurve:
    """Curve with trigonometric-polynomial components and analytic derivatives."""
    x0, x1, x2 = _trig_component(x_coeffs)
    y0, y1, y2 = _trig_component(y_coeffs)
    return ParamCurve(
        t0, t1,
        value=lambda t: _stack(x0(t), y0(t)),
        d1=lambda t: _stack(x1(t), y1(t)),
        d2=lambda t: _stack(x2(t), y2(t)),
        closed=bool(np.isclose(t1 - t0, 2 * np.pi)),
        name="trig_polynomial",
    )


def from_function(value: Callable, t0: float, t1: float, d1: Callable | None = None, name: str = "user") -> ParamCurve:
    """Wrap a user curve; missing derivatives come from central differences."""

    def fd1(t):
        t = np.asarray(t, dtype=float)
        h = np.cbrt(_EPS) * np.maximum(1.0, np.abs(t))
        return (value(t + h) - value(t - h)) / (2 * h)[..., None]

    first = d1 if d1 is not None else fd1

    def fd2(t):
        t = np.asarray(t, dtype=float)
        if d1 is not None:
            h = np.cbrt(_EPS) * np.maximum(1.0, np.abs(t))
            return (first(t + h) - first(t - h)) / (2 * h)[..., None]
        h = _EPS**0.25 * np.maximum(1.0, np.abs(t))
        return (value(t + h) - 2 * value(t) + value(t - h)) / (h * h)[..., None]

    return ParamCurve(t0, t1, value=value, d1=first, d2=fd2, derivative_mode="central_difference", name=name)


def reparametrize(curve: ParamCurve, h: Callable, dh: Callable, d2h: Callable, t0: float, t1: float) -> ParamCurve:
    """``gamma(h(tau))`` for an increasing map ``h`` of ``[t0, t1]`` onto the curve's domain."""

    def d1(t):
        return curve.d1(h(t)) * np.asarray(dh(t))[..., None]

    def d2(t):
        u, du, ddu = h(t), np.asarray(dh(t))[..., None], np.asarray(d2h(t))[..., None]
        return curve.d2(u) * du * du + curve.d1(u) * ddu

    return ParamCurve(t0, t1, value=lambda t: curve.value(h(t)), d1=d1, d2=d2,
                      derivative_mode=curve.derivative_mode, closed=curve.closed,
                      name=f"{curve.name}∘h")


def reverse_curve(curve: ParamCurve) -> ParamCurve:
    """``gamma^-(tau) = gamma(-tau)`` on ``[-t1, -t0]``."""
    return replace(
        curve,
        t0=-curve.t1,
        t1=-curve.t0,
        value=lambda t: curve.value(-np.asarray(t, dtype=float)),
        d1=lambda t: -curve.d1(-np.asarray(t, dtype=float)),
        d2=lambda t: curve.d2(-np.asarray(t, dtype=float)),
        name=f"reverse({curve.name})",
    )


def spline_curve(params, points, degree: int = 5, name: str = "spline") -> ParamCurve:
    """Interpolating B-spline through ``points`` at increasing ``params``."""
    params = np.asarray(params, dtype=float)
    points = np.asarray(points, dtype=float)
    spl = make_interp_spline(params, points, k=degree)
    d1, d2 = spl.derivative(1), spl.derivative(2)
    return ParamCurve(
        float(params[0]), float(params[-1]),
        value=lambda t: spl(np.asarray(t, dtype=float)),
        d1=lambda t: d1(np.asarray(t, dtype=float)),
        d2=lambda t: d2(np.asarray(t, dtype=float)),
        derivative_mode="spline",
        name=name,
    )
