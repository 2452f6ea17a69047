"""Independent reference values, written without calling the package's solvers."""
import numpy as np


def randers_associated(b, x):
    """Closed form of the associated Randers gauge, derived by Lagrange multipliers."""
    x = np.asarray(x, dtype=float)
    c = 1.0 - b * b
    return np.sqrt(c * x[..., 0] ** 2 + x[..., 1] ** 2) / c - b * x[..., 1] / c


def brute_force_associated(F, x, n=1_000_000):
    """``max [y, x]`` over ``n`` points of the unit circle of ``F``, chunked."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    theta = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    d = np.column_stack([np.cos(theta), np.sin(theta)])
    y = d / np.asarray(F(d))[:, None]
    return np.array([np.max(y[:, 0] * p[1] - y[:, 1] * p[0]) for p in x])


def randers_circle_km(b, tau):
    """Minkowski curvature of the Euclidean unit circle for ``F = |x| + b x1``."""
    return (1.0 - b * np.sin(tau)) ** -3


def randers_circle_kc(b, tau):
    return (1.0 - b * b * np.sin(tau) ** 2) ** -1.5


def ellipse_evolute(a, b, t):
    """Classical Euclidean evolute of ``(a cos t, b sin t)``."""
    e = (a * a - b * b)
    return np.column_stack([e / a * np.cos(t) ** 3, -e / b * np.sin(t) ** 3])
