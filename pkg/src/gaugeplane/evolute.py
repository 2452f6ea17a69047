"""Evolutes, involutes, reverse curves and the evolute/involute round trips."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arclength import ArcLengthTable
from .associated import associated
from .curvature import arc_length_curvature, circular_curvature, left_normal, unit_tangent
from .curves import ParamCurve, reverse_curve, spline_curve
from .errors import EvoluteUndefinedError
from .gauges import Gauge

K_MIN = 1e-8
LIFT_SAMPLES = 512
#: Samples closer than this to ``s = c`` are left out of round-trip statistics.
STATIONARY_GAP = 1e-3

#: Round-trip cases: the curve as given, or its reverse.
DIRECT, REVERSED = "direct", "reversed"


@dataclass(frozen=True)
class SampledCurve:
    """Ordered samples of a curve.

    ``s`` is the sampling parameter, the arc length of the curve the samples
    were built from (for an evolute or involute, that of the source curve).
    """

    s: np.ndarray
    points: np.ndarray
    closed: bool = False
    source: str = ""

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        pts = np.asarray(self.points, dtype=float)
        if s.ndim != 1 or pts.shape != (len(s), 2):
            raise ValueError("SampledCurve needs s of shape (n,) and points of shape (n, 2)")
        if np.any(np.diff(s) <= 0.0):
            raise ValueError("SampledCurve parameters must be strictly increasing")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.s)


def reverse(curve):
    """Orientation reversal ``alpha^-(t) = alpha(-t)`` for either curve kind."""
    if isinstance(curve, SampledCurve):
        return SampledCurve(-curve.s[::-1], curve.points[::-1].copy(), curve.closed, f"reverse({curve.source})")
    return reverse_curve(curve)


def lift(curve: SampledCurve, degree: int = 5) -> ParamCurve:
    """Smooth interpolating curve through the samples, parametrized by ``s``."""
    return spline_curve(curve.s, curve.points, degree=degree, name=f"lift({curve.source})")


def _resolve_F_a(F: Gauge, F_a):
    return associated(F) if F_a is None else F_a


def evolute_points(F: Gauge, curve: ParamCurve, tau, F_a: Gauge | None = None, k_min: float = K_MIN):
    """``E = gamma - (1/k_c) l`` at raw parameters ``tau``.

    Raises :class:`EvoluteUndefinedError` listing offending ``tau`` values.
    """
    F_a = _resolve_F_a(F, F_a)
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    k_c = np.atleast_1d(circular_curvature(F, curve, tau, F_a=F_a))
    bad = np.abs(k_c) < k_min
    if np.any(bad):
        raise EvoluteUndefinedError(
            f"circular curvature below {k_min:g} at {int(bad.sum())} sample(s)", offending_s=tau[bad]
        )
    return curve.value(tau) - left_normal(F, curve, tau, F_a=F_a) / k_c[:, None]


def involute_points(F: Gauge, curve: ParamCurve, c: float, tau, table: ArcLengthTable | None = None):
    """``I = gamma + (c - s) dgamma/ds`` at raw parameters ``tau``."""
    if table is None:
        table = ArcLengthTable(F, curve)
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    s = np.atleast_1d(table.s_at(tau))
    return curve.value(tau) + (c - s)[:, None] * unit_tangent(F, curve, tau)


def _arc_samples(F, curve, samples, tol):
    table = ArcLengthTable(F, curve, tol=tol)
    s = np.linspace(0.0, table.length, samples)
    return table, s, np.atleast_1d(table.tau_at(s))


def evolute(F: Gauge, curve: ParamCurve, samples: int = 256, F_a: Gauge | None = None,
            k_min: float = K_MIN, tol: float = 1e-10) -> SampledCurve:
    """Evolute at ``samples`` arc-length-uniform points of ``curve``."""
    table, s, tau = _arc_samples(F, curve, samples, tol)
    try:
        pts = evolute_points(F, curve, tau, F_a=F_a, k_min=k_min)
    except EvoluteUndefinedError as err:
        bad = np.isin(tau, err.offending_s)
        raise EvoluteUndefinedError(str(err), offending_s=s[bad]) from None
    return SampledCurve(s, pts, source=f"evolute({curve.name})")


def involute(F: Gauge, curve: ParamCurve, c: float, samples: int = 256, tol: float = 1e-10) -> SampledCurve:
    """Involute with constant ``c`` at ``samples`` arc-length-uniform points."""
    table, s, tau = _arc_samples(F, curve, samples, tol)
    pts = curve.value(tau) + (c - s)[:, None] * unit_tangent(F, curve, tau)
    return SampledCurve(s, pts, source=f"involute({curve.name}, c={c:g})")


@dataclass
class RoundTripReport:
    kind: str
    applicable: bool
    case: str | None = None
    max_deviation: float = float("nan")
    mean_deviation: float = float("nan")
    n_samples: int = 0
    n_used: int = 0
    c: float | None = None
    message: str = ""
    params: np.ndarray = field(default=None, repr=False)
    recovered: np.ndarray = field(default=None, repr=False)
    reference: np.ndarray = field(default=None, repr=False)

    def as_dict(self) -> dict:
        """JSON-ready summary; undefined deviations become ``None``."""
        finite = lambda x: float(x) if np.isfinite(x) else None  # noqa: E731
        return {
            "kind": self.kind,
            "applicable": self.applicable,
            "case": self.case,
            "max_deviation": finite(self.max_deviation),
            "mean_deviation": finite(self.mean_deviation),
            "n_samples": self.n_samples,
            "n_used": self.n_used,
            "c": self.c,
            "message": self.message,
        }


def _sign_case(values, threshold=0.0):
    if np.all(values > threshold):
        return DIRECT
    if np.all(values < -threshold):
        return REVERSED
    return None


def _deviation(report, params, recovered, reference, keep):
    dev = np.linalg.norm(recovered - reference, axis=1)
    report.params, report.recovered, report.reference = params, recovered, reference
    report.n_used = int(keep.sum())
    report.max_deviation = float(np.max(dev[keep])) if keep.any() else float("nan")
    report.mean_deviation = float(np.mean(dev[keep])) if keep.any() else float("nan")
    return report


def check_evolute_of_involute(F: Gauge, curve: ParamCurve, c: float, samples: int = LIFT_SAMPLES,
                              F_a: Gauge | None = None, tol: float = 1e-10) -> RoundTripReport:
    """Evolute of the involute, or the reverse evolute of the reverse involute.

    The direct case needs ``(c - s) k_l > 0`` on the arc, the reversed case
    ``(c - s) k_l < 0``.  Deviation is measured against ``gamma`` at matched
    arc-length parameters, excluding samples with ``|s - c| < STATIONARY_GAP``.
    """
    F_a = _resolve_F_a(F, F_a)
    table, s, tau = _arc_samples(F, curve, samples, tol)
    keep = np.abs(s - c) >= STATIONARY_GAP
    sign = (c - s) * np.atleast_1d(arc_length_curvature(F, curve, tau))
    case = _sign_case(sign[keep])
    report = RoundTripReport("evolute_of_involute", applicable=case is not None, case=case,
                             n_samples=samples, c=float(c))
    if case is None:
        report.message = "(c - s) k_l changes sign on the arc; round trip not applicable"
        return report

    inv = SampledCurve(s, curve.value(tau) + (c - s)[:, None] * unit_tangent(F, curve, tau))
    if case == DIRECT:
        lifted, params, reference = lift(inv), s, curve.value(tau)
    else:
        # sigma = -s on the reversed involute
        lifted, params, reference = lift(reverse(inv)), -s[::-1], curve.value(tau[::-1])
        keep = keep[::-1]
    recovered = evolute_points(F, lifted, params, F_a=F_a)
    report.message = "evolute of the involute" if case == DIRECT else "reverse evolute of the reverse involute"
    return _deviation(report, params, recovered, reference, keep)


def check_involute_of_evolute(F: Gauge, curve: ParamCurve, samples: int = LIFT_SAMPLES,
                              F_a: Gauge | None = None, tol: float = 1e-10, monotone_tol: float = 1e-9) -> RoundTripReport:
    """Involute of the evolute, or the reverse involute of the reverse evolute.

    The direct case needs ``k_c`` strictly increasing along the arc, the
    reversed case strictly decreasing.

    The involute constant is pinned at the first sample of the (possibly
    reversed) evolute: ``c = s*(start) + 1/k_c(start)`` with ``s*`` the arc
    length of the evolute.
    """
    F_a = _resolve_F_a(F, F_a)
    table, s, tau = _arc_samples(F, curve, samples, tol)
    k_c = np.atleast_1d(circular_curvature(F, curve, tau, F_a=F_a))
    case = _sign_case(np.diff(k_c), monotone_tol * np.max(np.abs(k_c)))
    report = RoundTripReport("involute_of_evolute", applicable=case is not None, case=case, n_samples=samples)
    if case is None:
        report.message = "k_c is not strictly monotone on the arc; round trip not applicable"
        return report

    ev = SampledCurve(s, curve.value(tau) - left_normal(F, curve, tau, F_a=F_a) / k_c[:, None])
    if case == DIRECT:
        lifted, params, reference, k_start = lift(ev), s, curve.value(tau), k_c[0]
    else:
        lifted, params, reference, k_start = lift(reverse(ev)), -s[::-1], curve.value(tau[::-1]), k_c[-1]
    ev_table = ArcLengthTable(F, lifted, tol=tol)
    c = 1.0 / k_start
    report.c = float(c)
    recovered = involute_points(F, lifted, c, params, table=ev_table)
    report.message = "involute of the evolute" if case == DIRECT else "reverse involute of the reverse evolute"
    return _deviation(report, params, recovered, reference, np.ones(len(params), dtype=bool))
