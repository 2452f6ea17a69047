import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import ellipe

from gaugeplane import (
    ArcLengthTable,
    EuclideanGauge,
    GaugeDomainError,
    RandersGauge,
    SampledCurve,
    arc_length,
    circle,
    ellipse,
    segment,
)
from gaugeplane.curves import reverse_curve
from gaugeplane.evolute import reverse


def test_euclidean_circle_length():
    assert arc_length(EuclideanGauge(), circle(2.0)).length == pytest.approx(4 * np.pi, abs=1e-12)


def test_randers_circle_length():
    # the b x1' term integrates to zero over a closed curve
    assert arc_length(RandersGauge(0.5), circle()).length == pytest.approx(2 * np.pi, abs=1e-10)


def test_ellipse_length_against_scipy():
    a, b = 2.0, 1.0
    exact = 4 * a * ellipe(1 - (b / a) ** 2)
    assert arc_length(EuclideanGauge(), ellipse(a, b)).length == pytest.approx(exact, abs=1e-9)


@pytest.mark.parametrize("b", [0.0, 0.3, 0.5, 0.9])
def test_segment_asymmetry(b):
    F = RandersGauge(b)
    forward = arc_length(F, segment((0, 0), (1, 0))).length
    backward = arc_length(F, reverse_curve(segment((0, 0), (1, 0)))).length
    assert forward == pytest.approx(1 + b, abs=1e-14)
    assert backward == pytest.approx(1 - b, abs=1e-14)


def test_tau_at_inverts_s_at():
    table = ArcLengthTable(RandersGauge(0.7), ellipse(2.0, 1.0))
    s = np.linspace(0.0, table.length, 101)
    tau = table.tau_at(s)
    np.testing.assert_allclose(table.s_at(tau), s, atol=1e-11)
    assert np.all(np.diff(tau) > 0)
    assert table.tau_at(0.0) == pytest.approx(0.0, abs=1e-14)
    assert table.tau_at(table.length) == pytest.approx(2 * np.pi, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(b=st.floats(-0.9, 0.9), t=st.floats(0.0, 2 * np.pi))
def test_s_at_is_integral(b, t):
    F = RandersGauge(b)
    c = circle()
    table = ArcLengthTable(F, c)
    # closed form of int_0^t (1 - b sin u) du
    assert table.s_at(t) == pytest.approx(t + b * (np.cos(t) - 1), abs=1e-11)


def test_singular_curve_rejected():
    with pytest.raises(GaugeDomainError):
        ArcLengthTable(EuclideanGauge(), segment((0, 0), (0, 0)))


def test_reverse_sampled_curve_is_involution():
    sc = SampledCurve(np.linspace(0, 1, 5), np.arange(10.0).reshape(5, 2))
    rr = reverse(reverse(sc))
    np.testing.assert_array_equal(rr.s, sc.s)
    np.testing.assert_array_equal(rr.points, sc.points)
    np.testing.assert_array_equal(reverse(sc).s, [-1, -0.75, -0.5, -0.25, 0])
