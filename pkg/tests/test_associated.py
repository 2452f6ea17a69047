import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaugeplane import (
    CustomGauge,
    EuclideanGauge,
    GaugeDomainError,
    PolygonGauge,
    RandersGauge,
    associated,
    birkhoff_orthogonal,
    det_form,
    double_associated_residual,
    polygon_polar,
)
from gaugeplane.associated import (
    CLOSED_FORM_RANDERS,
    NUMERIC_SUP,
    POLYGON_EXACT,
    golden_section_max,
)

from oracles import brute_force_associated, randers_associated

TRIANGLE = [(1, 0), (0, 1), (-1, -1)]

coord = st.floats(-10, 10, allow_nan=False)
nonzero_vec = st.tuples(coord, coord).filter(lambda v: np.hypot(*v) > 1e-2)


def test_det_form_examples():
    assert det_form([1, 0], [0, 1]) == 1.0
    assert det_form([0, 1], [1, 0]) == -1.0
    assert det_form([2, 3], [4, 6]) == 0.0
    np.testing.assert_array_equal(det_form(np.eye(2), np.eye(2)[::-1]), [1.0, -1.0])


@settings(max_examples=100, deadline=None)
@given(x=nonzero_vec, y=nonzero_vec, lam=st.floats(0.1, 5))
def test_det_form_algebra(x, y, lam):
    assert det_form(x, y) == -det_form(y, x)
    assert det_form(np.multiply(lam, x), y) == pytest.approx(lam * det_form(x, y), rel=1e-12, abs=1e-12)


def test_default_routes():
    assert associated(RandersGauge(0.5)).method == CLOSED_FORM_RANDERS
    assert associated(EuclideanGauge()).method == CLOSED_FORM_RANDERS
    assert associated(PolygonGauge(TRIANGLE)).method == POLYGON_EXACT
    assert associated(CustomGauge(RandersGauge(0.2)._eval)).method == NUMERIC_SUP


def test_bad_route_requests():
    with pytest.raises(ValueError):
        associated(PolygonGauge(TRIANGLE), CLOSED_FORM_RANDERS)
    with pytest.raises(ValueError):
        associated(RandersGauge(0.5), POLYGON_EXACT)
    with pytest.raises(ValueError):
        associated(RandersGauge(0.5), "bogus")


def test_randers_closed_form_examples():
    A = associated(RandersGauge(0.5))
    # F_a(e2) = (1 - b)/(1 - b^2) = 1/(1 + b)
    assert A([0, 1]) == pytest.approx(2 / 3, abs=1e-15)
    assert A([0, -1]) == pytest.approx(2.0, abs=1e-15)
    assert A([1, 0]) == pytest.approx(1 / np.sqrt(0.75), abs=1e-15)


@pytest.mark.parametrize("b", [0.0, 0.3, 0.5, 0.7])
def test_numeric_matches_brute_force(b):
    F = RandersGauge(b)
    x = np.array([[1.0, 0.0], [0.3, -2.0], [-4.0, 1.5]])
    brute = brute_force_associated(F, x)
    np.testing.assert_allclose(associated(F, NUMERIC_SUP)(x), brute, rtol=1e-9)
    np.testing.assert_allclose(randers_associated(b, x), brute, rtol=1e-9)


def test_polygon_exact_matches_brute_force():
    F = PolygonGauge([(2, 0), (1, 1.5), (-1, 1), (-1.5, -1), (0.5, -2)])
    x = np.array([[1.0, 0.2], [-0.3, 2.0], [-1.0, -1.0]])
    A = associated(F)
    brute = brute_force_associated(F, x)
    # the grid can only miss a vertex, so brute force is a lower bound
    assert np.all(brute <= A(x) * (1 + 1e-12))
    np.testing.assert_allclose(A(x), brute, rtol=1e-5)
    np.testing.assert_allclose(associated(F, NUMERIC_SUP)(x), A(x), rtol=1e-9)


def test_associated_flags_swap():
    A = associated(PolygonGauge(TRIANGLE))
    assert not A.smooth and not A.strictly_convex
    C = CustomGauge(RandersGauge(0.1)._eval, smooth=True, strictly_convex=False)
    A = associated(C)
    assert not A.smooth and A.strictly_convex


def test_numeric_associated_zero_and_shape():
    A = associated(RandersGauge(0.4), NUMERIC_SUP)
    assert A([0.0, 0.0]) == 0.0
    assert A(np.ones((2, 3, 2))).shape == (2, 3)


@settings(max_examples=100, deadline=None)
@given(b=st.floats(-0.9, 0.9), x=nonzero_vec, y=nonzero_vec)
def test_determinant_bounded_by_gauges(b, x, y):
    F = RandersGauge(b)
    A = associated(F)
    assert det_form(y, x) <= F(y) * A(x) * (1 + 1e-12) + 1e-12


def test_polar_triangle():
    P = polygon_polar(TRIANGLE)
    np.testing.assert_allclose(P, [(-1, 1), (-1, -2), (2, 1)], atol=1e-12)


def _same_cycle(a, b):
    return any(np.allclose(np.roll(a, k, axis=0), b, atol=1e-12, rtol=0) for k in range(len(a)))


def test_polar_twice_is_negation():
    twice = polygon_polar(polygon_polar(TRIANGLE))
    assert _same_cycle(twice, -np.asarray(TRIANGLE, dtype=float))


def test_polar_square():
    square = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    P = polygon_polar(square)
    np.testing.assert_allclose(P, [(-1, 1), (-1, -1), (1, -1), (1, 1)], atol=1e-15)


def test_double_associated_randers():
    x = np.array([[1.0, 2.0], [-0.5, 0.1]])
    assert np.all(double_associated_residual(RandersGauge(0.5), x) <= 1e-12)
    assert np.all(double_associated_residual(RandersGauge(0.5), x, method=NUMERIC_SUP) <= 1e-6)
    with pytest.raises(GaugeDomainError):
        double_associated_residual(RandersGauge(0.5), [0.0, 0.0])


def test_birkhoff_examples():
    F = RandersGauge(0.5)
    # e1 is Birkhoff orthogonal to e2 in the Euclidean plane, in that order
    assert birkhoff_orthogonal(EuclideanGauge(), [1, 0], [0, 1])
    assert not birkhoff_orthogonal(EuclideanGauge(), [1, 0], [0, -1])
    # the right normal of the unit circle at tau = 0 is orthogonal to the tangent
    assert birkhoff_orthogonal(F, [0, 1], [-1, 0.5])
    with pytest.raises(GaugeDomainError):
        birkhoff_orthogonal(F, [0, 0], [1, 0])


@settings(max_examples=100, deadline=None)
@given(b=st.floats(-0.9, 0.9), theta=st.floats(0, 2 * np.pi))
def test_gradient_direction_is_orthogonal(b, theta):
    # x is Birkhoff orthogonal to the rotated gradient (-F_x2, F_x1)
    F = RandersGauge(b)
    x = np.array([np.cos(theta), np.sin(theta)])
    g = F.grad(x)
    assert birkhoff_orthogonal(F, x, [-g[1], g[0]], tol=1e-10)


def test_golden_section_vectorised():
    lo = np.array([0.0, 1.0])
    hi = np.array([2.0, 4.0])
    peak = np.array([0.7, 3.1])
    arg = golden_section_max(lambda t: -(t - peak) ** 2, lo, hi, 1e-12)
    np.testing.assert_allclose(arg, peak, atol=1e-7)
