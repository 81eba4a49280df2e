import math
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.polynomial import Polynomial
from umbraq import jackson, qcore, qfunctions
from umbraq.bin.errors import SeriesDivergence
from umbraq.jackson import BivariatePoly, TricomiVariant


def test_jackson_derivative_fn_examples():
    assert jackson.jackson_derivative_fn(lambda t: t * t, 3.0, 0.5) == 4.5
    assert jackson.jackson_derivative_fn(lambda t: 7.0, 2.0, 0.5) == 0.0
    assert jackson.jackson_derivative_fn(lambda t: t, 7.0, 0.3) == pytest.approx(1.0, rel=1e-14)


def test_jackson_derivative_at_origin_falls_back_to_finite_difference():
    assert jackson.jackson_derivative_fn(math.sin, 0.0, 0.5) == pytest.approx(1.0, abs=1e-8)


def test_jackson_derivative_poly():
    derivative = jackson.jackson_derivative_poly(Polynomial([0.0, 0.0, 0.0, 1.0]), 0.5)
    np.testing.assert_allclose(derivative.coef, [0.0, 0.0, 1.75], rtol=1e-15)
    assert jackson.jackson_derivative_poly(Polynomial([3.0]), 0.5) == Polynomial([0.0])


@settings(max_examples=80, deadline=None)
@given(coefficients=st.lists(st.floats(min_value=-5.0, max_value=5.0), min_size=1, max_size=6),
       x=st.floats(min_value=0.1, max_value=2.0), q=st.floats(min_value=0.1, max_value=0.9))
def test_polynomial_and_quotient_agree(coefficients, x, q):
    p = Polynomial(coefficients)
    exact = jackson.jackson_derivative_poly(p, q)(x)
    assert jackson.jackson_derivative_fn(p, x, q) == pytest.approx(exact, rel=1e-8, abs=1e-8)


@pytest.mark.parametrize("lam, x, q", [(0.5, 0.2, 0.5), (1.0, 0.1, 0.7), (-0.4, 0.3, 0.3)])
def test_q_exponential_is_an_eigenfunction(lam, x, q):
    assert abs(jackson.q_exp_eigen_residual(lam, x, q)) < 1e-7


def test_tricomi_eigen_equations():
    assert abs(jackson.tricomi_eigen_residual(TricomiVariant.Q1, 1.0, 0.5, 0.5)) < 1e-5
    assert abs(jackson.tricomi_eigen_residual("qq", 1.0, 0.5, 0.5)) < 1e-7
    assert jackson.tricomi_eigen_residual("q1", 0.0, 0.5, 0.5) == 0.0
    assert jackson.tricomi_eigen_residual("qq", 0.0, 0.5, 0.5) == 0.0
    with pytest.raises(ValueError):
        jackson.tricomi_eigen_residual("q1", 1.0, 0.0, 0.5)
    with pytest.raises(ValueError):
        jackson.tricomi_eigen_residual("q2", 1.0, 0.5, 0.5)


def test_q_hermite_text():
    assert str(jackson.q_hermite(0, 0.5)) == "1"
    assert str(jackson.q_hermite(1, 0.5)) == "x"
    assert str(jackson.q_hermite(2, 0.5)) == "x^2 + 1.5*y"


def test_q_hermite_classical_limit():
    for n in range(7):
        h = jackson.q_hermite(n, 0.9999)
        for r in range(n // 2 + 1):
            expected = math.factorial(n) / (math.factorial(n - 2 * r) * math.factorial(r))
            assert h.coefficient(n - 2 * r, r) == pytest.approx(expected, rel=1e-2)


def test_q_hermite_matches_classical_values_near_one():
    value = jackson.q_hermite(4, 0.9999).evaluate(1.0, 1.0)
    assert value == pytest.approx(qfunctions.hermite2(4, 1.0, 1.0), rel=1e-2)


@pytest.mark.parametrize("q", [0.3, 0.6, 0.9])
def test_operator_form_matches_closed_form(q):
    for n in range(11):
        closed = jackson.q_hermite(n, q)
        gap = (closed - jackson.q_hermite_operator_form(n, q)).max_abs_coefficient()
        assert gap <= 1e-12 * max(closed.max_abs_coefficient(), 1.0)


@pytest.mark.parametrize("n, q, x, y", [(2, 0.5, 1.0, 1.0), (5, 0.7, 2.0, -1.0), (10, 0.4, 2.0, -1.0)])
def test_recurrences(n, q, x, y):
    assert max(jackson.q_hermite_recurrence_residuals(n, q, x, y)) < 1e-12


def test_recurrence_arguments():
    with pytest.raises(ValueError):
        jackson.q_hermite_recurrence_residuals(1, 0.5, 1.0, 1.0)
    with pytest.raises(ValueError):
        jackson.q_hermite_recurrence_residuals(3, 0.5, 0.0, 1.0)


@pytest.mark.parametrize("q", [0.2, 0.8])
def test_heat_property(q):
    for n in range(11):
        assert jackson.q_hermite_heat_residual(n, q) < 1e-12


def test_generating_function():
    assert jackson.q_hermite_genfun_residual(0.5, 0.3, 0.0, 0.5) == 0.0
    assert jackson.q_hermite_genfun_residual(0.5, 0.3, 0.1, 0.5) < 1e-8
    with pytest.raises(SeriesDivergence):
        jackson.q_hermite_genfun_residual(2.0, 0.0, 1.0, 0.5)


def test_bivariate_arithmetic():
    p = BivariatePoly({(2, 0): 1.0, (0, 1): 3.0})
    assert (p - p).is_zero()
    assert str(p - p) == "0"
    assert p.d_x() == BivariatePoly({(1, 0): 2.0})
    assert p.d_y() == BivariatePoly({(0, 0): 3.0})
    assert p.q_d_x(0.5) == BivariatePoly({(1, 0): qcore.q_number(2, 0.5)})
    assert p.times_x().times_y().coefficient(3, 1) == 1.0
    assert p.evaluate(2.0, -1.0) == 1.0
    assert p.magnitude(2.0, -1.0) == 7.0
    assert str(-p) == "-x^2 - 3*y"
    assert BivariatePoly([(1, 1, 2.0), (1, 1, -2.0)]).is_zero()
    assert hash(p) == hash(BivariatePoly({(0, 1): 3.0, (2, 0): 1.0}))
    with pytest.raises(ValueError):
        BivariatePoly({(-1, 0): 1.0})


def test_poly_text_joins_monomials():
    p = jackson.BivariatePoly({(1, 2): 2.5, (0, 0): -1.0, (0, 1): 1.0})
    assert jackson.poly_text(p) == "2.5*x*y^2 - 1 + y"
    assert jackson.poly_text(p) == str(p)
