import math
import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from umbraq import qcore
from umbraq.bin.config import ToleranceConfig
from umbraq.bin.errors import ConvergenceError, PoleError


def test_q_number_examples():
    assert qcore.q_number(2, 0.5) == pytest.approx(1.5, rel=1e-15)
    assert qcore.q_number(0, 0.3) == 0.0
    assert qcore.q_number(1, 0.7) == pytest.approx(1.0, rel=1e-15)
    assert qcore.q_number(0.5, 0.25) == pytest.approx((1 - 0.5) / 0.75, rel=1e-14)
    np.testing.assert_allclose(qcore.q_number(np.array([1.0, 2.0, 3.0]), 0.5), [1.0, 1.5, 1.75], rtol=1e-15)


def test_q_number_tends_to_n():
    assert qcore.q_number(7.5, 0.9999) == pytest.approx(7.5, rel=1e-3)


def test_q_number_infinity():
    assert qcore.q_number_infinity(1, 0.5) == pytest.approx(2.0, rel=1e-15)
    with pytest.raises(ValueError):
        qcore.q_number_infinity(0, 0.5)


def test_q_factorial():
    assert qcore.q_factorial(0, 0.5) == 1.0
    assert qcore.q_factorial(3, 0.5) == pytest.approx(1.0 * 1.5 * 1.75, rel=1e-15)
    for bad in (-1, 2.5, True):
        with pytest.raises(ValueError):
            qcore.q_factorial(bad, 0.5)


@pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
def test_q_gamma_on_integers_is_the_q_factorial(q):
    for n in range(21):
        assert qcore.q_gamma(n + 1, q).value == pytest.approx(qcore.q_factorial(n, q), rel=1e-10)


@settings(max_examples=100, deadline=None)
@given(x=st.floats(min_value=0.05, max_value=8.0), q=st.floats(min_value=0.05, max_value=0.95))
def test_q_gamma_functional_equation(x, q):
    lhs = qcore.q_gamma(x + 1.0, q).value
    rhs = qcore.q_number(x, q) * qcore.q_gamma(x, q).value
    assert lhs == pytest.approx(rhs, rel=1e-11)


@pytest.mark.parametrize("q", [0.2, 0.6, 0.95])
@pytest.mark.parametrize("x", [0.5, 1.3, 4.7, -0.5, -2.3])
def test_q_gamma_matches_mpmath(q, x):
    assert qcore.q_gamma(x, q).value == pytest.approx(float(mpmath.qgamma(x, q)), rel=1e-11)


def test_q_gamma_truncation_record():
    result = qcore.q_gamma(2.5, 0.7)
    assert result.factors_used > 0
    assert 0.0 <= result.truncation_error_bound <= 1e-12 * result.value
    assert float(result) == result.value


@pytest.mark.parametrize("x", [0.0, -1.0, -4.0])
def test_q_gamma_poles(x):
    with pytest.raises(PoleError):
        qcore.q_gamma(x, 0.5)
    with pytest.raises(PoleError):
        qcore.q_gamma_bracket(x, 0.5)


def test_q_gamma_factor_cap():
    with pytest.raises(ConvergenceError):
        qcore.q_gamma(0.5, 0.9999, ToleranceConfig(max_product_factors=100))


@pytest.mark.parametrize("q", [0.3, 0.7])
@pytest.mark.parametrize("x", [0.5, 2.0, 3.7, -0.4])
def test_bracket_form_agrees(q, x):
    assert qcore.q_gamma_bracket(x, q) == pytest.approx(qcore.q_gamma(x, q).value, rel=1e-9)


def test_bracket_form_exhausts_cap_near_one():
    with pytest.raises(ConvergenceError):
        qcore.q_gamma_bracket(0.5, 0.9999)


def test_pi_q_tends_to_pi():
    assert qcore.pi_q(0.9999) == pytest.approx(math.pi, abs=1e-3)
    assert qcore.pi_q(0.5) < qcore.pi_q(0.9) < math.pi


@pytest.mark.parametrize("q", [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95])
def test_wallis_product_matches_gamma_route(q):
    assert qcore.pi_q_wallis(q) == pytest.approx(qcore.pi_q(q), rel=1e-10)


def test_pi_q_result_bound():
    result = qcore.pi_q_result(0.5)
    assert result.value == pytest.approx(qcore.q_gamma(0.5, 0.5).value ** 2, rel=1e-15)
    assert result.truncation_error_bound >= 0.0


def test_wallis_partial():
    assert qcore.wallis_partial(1) == pytest.approx(4.0 / 3.0, rel=1e-15)
    assert qcore.wallis_partial(100_000) == pytest.approx(math.pi / 2, rel=1e-5)
    with pytest.raises(ValueError):
        qcore.wallis_partial(0)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.5, 7.3, 30.0, -0.5, -3.7])
def test_classical_gamma(x):
    assert qcore.classical_gamma(x) == pytest.approx(math.gamma(x), rel=1e-13)
    assert qcore.classical_lgamma(x) == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-13)
    assert qcore.classical_rgamma(x) == pytest.approx(1.0 / math.gamma(x), rel=1e-13)


def test_classical_gamma_poles():
    with pytest.raises(PoleError):
        qcore.classical_gamma(-2.0)
    with pytest.raises(PoleError):
        qcore.classical_lgamma(0.0)
    assert qcore.classical_rgamma(-3.0) == 0.0
