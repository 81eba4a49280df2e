import math
import mpmath
import numpy as np
import pytest
from scipy import special
from umbraq import qcore, qfunctions, umbral
from umbraq.bin.config import ToleranceConfig
from umbraq.bin.errors import SeriesDivergence
from umbraq.qfunctions import EvalMethod


LOOSE = ToleranceConfig(rel_tol=1e-10, abs_tol=1e-12)


def test_tricomi_q1_at_origin_and_shape():
    assert qfunctions.tricomi_q1(0.0, 0.5) == pytest.approx(1.0, rel=1e-15)
    values = qfunctions.tricomi_q1(np.linspace(0.0, 3.0, 7), 0.5)
    assert values.shape == (7,)


def test_tricomi_q1_classical_limit():
    assert qfunctions.tricomi_q1(2.0, 0.9999) == pytest.approx(special.j0(2.0 * math.sqrt(2.0)), abs=1e-3)


def test_tricomi_qq_series():
    q, x = 0.5, 0.3
    expected = sum((-x) ** r / qcore.q_factorial(r, q) ** 2 for r in range(60))
    assert qfunctions.tricomi_qq(x, q) == pytest.approx(expected, rel=1e-13)


def test_tricomi_qq_radius():
    with pytest.raises(SeriesDivergence):
        qfunctions.tricomi_qq(4.0, 0.5)
    assert qfunctions.qq_image(0.5).series_gate == pytest.approx(4.0)


def test_q_bessel_order_zero_is_tricomi():
    assert qfunctions.q_bessel(0, 2.0, 0.6) == pytest.approx(qfunctions.tricomi_q1(1.0, 0.6), rel=1e-13)


def test_q_bessel_classical_limit():
    assert qfunctions.q_bessel(1, 1.0, 0.9999) == pytest.approx(special.jv(1, 1.0), abs=1e-3)
    assert qfunctions.q_bessel(2.5, 3.0, 0.9999) == pytest.approx(special.jv(2.5, 3.0), abs=1e-3)


def test_q_bessel_argument_checks():
    with pytest.raises(ValueError):
        qfunctions.q_bessel(-1, 1.0, 0.5)
    with pytest.raises(ValueError):
        qfunctions.q_bessel(1, -1.0, 0.5)


def test_q_exp_at_zero():
    assert qfunctions.q_exp(0.0, 0.5) == 1.0


def test_q_exp_series_matches_product():
    q, x = 0.5, 0.3
    series = qfunctions.q_exp(x, q, EvalMethod.SERIES)
    product = qfunctions.q_exp(x, q, "product")
    assert series == pytest.approx(product, rel=1e-12)
    assert product == pytest.approx(1.0 / float(mpmath.qp(-(1 - q) * x, q)), rel=1e-12)


@pytest.mark.parametrize("q", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("x", [0.3, -0.5])
def test_q_exp_borel_integral_matches_series(x, q):
    series = qfunctions.q_exp(x, q, EvalMethod.SERIES, LOOSE)
    integral = qfunctions.q_exp(x, q, EvalMethod.BOREL_INTEGRAL, LOOSE)
    assert integral == pytest.approx(series, rel=1e-9)


@pytest.mark.parametrize("x", [0.25, 0.5])
def test_q_exp_classical_limit(x):
    assert qfunctions.q_exp(x, 0.999) == pytest.approx(math.exp(-x), rel=1e-3)


def test_q_exp_outside_gate_uses_integral():
    q, x = 0.5, 5.0
    expected = qfunctions.q_exp(x, q, EvalMethod.PRODUCT)
    assert qfunctions.q_exp(x, q, EvalMethod.AUTO, LOOSE) == pytest.approx(expected, rel=1e-8)


def test_q_exp_domain_errors():
    with pytest.raises(SeriesDivergence):
        qfunctions.q_exp(1.0, 0.5, EvalMethod.SERIES)
    with pytest.raises(ValueError):
        qfunctions.q_exp(-3.0, 0.5, EvalMethod.PRODUCT)
    with pytest.raises(ValueError):
        qfunctions.q_exp(0.1, 0.5, "newton")


def test_imaginary_q_exp_splits_into_q_trig():
    value = qfunctions.q_exp_imaginary(0.3, 0.5)
    assert value.real == pytest.approx(qfunctions.q_cos(0.3, 0.5), rel=1e-12)
    assert value.imag == pytest.approx(qfunctions.q_sin(0.3, 0.5), rel=1e-12)
    with pytest.raises(SeriesDivergence):
        qfunctions.q_exp_imaginary(1.0, 0.5)


def test_q_trig_classical_limit():
    assert qfunctions.q_cos(0.4, 0.9999) == pytest.approx(math.cos(0.4), abs=1e-3)
    assert qfunctions.q_sin(0.4, 0.9999) == pytest.approx(math.sin(0.4), abs=1e-3)


def test_q_trig_integral_route_inside_gate():
    assert qfunctions.q_cos(0.4, 0.5, LOOSE, "borel_integral") == pytest.approx(qfunctions.q_cos(0.4, 0.5), rel=1e-9)
    assert qfunctions.q_sin(0.4, 0.5, LOOSE, "borel_integral") == pytest.approx(qfunctions.q_sin(0.4, 0.5), rel=1e-9)


def test_q_trig_outside_gate_matches_resolvent():
    image = umbral.c_image(0.5, 2)
    assert qfunctions.q_cos(3.0, 0.5, LOOSE) == pytest.approx(umbral.umbral_resolvent(image, 9.0), rel=1e-8)
    assert qfunctions.q_sin(3.0, 0.5, LOOSE) == pytest.approx(umbral.umbral_resolvent(image, 9.0, 0.5), rel=1e-8)


def test_q_sin_is_odd_and_q_cos_rejects_product_mode():
    assert qfunctions.q_sin(-0.3, 0.5) == -qfunctions.q_sin(0.3, 0.5)
    with pytest.raises(ValueError):
        qfunctions.q_cos(0.3, 0.5, method=EvalMethod.PRODUCT)


def test_hermite2():
    assert qfunctions.hermite2(3, 1.0, -1.0) == -5.0
    assert qfunctions.hermite2(0, 2.0, 3.0) == 1.0
    assert qfunctions.hermite2(4, 1.0, 1.0) == 25.0
    np.testing.assert_allclose(qfunctions.hermite2(2, np.array([0.0, 1.0]), 2.0), [4.0, 5.0])
    with pytest.raises(ValueError):
        qfunctions.hermite2(-1, 0.0, 0.0)


def test_gaussian_derivative():
    x = 0.7
    assert qfunctions.gaussian_derivative(2, 1.0, x) == pytest.approx((4 * x * x - 2) * math.exp(-x * x), rel=1e-10)
    assert qfunctions.gaussian_derivative(1, 1.0, x) == pytest.approx(2 * x * math.exp(-x * x), rel=1e-13)
    with pytest.raises(ValueError):
        qfunctions.gaussian_derivative(1, 0.0, x)


def test_q_gaussian_derivative_order_zero():
    assert qfunctions.q_gaussian_derivative(0, 1.0, 0.5) == pytest.approx(qfunctions.tricomi_q1(1.0, 0.5), rel=1e-12)


@pytest.mark.parametrize("q", [0.4, 0.7])
@pytest.mark.parametrize("x", [0.3, 1.0, 2.0])
@pytest.mark.parametrize("n", range(6))
def test_q_gaussian_derivative_routes_agree(n, x, q):
    bessel = qfunctions.q_gaussian_derivative(n, x, q)
    series = qfunctions.q_gaussian_derivative_series(n, x, q)
    assert bessel == pytest.approx(series, abs=1e-6)


def test_q_gaussian_derivative_parity_and_small_argument():
    assert qfunctions.q_gaussian_derivative(3, -0.7, 0.5) == -qfunctions.q_gaussian_derivative(3, 0.7, 0.5)
    assert qfunctions.q_gaussian_derivative(2, 0.05, 0.5) == qfunctions.q_gaussian_derivative_series(2, 0.05, 0.5)
    with pytest.raises(ValueError):
        qfunctions.q_gaussian_derivative(1.5, 0.3, 0.5)
