import math
import mpmath
import numpy as np
import pytest
from umbraq import qcore, umbral
from umbraq.bin.config import ToleranceConfig
from umbraq.bin.errors import SeriesDivergence, UmbralEvaluationError


LOOSE = ToleranceConfig(rel_tol=1e-10, abs_tol=1e-12)


def tricomi_reference(x, q, terms=400):
    """sum_r (-x)**r / (r! [r]_q!) in 80-digit arithmetic."""
    with mpmath.workdps(80):
        q = mpmath.mpf(q)
        x = mpmath.mpf(x)
        term = mpmath.mpf(1)
        total = term
        for r in range(1, terms):
            term *= -x / (r * (1 - q ** r) / (1 - q))
            total += term
        return float(total)


def test_c_image_moments():
    image = umbral.c_image(0.5)
    assert image.moment(0) == pytest.approx(1.0, rel=1e-14)
    assert image.moment(2) == pytest.approx(1.0 / 1.5, rel=1e-12)
    assert image.moment_ratio(2) == pytest.approx(1.0 / qcore.q_number(3, 0.5), rel=1e-14)
    assert image.series_gate == pytest.approx(1.0 / 1.5)


def test_c_image_stride():
    image = umbral.c_image(0.5, 2)
    assert image.moment(1) == pytest.approx(1.0 / qcore.q_factorial(2, 0.5), rel=1e-12)
    assert image.label == "c^2"
    with pytest.raises(ValueError):
        umbral.c_image(0.5, 0)


def test_c_image_pole_surfaces():
    with pytest.raises(UmbralEvaluationError):
        umbral.c_image(0.5).moment(-1.0)


def test_moment_ratio_without_explicit_ratio():
    image = umbral.UmbralImage(lambda mu: 2.0 ** -mu, "half")
    assert image.moment_ratio(3.0) == pytest.approx(0.5)
    zero = umbral.UmbralImage(lambda mu: 0.0, "zero")
    with pytest.raises(UmbralEvaluationError):
        zero.moment_ratio(1.0)


def test_unit_image_reproduces_exponential_and_geometric():
    unit = umbral.UmbralImage(lambda mu: 1.0, "unit", lambda mu: 1.0, series_gate=1.0)
    assert umbral.umbral_exp(unit, 1.5) == pytest.approx(math.exp(-1.5), rel=1e-13)
    assert umbral.umbral_geometric(unit, 0.5) == pytest.approx(1.0 / 1.5, rel=1e-13)
    np.testing.assert_allclose(umbral.umbral_exp(unit, np.array([[0.0, 1.0], [2.0, 3.0]])),
                               np.exp(-np.array([[0.0, 1.0], [2.0, 3.0]])), rtol=1e-13)
    with pytest.raises(SeriesDivergence):
        umbral.umbral_geometric(unit, 1.0)


@pytest.mark.parametrize("x", [0.5, 3.0, 12.0, 40.0])
def test_tricomi_exponential_against_high_precision_series(x):
    value = umbral.umbral_exp(umbral.c_image(0.5), x)
    assert value == pytest.approx(tricomi_reference(x, 0.5), abs=1e-12)


def test_euler_route_availability():
    assert umbral.c_image(0.5).euler_available
    assert not umbral.c_image(0.9999).euler_available


def test_resolvent_is_the_q_exponential_product():
    q, x = 0.5, 5.0
    expected = 1.0 / float(mpmath.qp(-(1 - q) * x, q))
    assert umbral.umbral_resolvent(umbral.c_image(q), x) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError):
        umbral.umbral_resolvent(umbral.c_image(q), -3.0)


def test_laplace_device_agrees_with_resolvent_outside_gate():
    image = umbral.c_image(0.5)
    assert umbral.umbral_rational(image, 5.0, 0, LOOSE) == pytest.approx(umbral.umbral_resolvent(image, 5.0), rel=1e-8)


def test_laplace_device_agrees_with_series_inside_gate():
    image = umbral.c_image(0.5)
    assert umbral.umbral_rational(image, 0.3, 0, LOOSE) == pytest.approx(umbral.umbral_geometric(image, 0.3), rel=1e-9)


def test_rational_at_zero_and_argument_checks():
    image = umbral.c_image(0.5)
    assert umbral.umbral_rational(image, 0.0) == pytest.approx(1.0, rel=1e-13)
    with pytest.raises(ValueError):
        umbral.umbral_rational(image, -0.5, 0.5)


def test_rational_result_carries_error_estimate():
    result = umbral.umbral_rational_result(umbral.c_image(0.5), 2.0, 0, LOOSE)
    assert result.converged
    assert 0.0 <= result.abs_error_estimate < 1e-8
