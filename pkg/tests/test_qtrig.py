import math
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from umbraq import qtrig
from umbraq.bin.errors import ConfigError, ConvergenceError, PoleError


@pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
def test_sine_vanishes_exactly_at_integers(q):
    for k in range(6):
        assert qtrig.sin_q_scaled(float(k), q) == 0.0
    assert qtrig.cos_q_scaled(0.5, q) == 0.0
    assert qtrig.cos_q_scaled(1.5, q) == 0.0


@pytest.mark.parametrize("q", [0.3, 0.5, 0.9, 0.9999])
def test_unit_values(q):
    assert qtrig.sin_q_scaled(0.5, q) == pytest.approx(1.0, rel=1e-10)
    assert qtrig.cos_q_scaled(0.0, q) == pytest.approx(1.0, rel=1e-13)


def test_half_integer_value_of_second_lobe():
    assert qtrig.sin_q_scaled(1.5, 0.81) == pytest.approx(-1.0 / 0.9, rel=1e-12)


@pytest.mark.parametrize("x", [0.0, 0.3, 1.0, 1.7])
@pytest.mark.parametrize("q", [0.4, 0.9])
def test_half_shift(x, q):
    assert abs(qtrig.sin_cos_shift_residual(x, q)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(x=st.floats(min_value=0.05, max_value=0.95), q=st.floats(min_value=0.1, max_value=0.95))
def test_gamma_duality(x, q):
    assert qtrig.sin_q_scaled(x, q) == pytest.approx(qtrig.sin_q_reflection(x, q), rel=1e-10)


def test_cosine_duality():
    assert qtrig.cos_q_scaled(0.25, 0.4) == pytest.approx(qtrig.cos_q_reflection(0.25, 0.4), rel=1e-10)
    with pytest.raises(PoleError):
        qtrig.sin_q_reflection(1.0, 0.4)


@pytest.mark.parametrize("x", [0.3, 0.8, 1.6])
def test_twisted_parity(x):
    q = 0.5
    assert qtrig.sin_q_scaled(-x, q) == pytest.approx(-q ** -x * qtrig.sin_q_scaled(x, q), rel=1e-11)


def test_plain_parity_is_broken():
    assert abs(qtrig.sin_q_scaled(-0.3, 0.5) + qtrig.sin_q_scaled(0.3, 0.5)) > 1e-3


def test_classical_limit():
    for x in (0.2, 0.7, 1.3):
        assert qtrig.sin_q_scaled(x, 0.9999) == pytest.approx(math.sin(math.pi * x), abs=1e-2)
        assert qtrig.cos_q_scaled(x, 0.9999) == pytest.approx(math.cos(math.pi * x), abs=1e-2)


def test_extremum_scan():
    q = 0.81
    records = qtrig.extremum_scan(q, 2)
    assert [r.k for r in records] == [0, 1, 2]
    assert records[0].location == pytest.approx(0.5, abs=1e-5)
    assert records[0].value == pytest.approx(1.0, rel=1e-9)
    assert records[1].half_integer_value == pytest.approx(-q ** -0.5, rel=1e-10)
    assert records[1].location > 1.5
    magnitudes = [abs(r.value) for r in records]
    assert magnitudes == sorted(magnitudes)
    assert all(abs(r.value) >= abs(r.half_integer_value) * (1.0 - 1e-12) for r in records)


def test_extremum_scan_near_classical_limit():
    records = qtrig.extremum_scan(0.9999, 2)
    assert all(abs(abs(r.value) - 1.0) < 1e-2 for r in records)


def test_extremum_scan_needs_a_lobe():
    with pytest.raises(ValueError):
        qtrig.extremum_scan(0.5, 0)


def test_parametric_curve_near_classical_limit():
    curve = qtrig.parametric_curve(0.9999, 0.0, 1.0, 100)
    radius = np.hypot(curve["cos_q"], curve["sin_q"])
    assert len(curve) == 101
    assert float(np.max(np.abs(radius - 1.0))) < 0.05


def test_parametric_curve_starts_on_the_axis():
    curve = qtrig.parametric_curve(0.9, 0.0, 2.0, 10)
    assert list(curve.columns) == ["x", "cos_q", "sin_q"]
    assert curve.loc[0, "cos_q"] == pytest.approx(1.0, abs=1e-12)
    assert curve.loc[0, "sin_q"] == 0.0


def test_trig_table_layout():
    table = qtrig.trig_table([0.4, 0.6, 0.9], 0.0, 6.0, 600)
    assert table.shape == (601, 7)
    assert list(table.columns[:3]) == ["x", "sin_q(q=0.4)", "cos_q(q=0.4)"]
    assert table["x"].iloc[-1] == 6.0
    with pytest.raises(ValueError):
        qtrig.trig_table([0.4], 1.0, 0.0, 10)
    with pytest.raises(ValueError):
        qtrig.trig_table([0.4], 0.0, 1.0, 1)


def test_product_configuration():
    with pytest.raises(ConfigError):
        qtrig.TrigProductConfig(max_factors=0)
    with pytest.raises(ConfigError):
        qtrig.TrigProductConfig(factor_tol=0.0)
    with pytest.raises(ConvergenceError):
        qtrig.sin_q_scaled(0.3, 0.9999, qtrig.TrigProductConfig(max_factors=10))
