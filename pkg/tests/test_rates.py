import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from growthlab.errors import (
    DegenerateWindow,
    InvalidParameter,
    SeriesTooShort,
    ZeroTransformedValue,
)
from growthlab.rates import (
    RateSeries,
    SmootherConfig,
    _window_slopes,
    direct_rates,
    smoothed_rates,
    transform_rates,
)
from growthlab.series import TransformKind, make_series


# --- containers -----------------------------------------------------------

def test_rate_series_validation():
    with pytest.raises(InvalidParameter):
        RateSeries([1, 2], [0.1], [5, 6])
    with pytest.raises(InvalidParameter):
        RateSeries([2, 1], [0.1, 0.2], [5, 6])
    with pytest.raises(InvalidParameter):
        RateSeries([1, 2], [0.1, 0.2], [5, 0.0])
    rs = RateSeries([1, 2], [0.1, -0.2], [5, -6])  # decline and F<0 are legal
    assert len(rs) == 2


def test_smoother_config_validation():
    SmootherConfig()  # defaults are valid
    with pytest.raises(InvalidParameter):
        SmootherConfig(window=4)
    with pytest.raises(InvalidParameter):
        SmootherConfig(window=1)
    with pytest.raises(InvalidParameter):
        SmootherConfig(window=5, degree=5)
    with pytest.raises(InvalidParameter):
        SmootherConfig(window=5, degree=0)


# --- direct estimator -------------------------------------------------------

def test_direct_rate_ten_percent():
    ts = make_series([2000, 2001], [100.0, 110.0])
    rs = direct_rates(ts)
    assert rs.rates[0] == 0.1


def test_direct_rate_flat_series_is_zero():
    ts = make_series([0, 1, 2], [5.0, 5.0, 5.0])
    assert np.all(direct_rates(ts).rates == 0.0)


def test_direct_rate_convention():
    """Each sample is stamped with the *later* time and size, while the
    denominator stays the earlier size."""
    ts = make_series([2000.0, 2002.0], [8.0, 10.0])
    rs = direct_rates(ts)
    assert len(rs) == 1
    assert rs.times[0] == 2002.0
    assert rs.sizes[0] == 10.0
    assert rs.rates[0] == (10.0 - 8.0) / (8.0 * 2.0)


def test_direct_rate_of_exponential_is_expm1():
    r = 0.025
    t = np.arange(1990.0, 2011.0)
    ts = make_series(t, np.exp(r * (t - 1990.0)))
    rs = direct_rates(ts)
    np.testing.assert_allclose(rs.rates, math.expm1(r), rtol=1e-12)


# --- smoothed estimator -------------------------------------------------------

def test_smoothed_rates_exact_on_linear_data():
    # S = 10 + 2t is inside the window polynomial's span, so the local fit
    # reproduces it exactly and the rate is 2 / (10 + 2t) to rounding.
    t = np.arange(0.0, 9.0)
    ts = make_series(t, 10.0 + 2.0 * t)
    rs = smoothed_rates(ts)
    np.testing.assert_allclose(rs.rates, 2.0 / (10.0 + 2.0 * t), rtol=1e-12)
    np.testing.assert_array_equal(rs.times, ts.times)
    np.testing.assert_array_equal(rs.sizes, ts.values)


def test_smoothed_rates_near_constant_on_exponential():
    r = 0.03
    t = np.arange(0.0, 41.0)
    ts = make_series(t, 100.0 * np.exp(r * t))
    rs = smoothed_rates(ts)
    np.testing.assert_allclose(rs.rates, r, rtol=1e-2)


def test_smoothed_needs_window_points():
    ts = make_series([0, 1, 2], [1.0, 2.0, 3.0])
    with pytest.raises(SeriesTooShort):
        smoothed_rates(ts, SmootherConfig(window=5, degree=2))


def test_window_slopes_rejects_zero_center_value():
    # the helper itself guards against a vanishing fitted denominator; an
    # all-zero window is the one case where the least-squares value is an
    # exact zero
    times = np.arange(5.0)
    values = np.zeros(5)
    with pytest.raises(DegenerateWindow):
        _window_slopes(
            times, values, SmootherConfig(),
            lambda i: DegenerateWindow(f"zero at {i}"),
        )


def test_smoothed_tracks_direct_on_fixture(gdp_series):
    rs_direct = direct_rates(gdp_series)
    rs_smooth = smoothed_rates(gdp_series)
    # same general level...
    assert abs(np.mean(rs_direct.rates) - np.mean(rs_smooth.rates[1:])) < 5e-3
    # ...with less scatter
    assert np.var(rs_smooth.rates) < np.var(rs_direct.rates)


# --- transformed rates -----------------------------------------------------

def test_transform_rates_log_of_double_exponential():
    # S = exp(e^{0.1 t}) means F = ln S grows at a constant 10% rate
    t = np.arange(0.0, 30.0, 0.25)
    ts = make_series(t, np.exp(np.exp(0.1 * t)))
    rs = transform_rates(ts, TransformKind.LOG)
    np.testing.assert_allclose(rs.rates, 0.1, rtol=1e-3)
    np.testing.assert_allclose(rs.sizes, np.exp(0.1 * t), rtol=1e-12)


def test_transform_rates_reciprocal_of_hyperbola():
    C, b = 4.376, 2.155e-3
    t = np.linspace(2000.0, 2020.0, 41)
    ts = make_series(t, 1.0 / (C - b * t))
    rs = transform_rates(ts, TransformKind.RECIPROCAL)
    # F = C - bt is linear, the window fit is exact, and R_F = -b / (C - bt)
    np.testing.assert_allclose(rs.rates, -b / (C - b * t), rtol=1e-9)


def test_transform_rates_identity_matches_smoothed():
    t = np.arange(0.0, 12.0)
    ts = make_series(t, 7.0 + t ** 2)
    a = smoothed_rates(ts)
    b = transform_rates(ts, TransformKind.IDENTITY)
    np.testing.assert_array_equal(a.rates, b.rates)


def test_transform_rates_zero_value_is_an_error():
    ts = make_series([0, 1, 2, 3, 4], [0.5, 1.0, 2.0, 4.0, 8.0])
    with pytest.raises(ZeroTransformedValue, match="index 1"):
        transform_rates(ts, TransformKind.LOG)  # ln 1 = 0 exactly


def test_transform_rates_recovers_wrapped_linear_rate():
    # F = ln S follows a linear-rate law: R_F(t) = a + bt
    a, b = 0.02, -4e-6
    t = np.arange(2000.0, 2060.0)
    F = 2.0 * np.exp((a + b * 2000.0) * (t - 2000.0) + 0.5 * b * (t - 2000.0) ** 2)
    ts = make_series(t, np.exp(F))
    rs = transform_rates(ts, TransformKind.LOG)
    np.testing.assert_allclose(rs.rates[2:-2], a + b * t[2:-2], rtol=1e-2)


# --- scale invariance ---------------------------------------------------------

@given(st.integers(min_value=-20, max_value=20))
@settings(max_examples=30, deadline=None)
def test_rates_are_scale_invariant_bitwise_for_binary_scales(exponent):
    """Rescaling sizes by a power of two commutes exactly with IEEE-754
    rounding, so the estimated rates must be bit-identical."""
    k = 2.0 ** exponent
    t = np.arange(0.0, 10.0)
    values = np.array([3.7, 4.1, 4.9, 5.0, 5.6, 6.9, 7.0, 8.8, 9.1, 11.0])
    base = make_series(t, values)
    scaled = make_series(t, k * values)
    np.testing.assert_array_equal(
        direct_rates(base).rates, direct_rates(scaled).rates
    )
    np.testing.assert_array_equal(
        smoothed_rates(base).rates, smoothed_rates(scaled).rates
    )


@given(st.floats(min_value=1e-3, max_value=1e3))
@settings(max_examples=50, deadline=None)
def test_rates_are_scale_invariant_for_general_scales(k):
    t = np.arange(0.0, 8.0)
    values = np.array([3.7, 4.1, 4.9, 5.0, 5.6, 6.9, 7.0, 8.8])
    base = make_series(t, values)
    scaled = make_series(t, k * values)
    np.testing.assert_allclose(
        direct_rates(base).rates, direct_rates(scaled).rates, rtol=1e-12
    )
    np.testing.assert_allclose(
        smoothed_rates(base).rates, smoothed_rates(scaled).rates, rtol=1e-12
    )
