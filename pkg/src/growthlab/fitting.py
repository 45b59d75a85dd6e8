"""Straight-line least squares in the transformed spaces where the growth
models become linear, plus the window bookkeeping around it.

Every fit here is ordinary least squares of y on x for some choice of
(x, y) — rate vs time, rate vs size, 1/rate vs time, ln rate vs time,
ln size vs time, 1/size vs time — so one solver serves all six spaces.
The solver uses mean-shifted normal equations: with only two parameters
that is as accurate as anything fancier and trivially auditable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateX,
    InvalidParameter,
    NonPositiveRate,
    TooFewPoints,
    ZeroRate,
)
from .models import (
    Exponential,
    GrowthModel,
    Hyperbolic,
    HyperbolicRateTime,
    ExpRateTime,
    LinearRateSize,
    LinearRateTime,
)
from .rates import RateSeries
from .series import TimeSeries

RATE_VS_TIME = "rate-vs-time"
RATE_VS_SIZE = "rate-vs-size"
RECIPROCAL_RATE_VS_TIME = "reciprocal-rate-vs-time"
LOG_RATE_VS_TIME = "log-rate-vs-time"
LOG_SIZE_VS_TIME = "log-size-vs-time"
RECIPROCAL_SIZE_VS_TIME = "reciprocal-size-vs-time"

SPACES = (
    RATE_VS_TIME,
    RATE_VS_SIZE,
    RECIPROCAL_RATE_VS_TIME,
    LOG_RATE_VS_TIME,
    LOG_SIZE_VS_TIME,
    RECIPROCAL_SIZE_VS_TIME,
)


@dataclass(frozen=True)
class FitWindow:
    """Inclusive time window [t_start, t_end] selecting points for a fit."""

    t_start: float
    t_end: float

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise InvalidParameter(
                f"window needs t_start < t_end, got [{self.t_start!r}, {self.t_end!r}]",
                module="fitting",
            )

    def mask(self, times: np.ndarray) -> np.ndarray:
        return (times >= self.t_start) & (times <= self.t_end)


@dataclass(frozen=True)
class LineFit:
    """y = a + b x with its residual sum of squares and point count."""

    a: float
    b: float
    rss: float
    n: int


@dataclass(frozen=True)
class FitResult:
    model: GrowthModel
    line: LineFit
    window: FitWindow
    space: str
    # extra evidence kept by fit_rate_size for its model-selection rule
    origin_line: LineFit | None = None
    intercept_stderr: float | None = None


def _fit_xy(x: np.ndarray, y: np.ndarray) -> LineFit:
    n = len(x)
    if n < 2:
        raise TooFewPoints(f"need at least 2 points for a line, got {n}")
    x_mean = float(np.mean(x))
    y_mean = float(np.mean(y))
    dx = x - x_mean
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise DegenerateX(f"all {n} x-values equal {x_mean!r}; slope is undefined")
    b = float(np.dot(dx, y - y_mean)) / sxx
    a = y_mean - b * x_mean
    residuals = y - (a + b * x)
    return LineFit(a=a, b=b, rss=float(np.dot(residuals, residuals)), n=n)


def _windowed(x: np.ndarray, y: np.ndarray, window: FitWindow | None):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if window is None:
        return x, y
    keep = window.mask(x)
    return x[keep], y[keep]


def fit_line(x, y, window: FitWindow | None = None) -> LineFit:
    """OLS line through (x, y), restricted to the window if one is given."""
    return _fit_xy(*_windowed(x, y, window))


def _span(times: np.ndarray) -> FitWindow:
    return FitWindow(float(times[0]), float(times[-1]))


def fit_rate_time(rs: RateSeries, window: FitWindow | None = None) -> FitResult:
    """Line through (t, R): the linear-rate-in-time model."""
    x, y = _windowed(rs.times, rs.rates, window)
    line = _fit_xy(x, y)
    return FitResult(
        model=LinearRateTime(a=line.a, b=line.b),
        line=line,
        window=window if window is not None else _span(rs.times),
        space=RATE_VS_TIME,
    )


def fit_rate_size(rs: RateSeries, window: FitWindow | None = None) -> FitResult:
    """Line through (S, R): rate linear in size.

    A zero intercept means strictly hyperbolic growth (R = bS), so alongside
    the free fit we compute the through-origin companion; if the free
    intercept is within two standard errors of zero the hyperbolic model is
    selected with the through-origin slope, otherwise the two-parameter
    linear-rate-in-size model is kept.
    """
    times = np.asarray(rs.times, dtype=float)
    keep = np.ones(len(times), dtype=bool) if window is None else window.mask(times)
    x = np.asarray(rs.sizes, dtype=float)[keep]
    y = np.asarray(rs.rates, dtype=float)[keep]
    line = _fit_xy(x, y)

    sxy = float(np.dot(x, y))
    sxx_origin = float(np.dot(x, x))
    if sxx_origin == 0.0:
        raise DegenerateX("all sizes are zero; through-origin slope is undefined")
    b0 = sxy / sxx_origin
    resid0 = y - b0 * x
    origin_line = LineFit(a=0.0, b=b0, rss=float(np.dot(resid0, resid0)), n=line.n)

    stderr = None
    if line.n > 2:
        x_mean = float(np.mean(x))
        dx = x - x_mean
        sxx = float(np.dot(dx, dx))
        sigma2 = line.rss / (line.n - 2)
        stderr = math.sqrt(sigma2 * (1.0 / line.n + x_mean * x_mean / sxx))

    hyperbolic = line.a == 0.0 or (stderr is not None and abs(line.a) <= 2.0 * stderr)
    model: GrowthModel
    if hyperbolic:
        model = Hyperbolic(b=origin_line.b)
    else:
        model = LinearRateSize(a=line.a, b=line.b)
    return FitResult(
        model=model,
        line=line,
        window=window if window is not None else _span(times),
        space=RATE_VS_SIZE,
        origin_line=origin_line,
        intercept_stderr=stderr,
    )


def fit_reciprocal_rate(rs: RateSeries, window: FitWindow | None = None) -> FitResult:
    """Line through (t, 1/R): the hyperbolically-decaying-rate model."""
    x, rates = _windowed(rs.times, rs.rates, window)
    zero = np.flatnonzero(rates == 0.0)
    if zero.size:
        i = int(zero[0])
        raise ZeroRate(
            f"rate is exactly zero at t={float(x[i])!r}; 1/R is undefined there"
        )
    line = _fit_xy(x, 1.0 / rates)
    model: GrowthModel
    if line.b == 0.0:
        model = Exponential(r=1.0 / line.a)
    else:
        model = HyperbolicRateTime(a=line.a, b=line.b)
    return FitResult(
        model=model,
        line=line,
        window=window if window is not None else _span(rs.times),
        space=RECIPROCAL_RATE_VS_TIME,
    )


def fit_log_rate(rs: RateSeries, window: FitWindow | None = None) -> FitResult:
    """Line through (t, ln R): the exponentially-changing-rate model."""
    x, rates = _windowed(rs.times, rs.rates, window)
    bad = np.flatnonzero(rates <= 0.0)
    if bad.size:
        i = int(bad[0])
        raise NonPositiveRate(
            f"rate {float(rates[i])!r} at t={float(x[i])!r} is not positive; ln R is undefined"
        )
    line = _fit_xy(x, np.log(rates))
    return FitResult(
        model=ExpRateTime(a=line.a, b=line.b),
        line=line,
        window=window if window is not None else _span(rs.times),
        space=LOG_RATE_VS_TIME,
    )


def fit_exponential(ts: TimeSeries, window: FitWindow | None = None) -> FitResult:
    """Line through (t, ln S): fits the constant-rate model directly to sizes,
    giving both the rate (slope) and the scale C = e^intercept."""
    x, values = _windowed(ts.times, ts.values, window)
    line = _fit_xy(x, np.log(values))
    return FitResult(
        model=Exponential(r=line.b, C=math.exp(line.a)),
        line=line,
        window=window if window is not None else _span(ts.times),
        space=LOG_SIZE_VS_TIME,
    )


def fit_hyperbolic(ts: TimeSeries, window: FitWindow | None = None) -> FitResult:
    """Line through (t, 1/S): a falling straight line is hyperbolic growth,
    1/S = C - bt, fully determined (scale included) by the two coefficients."""
    x, values = _windowed(ts.times, ts.values, window)
    line = _fit_xy(x, 1.0 / values)
    return FitResult(
        model=Hyperbolic(b=-line.b, C=line.a),
        line=line,
        window=window if window is not None else _span(ts.times),
        space=RECIPROCAL_SIZE_VS_TIME,
    )
