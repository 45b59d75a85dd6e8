"""Empirical growth-rate estimators.

The growth rate of a series S(t) is R = (1/S) dS/dt, a per-year fraction.
Two estimators are provided:

* a forward-difference estimator applied directly to the data, and
* a smoothed estimator that slides a least-squares polynomial window over
  the points and differentiates the fitted polynomial instead of the data.

Percent is a display concern and never appears here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateWindow,
    InvalidParameter,
    SeriesTooShort,
    ZeroTransformedValue,
)
from .series import PointSeries, TimeSeries, TransformKind, transform_series


@dataclass(frozen=True)
class RateSeries:
    """(time, rate, size) triples.

    ``sizes`` holds the value each rate sample refers to — the raw size for
    plain estimates, or the transformed value F when the rate of F(S) was
    estimated (F = ln S may be negative, hence nonzero rather than positive).
    Rates may be negative; decline is legal.
    """

    times: np.ndarray
    rates: np.ndarray
    sizes: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        rates = np.array(self.rates, dtype=float)
        sizes = np.array(self.sizes, dtype=float)
        for arr in (times, rates, sizes):
            arr.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "sizes", sizes)
        if not (len(times) == len(rates) == len(sizes)):
            raise InvalidParameter(
                "times, rates and sizes must have equal lengths "
                f"({len(times)}, {len(rates)}, {len(sizes)})",
                module="rates",
            )
        if (np.diff(times) <= 0).any():
            raise InvalidParameter(
                "rate sample times must be strictly increasing", module="rates"
            )
        if (sizes == 0).any():
            raise InvalidParameter(
                "rate sample sizes must be nonzero", module="rates"
            )

    def __len__(self) -> int:
        return len(self.times)


@dataclass(frozen=True)
class SmootherConfig:
    """Sliding-window polynomial settings: odd point count, degree < window."""

    window: int = 5
    degree: int = 2

    def __post_init__(self):
        if self.window < 3 or self.window % 2 == 0:
            raise InvalidParameter(
                f"window must be an odd integer >= 3, got {self.window}",
                module="rates",
            )
        if self.degree < 1 or self.degree >= self.window:
            raise InvalidParameter(
                f"degree must satisfy 1 <= degree < window, got {self.degree}",
                module="rates",
            )


def direct_rates(ts: TimeSeries) -> RateSeries:
    """Forward-difference rate estimates.

    The sample over (t_i, t_{i+1}) is (S_{i+1} - S_i) / (S_i (t_{i+1} - t_i))
    and is reported at t_{i+1} with size S_{i+1} — the denominator stays the
    earlier value, deliberately, rather than a centered average. The first
    observation anchors the first difference and gets no rate, so the output
    is one shorter than the input.
    """
    if len(ts) < 2:
        raise SeriesTooShort(f"need at least 2 points, got {len(ts)}")
    dt = np.diff(ts.times)
    ds = np.diff(ts.values)
    rates = ds / (ts.values[:-1] * dt)
    return RateSeries(ts.times[1:], rates, ts.values[1:])


def _window_slopes(times: np.ndarray, values: np.ndarray, cfg: SmootherConfig,
                   zero_center_error) -> np.ndarray:
    """Rate of the fitted polynomial, p'(t_i)/p(t_i), at every sample.

    Interior points get a centered window of cfg.window points; the ends
    reuse the first/last window one-sidedly. Both the derivative and the
    value come from the same local fit, so numerator and denominator see
    identical smoothing. The window abscissa is shifted to the evaluation
    point, which keeps the polynomial basis well conditioned and makes the
    fit's constant and linear coefficients exactly p(t_i) and p'(t_i).
    """
    n = len(times)
    w = cfg.window
    if n < w:
        raise SeriesTooShort(f"need at least {w} points for window {w}, got {n}")
    half = w // 2
    out = np.empty(n)
    for i in range(n):
        lo = min(max(i - half, 0), n - w)
        x = times[lo:lo + w] - times[i]
        y = values[lo:lo + w]
        coeffs = np.polyfit(x, y, cfg.degree)
        center_value = coeffs[-1]
        center_slope = coeffs[-2]
        if center_value == 0.0:
            raise zero_center_error(i)
        out[i] = center_slope / center_value
    return out


def smoothed_rates(ts: TimeSeries, cfg: SmootherConfig | None = None) -> RateSeries:
    """Rates from locally fitted polynomials (defaults: window 5, degree 2)."""
    cfg = cfg or SmootherConfig()

    def zero_center(i):
        return DegenerateWindow(
            f"fitted window value vanishes at t={float(ts.times[i])!r}; rate undefined"
        )

    rates = _window_slopes(ts.times, ts.values, cfg, zero_center)
    return RateSeries(ts.times, rates, ts.values)


def transform_rates(ts: TimeSeries, kind: TransformKind,
                    cfg: SmootherConfig | None = None) -> RateSeries:
    """Smoothed rates of the transformed quantity F(S).

    The smoothing machinery runs on F = identity(S), 1/S or ln S and the
    rate is (dF/dt)/F, so any F equal to zero (S = 1 under log) makes the
    rate undefined. The sizes field of the result carries F itself.
    """
    cfg = cfg or SmootherConfig()
    transformed: PointSeries = transform_series(ts, kind)
    f = transformed.values
    zero = f == 0.0
    if zero.any():
        index = int(np.argmax(zero))
        raise ZeroTransformedValue(
            f"transformed value is zero at index {index} "
            f"(t={float(ts.times[index])!r}); the rate of F divides by F"
        )

    def zero_center(i):
        return ZeroTransformedValue(
            f"fitted transformed value vanishes at t={float(ts.times[i])!r}"
        )

    rates = _window_slopes(transformed.times, f, cfg, zero_center)
    return RateSeries(transformed.times, rates, f)
