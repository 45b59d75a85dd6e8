"""Generate tests/data/world_gdp.csv, the deterministic GDP-like fixture.

The fixture is a synthetic stand-in for an annual world-GDP series
(constant-dollar, 1960-2014). It is built backward from its 2014 value out
of a growth-rate path with a slowly falling trend, an early-decades boost,
two business-cycle harmonics, seeded white noise, and a few recession
dips. The trend coefficients are tuned in a fixed-point loop until the
package's own pipeline — window-5/degree-2 smoothed rates, straight line
fitted over 1980-2014 — recovers a = 3.895e-1 and b = -1.805e-4 to within
1e-8 / 1e-11, so the fixture and the estimators agree by construction, not
by luck.

The 2014 level is 5.0e14 / e^2.15: an exact 2.5%/year path from 2014 then
lands on 5.0e14 at 2100.

After writing the file (values rounded to 6 significant digits) the script
re-reads it through the CLI ingester and asserts every downstream check it
exists to support; it refuses to leave a fixture behind that fails one.
"""

from __future__ import annotations

import math
import pathlib
import sys

import numpy as np

from growthlab.cli import ingest_csv
from growthlab.fitting import FitWindow, fit_rate_time
from growthlab.models import Exponential, LinearRateTime, normalize
from growthlab.rates import direct_rates, smoothed_rates
from growthlab.series import make_series

TARGET_A = 3.895e-1
TARGET_B = -1.805e-4
YEARS = np.arange(1960, 2015, dtype=float)
S_2014 = 5.0e14 / math.exp(2.15)
SEED = 20150416
FIT_WINDOW = FitWindow(1980.0, 2014.0)

DIPS = {
    1974.0: -0.015,
    1975.0: -0.008,
    1982.0: -0.012,
    1991.0: -0.010,
    2009.0: -0.035,
    2010.0: 0.010,
}


def rate_extras(years: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Everything in the rate path except the tunable linear trend."""
    elapsed = years - years[0]
    extras = 0.012 * np.exp(-elapsed / 5.0)
    extras += 0.006 * np.sin(2.0 * np.pi * elapsed / 8.6)
    extras += 0.004 * np.sin(2.0 * np.pi * elapsed / 3.7 + 1.0)
    extras += rng.normal(0.0, 0.004, size=len(years))
    for year, dip in DIPS.items():
        extras[years == year] += dip
    return extras


def build_values(a0: float, b0: float, extras: np.ndarray) -> np.ndarray:
    """Integrate the rate path backward from the pinned 2014 level."""
    rate = a0 + b0 * YEARS + extras
    log_values = np.empty(len(YEARS))
    log_values[-1] = math.log(S_2014)
    for i in range(len(YEARS) - 2, -1, -1):
        log_values[i] = log_values[i + 1] - 0.5 * (rate[i] + rate[i + 1])
    return np.exp(log_values)


def tune(extras: np.ndarray) -> tuple[float, float, np.ndarray]:
    a0, b0 = TARGET_A, TARGET_B
    for _ in range(100):
        values = build_values(a0, b0, extras)
        ts = make_series(YEARS, values)
        fitted = fit_rate_time(smoothed_rates(ts), FIT_WINDOW).line
        da = TARGET_A - fitted.a
        db = TARGET_B - fitted.b
        if abs(da) < 1e-8 and abs(db) < 1e-11:
            return a0, b0, values
        a0 += da
        b0 += db
    raise SystemExit("tuning loop did not converge")


def verify(path: pathlib.Path) -> None:
    ts = ingest_csv(str(path))
    fitted = fit_rate_time(smoothed_rates(ts), FIT_WINDOW)
    a, b = fitted.line.a, fitted.line.b
    assert abs(a - TARGET_A) <= 0.05 * abs(TARGET_A), a
    assert abs(b - TARGET_B) <= 0.05 * abs(TARGET_B), b

    peak_time = a / abs(b)
    assert 2156.0 <= peak_time <= 2160.0, peak_time

    anchor_year = float(ts.times[-1])
    anchor_value = float(ts.values[-1])
    trend = normalize(LinearRateTime(a=a, b=b), anchor_year, anchor_value)
    peak_size = trend.evaluate(peak_time)
    assert abs(peak_size - 3.9e14) <= 0.10 * 3.9e14, peak_size

    scenario = normalize(Exponential(r=0.025), anchor_year, anchor_value)
    landing = scenario.evaluate(2100.0)
    assert abs(landing - 5.0e14) <= 0.05 * 5.0e14, landing

    raw = np.var(direct_rates(ts).rates)
    smooth = np.var(smoothed_rates(ts).rates)
    assert raw > smooth, (raw, smooth)

    print(f"fit a={a:.6e} b={b:.6e}")
    print(f"peak year {peak_time:.2f}, peak size {peak_size:.4e}")
    print(f"2.5% scenario lands at {landing:.4e} in 2100")
    print(f"rate variance: direct {raw:.3e} > smoothed {smooth:.3e}")


def main() -> int:
    rng = np.random.default_rng(SEED)
    extras = rate_extras(YEARS, rng)
    a0, b0, values = tune(extras)
    print(f"tuned trend: a0={a0:.10e} b0={b0:.10e}")

    out = pathlib.Path(__file__).resolve().parents[1] / "tests" / "data" / "world_gdp.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w") as fh:
        fh.write("year,gdp\n")
        for year, value in zip(YEARS, values):
            fh.write(f"{int(year)},{value:.6e}\n")
    print(f"wrote {out}")

    verify(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
