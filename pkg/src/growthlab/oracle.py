"""Independent numerical checks for the closed-form model catalog.

Two self-contained routes that never call the models' own evaluators for
trajectories:

* a fixed-step classic Runge-Kutta integrator for dS/dt = S * f(t, S),
  where f is rebuilt here from the model's parameters alone, and
* a composite-Simpson quadrature check of the partial-fraction identity
      integral dx / ((a+bx)(c+ex)) = (1/D) ln((a+bx)/(c+ex)),  D = cb - ae,
  which underlies the rate-linear-in-size solution.

Models with finite-time blow-up are integrated only inside a 5% guard band
in front of the blow-up time; asking for points past the band is an error,
not a NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DomainViolation,
    InvalidParameter,
    NonPositiveStart,
    SingularIntegrand,
    ZeroDelta,
)
from .models import (
    ExpRateTime,
    Exponential,
    GrowthModel,
    Hyperbolic,
    HyperbolicRateTime,
    LinearRateSize,
    LinearRateTime,
    LogWrapped,
    PolyRateTime,
    to_record,
)

GUARD = 0.05  # fraction of the run-up to a blow-up that stays off limits


@dataclass(frozen=True)
class OdeReport:
    """Outcome of one closed-form-vs-integrator comparison."""

    model: str
    grid_size: int
    step: float
    max_rel_error: float


@dataclass(frozen=True)
class QuadReport:
    """Outcome of one partial-fraction identity check."""

    value: float        # closed-form right-hand side
    quadrature: float   # composite-Simpson left-hand side
    residual: float
    panels: int
    width: float        # panel width


def rate_field(m: GrowthModel) -> Callable[[float, float], float]:
    """f(t, S) with (1/S) dS/dt = f, rebuilt from parameters only.

    Size-dependent laws read the integrated S, not the closed form, so the
    integration route stays independent of the models' own evaluators.
    """
    if isinstance(m, Exponential):
        r = m.r
        return lambda t, s: r
    if isinstance(m, LinearRateTime):
        a, b = m.a, m.b
        return lambda t, s: a + b * t
    if isinstance(m, PolyRateTime):
        coeffs = m.coeffs

        def poly(t: float, s: float) -> float:
            total = 0.0
            for c in reversed(coeffs):
                total = total * t + c
            return total

        return poly
    if isinstance(m, Hyperbolic):
        b = m.b
        return lambda t, s: b * s
    if isinstance(m, LinearRateSize):
        a, b = m.a, m.b
        return lambda t, s: a + b * s
    if isinstance(m, HyperbolicRateTime):
        a, b = m.a, m.b
        return lambda t, s: 1.0 / (a + b * t)
    if isinstance(m, ExpRateTime):
        a, b = m.a, m.b
        return lambda t, s: math.exp(a + b * t)
    if isinstance(m, LogWrapped):
        inner = rate_field(m.inner)

        def wrapped(t: float, s: float) -> float:
            f = math.log(s)
            return inner(t, f) * f

        return wrapped
    raise InvalidParameter(f"no rate field for {type(m).__name__}", module="oracle")


def blowup_time(m: GrowthModel, t0: float, S0: float) -> float | None:
    """Finite-time blow-up ahead of t0 for the trajectory through (t0, S0),
    derived from parameters only; None when the trajectory stays finite."""
    if isinstance(m, Hyperbolic):
        if m.b > 0:
            return t0 + 1.0 / (m.b * S0)
        return None
    if isinstance(m, LinearRateSize):
        if m.b > 0 and m.a + m.b * S0 > 0:
            return t0 + math.log((m.a + m.b * S0) / (m.b * S0)) / m.a
        return None
    if isinstance(m, HyperbolicRateTime):
        pole = -m.a / m.b
        return pole if pole > t0 else None
    if isinstance(m, LogWrapped):
        return blowup_time(m.inner, t0, math.log(S0))
    return None


def integrate_rate_ode(
    m: GrowthModel,
    t0: float,
    S0: float,
    grid,
    steps_per_interval: int = 100,
) -> np.ndarray:
    """Integrate dS/dt = S * f(t, S) from (t0, S0) with classic fixed-step
    RK4, returning S at every grid point (grid must start at t0)."""
    if S0 <= 0:
        raise NonPositiveStart(f"start value must be positive, got {S0!r}")
    if steps_per_interval < 1:
        raise InvalidParameter(
            f"steps_per_interval must be >= 1, got {steps_per_interval!r}",
            module="oracle",
        )
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainViolation("integration grid has no points")
    if grid[0] != t0:
        raise DomainViolation(
            f"grid must start at t0={t0!r}, got {float(grid[0])!r}"
        )
    if grid.size > 1 and np.any(np.diff(grid) <= 0):
        raise DomainViolation("integration grid must be strictly increasing")

    t_blow = blowup_time(m, t0, S0)
    if t_blow is not None:
        limit = t_blow - GUARD * (t_blow - t0)
        if float(grid[-1]) > limit:
            raise DomainViolation(
                f"grid reaches {float(grid[-1])!r}, inside the {GUARD:.0%} guard "
                f"band before the blow-up at t={t_blow!r} (limit {limit!r})"
            )

    f = rate_field(m)
    out = np.empty(grid.size, dtype=float)
    out[0] = S0
    s = S0
    for i in range(grid.size - 1):
        t = float(grid[i])
        h = (float(grid[i + 1]) - t) / steps_per_interval
        for _ in range(steps_per_interval):
            k1 = s * f(t, s)
            k2 = (s + 0.5 * h * k1) * f(t + 0.5 * h, s + 0.5 * h * k1)
            k3 = (s + 0.5 * h * k2) * f(t + 0.5 * h, s + 0.5 * h * k2)
            k4 = (s + h * k3) * f(t + h, s + h * k3)
            s = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t += h
        out[i + 1] = s
    return out


def check_partial_fraction(
    a: float,
    b: float,
    c: float,
    e: float,
    x0: float,
    x1: float,
    panels: int = 256,
) -> QuadReport:
    """Compare composite-Simpson quadrature of 1/((a+bx)(c+ex)) over [x0, x1]
    against the closed-form antiderivative (1/D) ln((a+bx)/(c+ex))."""
    if panels < 1:
        raise InvalidParameter(
            f"panels must be >= 1, got {panels!r}", module="oracle"
        )
    if x1 <= x0:
        raise InvalidParameter(
            f"need x0 < x1, got [{x0!r}, {x1!r}]", module="oracle"
        )
    delta = c * b - a * e
    if delta == 0.0:
        raise ZeroDelta(
            "cb - ae = 0: the two factors are proportional and the "
            "partial-fraction form degenerates"
        )
    for p, q in ((a, b), (c, e)):
        if q == 0.0:
            if p == 0.0:
                raise SingularIntegrand("a factor is identically zero")
            continue
        root = -p / q
        if x0 <= root <= x1:
            raise SingularIntegrand(
                f"factor vanishes at x={root!r}, inside [{x0!r}, {x1!r}]"
            )

    def integrand(x: float) -> float:
        return 1.0 / ((a + b * x) * (c + e * x))

    width = (x1 - x0) / panels
    total = 0.0
    for i in range(panels):
        left = x0 + i * width
        right = x0 + (i + 1) * width
        mid = 0.5 * (left + right)
        total += (right - left) / 6.0 * (
            integrand(left) + 4.0 * integrand(mid) + integrand(right)
        )

    def antiderivative(x: float) -> float:
        return math.log(abs((a + b * x) / (c + e * x))) / delta

    value = antiderivative(x1) - antiderivative(x0)
    return QuadReport(
        value=value,
        quadrature=total,
        residual=abs(total - value),
        panels=panels,
        width=width,
    )


# --- the standing catalog of anchored sample models ----------------------

@dataclass(frozen=True)
class CatalogEntry:
    tag: str
    model: GrowthModel
    grid: np.ndarray


def _guarded_grid(start: float, t_blow: float, points: int = 200) -> np.ndarray:
    # stop at 94% of the run-up: safely inside the 5% guard band
    return np.linspace(start, start + 0.94 * (t_blow - start), points)


def _build_catalog() -> tuple:
    entries = []

    m = Exponential(r=0.025).normalized(2000.0, 1.0)
    entries.append(CatalogEntry("exponential", m, np.linspace(2000.0, 2040.0, 200)))

    m = LinearRateTime(a=0.3895, b=-1.805e-4).normalized(2000.0, 1.0)
    entries.append(
        CatalogEntry("linear_rate_time", m, np.linspace(2000.0, 2200.0, 200))
    )

    m = PolyRateTime(coeffs=(0.0, 0.0, 3.0)).normalized(0.0, 1.0)
    entries.append(CatalogEntry("poly_rate_time", m, np.linspace(0.0, 2.0, 200)))

    m = Hyperbolic(b=2.155e-3, C=4.376)
    t_blow = m.diagnostics().singularity_time
    entries.append(CatalogEntry("hyperbolic", m, _guarded_grid(2000.0, t_blow)))

    m = LinearRateSize(a=4.475e-2, b=2.155e-3, C=1.437e38)
    t_blow = m.diagnostics().singularity_time
    entries.append(
        CatalogEntry("linear_rate_size", m, _guarded_grid(2000.0, t_blow))
    )

    m = HyperbolicRateTime(a=5.0, b=-0.5).normalized(0.0, 1.0)
    entries.append(
        CatalogEntry("hyperbolic_rate_time", m, _guarded_grid(0.0, 10.0))
    )

    m = ExpRateTime(a=-23.0, b=0.01).normalized(2000.0, 1.0)
    entries.append(
        CatalogEntry("exp_rate_time", m, np.linspace(2000.0, 2050.0, 200))
    )

    m = LogWrapped(LinearRateTime(a=0.02, b=-4e-6)).normalized(
        2000.0, math.exp(2.0)
    )
    entries.append(
        CatalogEntry("log_linear_rate_time", m, np.linspace(2000.0, 2100.0, 200))
    )

    return tuple(entries)


SAMPLE_MODELS: tuple = _build_catalog()


# Standing partial-fraction cases: (a, b, c, e, x0, x1). The first has
# closed form ln(3/2), the second (1/2) ln(10/7).
PARTIAL_FRACTION_CASES: tuple = (
    (1.0, 1.0, 1.0, 2.0, 0.0, 1.0),
    (2.0, 3.0, 0.0, 1.0, 1.0, 4.0),
)


def convergence_pair(
    r: float = 1.0, t_end: float = 5.0, points: int = 201
) -> tuple[OdeReport, OdeReport]:
    """Integrate a unit-anchored constant-rate model at step h and h/2.

    Deliberately coarse (one and two substeps per interval) so the error sits
    far above the floating-point floor: a fourth-order method must shrink it
    by at least 8x when the step halves.
    """
    m = Exponential(r=r).normalized(0.0, 1.0)
    grid = np.linspace(0.0, t_end, points)
    exact = np.array([m.evaluate(float(t)) for t in grid])
    reports = []
    for substeps, tag in ((1, "exponential_h"), (2, "exponential_h_half")):
        numeric = integrate_rate_ode(m, 0.0, 1.0, grid, substeps)
        rel = float(np.max(np.abs(numeric - exact) / np.abs(exact)))
        step = float(np.max(np.diff(grid))) / substeps
        reports.append(
            OdeReport(
                model=tag, grid_size=points, step=step, max_rel_error=rel
            )
        )
    return reports[0], reports[1]


def catalog_reports(steps_per_interval: int = 100) -> list[OdeReport]:
    """Run every catalog entry through the integrator and report the worst
    relative disagreement with the closed form on its grid."""
    reports = []
    for entry in SAMPLE_MODELS:
        grid = entry.grid
        t0 = float(grid[0])
        s0 = entry.model.evaluate(t0)
        numeric = integrate_rate_ode(
            entry.model, t0, s0, grid, steps_per_interval
        )
        exact = np.array([entry.model.evaluate(float(t)) for t in grid])
        rel = np.max(np.abs(numeric - exact) / np.abs(exact))
        step = float(np.max(np.diff(grid))) / steps_per_interval
        reports.append(
            OdeReport(
                model=to_record(entry.model)["kind"],
                grid_size=int(grid.size),
                step=step,
                max_rel_error=float(rel),
            )
        )
    return reports
