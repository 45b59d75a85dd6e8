"""Growth-rate estimation, rate-driven growth models, and projections.

The workflow mirrors how one actually studies a growing quantity:

1. estimate its relative growth rate over time (``rates``),
2. fit a straight line to the rate in whichever space makes the candidate
   model linear (``fitting``),
3. turn the line into a closed-form model and project it, watching for
   finite-time singularities, rate extrema, and ceilings (``models``,
   ``forecast``),
4. cross-check every closed form against an independent integrator
   (``oracle``).
"""

from .errors import GrowthError
from .fitting import (
    FitResult,
    FitWindow,
    LineFit,
    SPACES,
    fit_exponential,
    fit_hyperbolic,
    fit_line,
    fit_log_rate,
    fit_rate_size,
    fit_rate_time,
    fit_reciprocal_rate,
)
from .forecast import Comparison, Projection, compare, project
from .models import (
    ExpRateTime,
    Exponential,
    Extremum,
    GrowthModel,
    Hyperbolic,
    HyperbolicRateTime,
    LinearRateSize,
    LinearRateTime,
    LogWrapped,
    ModelDiagnostics,
    PolyRateTime,
    diagnostics,
    evaluate,
    log_wrap,
    model_from_record,
    normalize,
    poly_rate_solution,
    rate_at,
    to_record,
)
from .oracle import (
    OdeReport,
    QuadReport,
    SAMPLE_MODELS,
    catalog_reports,
    check_partial_fraction,
    convergence_pair,
    integrate_rate_ode,
)
from .rates import (
    RateSeries,
    SmootherConfig,
    direct_rates,
    smoothed_rates,
    transform_rates,
)
from .series import PointSeries, TimeSeries, TransformKind, make_series, transform_series

__version__ = "0.1.0"

__all__ = [
    "GrowthError",
    "PointSeries",
    "TimeSeries",
    "TransformKind",
    "make_series",
    "transform_series",
    "RateSeries",
    "SmootherConfig",
    "direct_rates",
    "smoothed_rates",
    "transform_rates",
    "GrowthModel",
    "Exponential",
    "LinearRateTime",
    "PolyRateTime",
    "Hyperbolic",
    "LinearRateSize",
    "HyperbolicRateTime",
    "ExpRateTime",
    "LogWrapped",
    "Extremum",
    "ModelDiagnostics",
    "evaluate",
    "rate_at",
    "normalize",
    "diagnostics",
    "poly_rate_solution",
    "log_wrap",
    "to_record",
    "model_from_record",
    "FitWindow",
    "LineFit",
    "FitResult",
    "SPACES",
    "fit_line",
    "fit_rate_time",
    "fit_rate_size",
    "fit_reciprocal_rate",
    "fit_log_rate",
    "fit_exponential",
    "fit_hyperbolic",
    "Projection",
    "Comparison",
    "project",
    "compare",
    "OdeReport",
    "QuadReport",
    "SAMPLE_MODELS",
    "integrate_rate_ode",
    "check_partial_fraction",
    "catalog_reports",
    "convergence_pair",
    "__version__",
]
