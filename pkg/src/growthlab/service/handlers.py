"""Pure request -> response functions behind the HTTP routes.

Everything here is plain Python in, plain pydantic out — no I/O — so the
CLI can call these handlers in-process and produce byte-identical output
to a round trip through the HTTP service.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import InvalidParameter
from ..fitting import (
    FitResult,
    FitWindow,
    LOG_RATE_VS_TIME,
    LOG_SIZE_VS_TIME,
    RATE_VS_SIZE,
    RATE_VS_TIME,
    RECIPROCAL_RATE_VS_TIME,
    RECIPROCAL_SIZE_VS_TIME,
    fit_exponential,
    fit_hyperbolic,
    fit_log_rate,
    fit_rate_size,
    fit_rate_time,
    fit_reciprocal_rate,
)
from ..forecast import VALID, Projection, compare, project
from ..models import Exponential, GrowthModel, model_from_record, normalize, to_record
from ..oracle import (
    PARTIAL_FRACTION_CASES,
    catalog_reports,
    check_partial_fraction,
    convergence_pair,
)
from ..rates import SmootherConfig, direct_rates, smoothed_rates
from ..series import TimeSeries, make_series
from . import schemas


def _series(payload: schemas.SeriesPayload) -> TimeSeries:
    return make_series(payload.times, payload.values)


def _window(payload: schemas.WindowPayload | None) -> FitWindow | None:
    if payload is None:
        return None
    return FitWindow(payload.t_start, payload.t_end)


def _cfg(payload: schemas.SmootherPayload) -> SmootherConfig:
    return SmootherConfig(window=payload.window, degree=payload.degree)


def build_grid(payload: schemas.GridPayload) -> np.ndarray:
    if payload.step <= 0:
        raise InvalidParameter(
            f"grid step must be positive, got {payload.step!r}", module="forecast"
        )
    if payload.end < payload.start:
        raise InvalidParameter(
            f"grid end {payload.end!r} is before start {payload.start!r}",
            module="forecast",
        )
    count = int(math.floor((payload.end - payload.start) / payload.step + 1e-9)) + 1
    return payload.start + payload.step * np.arange(count)


_RATE_SPACE_FITS = {
    RATE_VS_TIME: fit_rate_time,
    RATE_VS_SIZE: fit_rate_size,
    RECIPROCAL_RATE_VS_TIME: fit_reciprocal_rate,
    LOG_RATE_VS_TIME: fit_log_rate,
}


def fit_in_space(
    ts: TimeSeries,
    space: str,
    window: FitWindow | None,
    cfg: SmootherConfig,
) -> FitResult:
    """Fit the model family matching the chosen linearizing space."""
    if space in _RATE_SPACE_FITS:
        rs = smoothed_rates(ts, cfg)
        return _RATE_SPACE_FITS[space](rs, window)
    if space == LOG_SIZE_VS_TIME:
        return fit_exponential(ts, window)
    if space == RECIPROCAL_SIZE_VS_TIME:
        return fit_hyperbolic(ts, window)
    raise InvalidParameter(f"unknown fitting space {space!r}", module="fitting")


def _diagnostics_payload(m: GrowthModel) -> schemas.DiagnosticsPayload:
    diag = m.diagnostics()
    extremum = None
    if diag.extremum is not None:
        extremum = schemas.ExtremumPayload(
            time=diag.extremum.time, size=diag.extremum.size
        )
    return schemas.DiagnosticsPayload(
        singularity_time=diag.singularity_time,
        extremum=extremum,
        size_limit=diag.size_limit,
        reciprocal_limit=diag.reciprocal_limit,
    )


def handle_rates(req: schemas.RatesRequest) -> schemas.RatesResponse:
    ts = _series(req.series)
    direct = direct_rates(ts)
    smooth = smoothed_rates(ts, _cfg(req.smoother))
    rows = []
    for i in range(len(ts)):
        rows.append(
            schemas.RateRow(
                year=float(ts.times[i]),
                direct_rate=float(direct.rates[i - 1]) if i > 0 else None,
                smoothed_rate=float(smooth.rates[i]),
            )
        )
    return schemas.RatesResponse(rows=rows)


def _anchor_point(
    anchor: schemas.AnchorPayload | None, ts: TimeSeries | None
) -> tuple[float, float] | None:
    if anchor is not None:
        return (anchor.year, anchor.value)
    if ts is not None:
        return (float(ts.times[-1]), float(ts.values[-1]))
    return None


def _line_payload(line) -> schemas.LinePayload:
    return schemas.LinePayload(a=line.a, b=line.b, rss=line.rss, n=line.n)


def handle_fit(req: schemas.FitRequest) -> schemas.FitResponse:
    ts = _series(req.series)
    result = fit_in_space(ts, req.space, _window(req.window), _cfg(req.smoother))
    model = result.model
    if model.C is None or req.anchor is not None:
        t0, s0 = _anchor_point(req.anchor, ts)
        model = normalize(model, t0, s0)
    record = to_record(model)
    return schemas.FitResponse(
        kind=record["kind"],
        parameters=record["parameters"],
        line=_line_payload(result.line),
        window=schemas.WindowPayload(
            t_start=result.window.t_start, t_end=result.window.t_end
        ),
        space=result.space,
        diagnostics=_diagnostics_payload(model),
        origin_line=(
            _line_payload(result.origin_line)
            if result.origin_line is not None
            else None
        ),
        intercept_stderr=result.intercept_stderr,
    )


def _resolve_record(
    record: schemas.ModelRecord, anchor: tuple[float, float] | None
) -> GrowthModel:
    model = model_from_record(record.model_dump())
    if model.C is None and anchor is not None:
        model = normalize(model, *anchor)
    return model


def _fitted_model(req: schemas.ProjectRequest, ts: TimeSeries) -> GrowthModel:
    result = fit_in_space(ts, req.space, _window(req.window), _cfg(req.smoother))
    model = result.model
    if model.C is None or req.anchor is not None:
        t0, s0 = _anchor_point(req.anchor, ts)
        model = normalize(model, t0, s0)
    return model


def _scenario_model(
    rate: float, anchor: tuple[float, float] | None
) -> GrowthModel:
    if anchor is None:
        raise InvalidParameter(
            "a scenario rate needs an anchor point (explicit, or taken from "
            "a series)",
            module="forecast",
        )
    return normalize(Exponential(r=rate), *anchor)


def resolve_single(req: schemas.ProjectRequest) -> GrowthModel:
    """One model for a plain projection: an explicit record wins, then an
    explicit scenario rate, then a fit to the supplied series."""
    ts = _series(req.series) if req.series is not None else None
    anchor = _anchor_point(req.anchor, ts)
    if req.model is not None:
        return _resolve_record(req.model, anchor)
    if req.scenario_rate is not None:
        return _scenario_model(req.scenario_rate, anchor)
    if ts is not None:
        return _fitted_model(req, ts)
    raise InvalidParameter(
        "nothing to project: provide a model record, a scenario rate, or a "
        "series to fit",
        module="forecast",
    )


def resolve_many(req: schemas.CompareRequest) -> list[GrowthModel]:
    """Models for a comparison. Explicit records win; otherwise the fitted
    model (if a series is given) and the scenario (if a rate is given) sit
    side by side, fitted first."""
    ts = _series(req.series) if req.series is not None else None
    anchor = _anchor_point(req.anchor, ts)
    records = req.models
    if records is None and req.model is not None:
        records = [req.model]
    if records:
        return [_resolve_record(r, anchor) for r in records]
    models: list[GrowthModel] = []
    if ts is not None:
        models.append(_fitted_model(req, ts))
    if req.scenario_rate is not None:
        models.append(_scenario_model(req.scenario_rate, anchor))
    if not models:
        raise InvalidParameter(
            "nothing to compare: provide model records, a series to fit, "
            "or a scenario rate",
            module="forecast",
        )
    return models


def _projection_payload(proj: Projection) -> schemas.ProjectionPayload:
    record = to_record(proj.model)
    rows = [
        schemas.ProjectionRow(
            year=float(t),
            value=proj.values[i] if proj.flags[i] == VALID else None,
            flag=proj.flags[i],
        )
        for i, t in enumerate(proj.grid)
    ]
    diag = proj.diagnostics
    extremum = None
    if diag.extremum is not None:
        extremum = schemas.ExtremumPayload(
            time=diag.extremum.time, size=diag.extremum.size
        )
    return schemas.ProjectionPayload(
        kind=record["kind"],
        parameters=record["parameters"],
        diagnostics=schemas.DiagnosticsPayload(
            singularity_time=diag.singularity_time,
            extremum=extremum,
            size_limit=diag.size_limit,
            reciprocal_limit=diag.reciprocal_limit,
        ),
        rows=rows,
    )


def handle_project(req: schemas.ProjectRequest) -> schemas.ProjectResponse:
    model = resolve_single(req)
    grid = build_grid(req.grid)
    proj = project(model, grid, req.guard_fraction)
    return schemas.ProjectResponse(results=[_projection_payload(proj)])


def handle_compare(req: schemas.CompareRequest) -> schemas.CompareResponse:
    models = resolve_many(req)
    grid = build_grid(req.grid)
    comp = compare(models, grid, req.guard_fraction)
    return schemas.CompareResponse(
        results=[_projection_payload(p) for p in comp.projections]
    )


def handle_verify() -> schemas.VerifyResponse:
    rows = []
    for rep in catalog_reports():
        rows.append(
            schemas.VerifyRow(
                model=rep.model,
                grid_size=rep.grid_size,
                step_size=rep.step,
                max_rel_error=rep.max_rel_error,
            )
        )
    for rep in convergence_pair():
        rows.append(
            schemas.VerifyRow(
                model=rep.model,
                grid_size=rep.grid_size,
                step_size=rep.step,
                max_rel_error=rep.max_rel_error,
            )
        )
    for i, case in enumerate(PARTIAL_FRACTION_CASES):
        report = check_partial_fraction(*case)
        rows.append(
            schemas.VerifyRow(
                model=f"partial_fraction_{i + 1}",
                grid_size=report.panels,
                step_size=report.width,
                max_rel_error=report.residual,
            )
        )
    return schemas.VerifyResponse(rows=rows)
