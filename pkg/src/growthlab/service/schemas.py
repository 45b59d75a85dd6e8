"""Request/response models for the HTTP service.

These mirror the core dataclasses closely; handlers translate between the
two so the core package never imports pydantic.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

SpaceName = Literal[
    "rate-vs-time",
    "rate-vs-size",
    "reciprocal-rate-vs-time",
    "log-rate-vs-time",
    "log-size-vs-time",
    "reciprocal-size-vs-time",
]


class SeriesPayload(BaseModel):
    times: list[float]
    values: list[float]


class SmootherPayload(BaseModel):
    window: int = 5
    degree: int = 2


class WindowPayload(BaseModel):
    t_start: float
    t_end: float


class AnchorPayload(BaseModel):
    year: float
    value: float


class GridPayload(BaseModel):
    start: float
    end: float
    step: float = 1.0


class ModelRecord(BaseModel):
    kind: str
    parameters: dict[str, float] = Field(default_factory=dict)


class RatesRequest(BaseModel):
    series: SeriesPayload
    smoother: SmootherPayload = Field(default_factory=SmootherPayload)
    # placeholder for future transformed-variable rates; only the identity
    # transform is served over HTTP today
    transform: Literal["identity"] = "identity"


class RateRow(BaseModel):
    year: float
    direct_rate: Optional[float] = None
    smoothed_rate: float


class RatesResponse(BaseModel):
    rows: list[RateRow]


class LinePayload(BaseModel):
    a: float
    b: float
    rss: float
    n: int


class ExtremumPayload(BaseModel):
    time: float
    size: Optional[float] = None


class DiagnosticsPayload(BaseModel):
    singularity_time: Optional[float] = None
    extremum: Optional[ExtremumPayload] = None
    size_limit: Optional[float] = None
    reciprocal_limit: Optional[float] = None


class FitRequest(BaseModel):
    series: SeriesPayload
    space: SpaceName = "rate-vs-time"
    window: Optional[WindowPayload] = None
    smoother: SmootherPayload = Field(default_factory=SmootherPayload)
    anchor: Optional[AnchorPayload] = None


class FitResponse(BaseModel):
    kind: str
    parameters: dict[str, float]
    line: LinePayload
    window: WindowPayload
    space: SpaceName
    diagnostics: DiagnosticsPayload
    origin_line: Optional[LinePayload] = None
    intercept_stderr: Optional[float] = None


class ProjectRequest(BaseModel):
    grid: GridPayload
    series: Optional[SeriesPayload] = None
    model: Optional[ModelRecord] = None
    scenario_rate: Optional[float] = None
    space: SpaceName = "rate-vs-time"
    window: Optional[WindowPayload] = None
    smoother: SmootherPayload = Field(default_factory=SmootherPayload)
    anchor: Optional[AnchorPayload] = None
    guard_fraction: float = 0.001


class ProjectionRow(BaseModel):
    year: float
    value: Optional[float] = None
    flag: str


class ProjectionPayload(BaseModel):
    kind: str
    parameters: dict[str, float]
    diagnostics: DiagnosticsPayload
    rows: list[ProjectionRow]


class ProjectResponse(BaseModel):
    results: list[ProjectionPayload]


class CompareRequest(ProjectRequest):
    models: Optional[list[ModelRecord]] = None


class CompareResponse(BaseModel):
    results: list[ProjectionPayload]


class VerifyRow(BaseModel):
    model: str
    grid_size: int
    step_size: float
    max_rel_error: float


class VerifyResponse(BaseModel):
    rows: list[VerifyRow]
