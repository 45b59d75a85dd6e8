"""Closed-form growth models driven by simple rate laws.

Each model is the analytic solution of (1/S) dS/dt = f with f one of:
a constant, a line in t, a polynomial in t, a line in S, a reciprocal line
in t, or an exponential in t. A log-wrapped variant applies any of these
laws to F = ln S instead of S itself, so that S = exp(F).

Parameters are stored in the absolute calendar-year convention: evaluating
at t = 2014.0 means the year 2014, and normalization constants can end up
enormous (e.g. ~1e38) — that is expected and well within double range.
Re-anchoring times is an internal trick callers may use; nothing here does
it silently.

All models are immutable value objects; a model built by a fit has C unset
(None) until :func:`normalize` anchors it to a datum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar, Union

from .errors import (
    InvalidParameter,
    NonPositiveAnchor,
    OutsideDomain,
    Overflow,
    UnnormalizedModel,
    UnreachableAnchor,
)


# --- scalar helpers -----------------------------------------------------

def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        raise Overflow(f"exp({x!r}) exceeds double-precision range") from None


def _pow(base: float, exponent: float) -> float:
    try:
        return math.pow(base, exponent)
    except OverflowError:
        raise Overflow(
            f"{base!r} ** {exponent!r} exceeds double-precision range"
        ) from None


def _finite(value: float, context: str) -> float:
    if math.isinf(value):
        raise Overflow(f"{context} exceeds double-precision range")
    return value


def _require_scale(model) -> float:
    if model.C is None:
        raise UnnormalizedModel(
            f"{model.kind} has no scale C yet; normalize it to a datum first"
        )
    return model.C


@dataclass(frozen=True)
class Extremum:
    """Location of a trajectory maximum; size is None until C is known."""

    time: float
    size: float | None = None


@dataclass(frozen=True)
class ModelDiagnostics:
    """Structural facts about a model: at most one of singularity_time /
    size_limit can be present for a given instance."""

    singularity_time: float | None = None
    extremum: Extremum | None = None
    size_limit: float | None = None
    reciprocal_limit: float | None = None


# --- the catalog --------------------------------------------------------

@dataclass(frozen=True)
class Exponential:
    """S = C e^{rt}: constant growth rate r."""

    r: float
    C: float | None = None

    kind: ClassVar[str] = "exponential"

    def __post_init__(self):
        if self.C is not None and self.C <= 0:
            raise InvalidParameter(f"exponential requires C > 0, got {self.C!r}")

    def parameters(self) -> dict[str, float]:
        params = {"r": self.r}
        if self.C is not None:
            params["C"] = self.C
        return params

    def evaluate(self, t: float) -> float:
        C = _require_scale(self)
        return _finite(C * _exp(self.r * t), f"S({t})")

    def rate_at(self, t: float) -> float:
        return self.r

    def normalized(self, t0: float, S0: float) -> "Exponential":
        return Exponential(self.r, S0 / _exp(self.r * t0))

    def diagnostics(self) -> ModelDiagnostics:
        return ModelDiagnostics()


@dataclass(frozen=True)
class LinearRateTime:
    """S = C exp(at + 0.5bt^2): rate declines (or grows) linearly in time.

    For b < 0 the trajectory peaks where the rate crosses zero, t = a/|b|.
    """

    a: float
    b: float
    C: float | None = None

    kind: ClassVar[str] = "linear_rate_time"

    def parameters(self) -> dict[str, float]:
        params = {"a": self.a, "b": self.b}
        if self.C is not None:
            params["C"] = self.C
        return params

    def _shape(self, t: float) -> float:
        return _exp(self.a * t + 0.5 * self.b * t * t)

    def evaluate(self, t: float) -> float:
        C = _require_scale(self)
        return _finite(C * self._shape(t), f"S({t})")

    def rate_at(self, t: float) -> float:
        return self.a + self.b * t

    def normalized(self, t0: float, S0: float) -> "LinearRateTime":
        return LinearRateTime(self.a, self.b, S0 / self._shape(t0))

    def diagnostics(self) -> ModelDiagnostics:
        if self.b >= 0:
            return ModelDiagnostics()
        peak_time = self.a / abs(self.b)
        size = None
        if self.C is not None:
            try:
                size = self.evaluate(peak_time)
            except (Overflow, OutsideDomain):
                size = None
        return ModelDiagnostics(extremum=Extremum(peak_time, size))


@dataclass(frozen=True)
class PolyRateTime:
    """S = C exp(P(t)) where P is the antiderivative of the rate polynomial.

    ``coeffs`` are ascending: coeffs[k] multiplies t^k in the rate. Degree 0
    reduces to the exponential model, degree 1 to the linear-rate model.
    """

    coeffs: tuple[float, ...]
    C: float | None = None

    kind: ClassVar[str] = "poly_rate_time"

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise InvalidParameter("rate polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def parameters(self) -> dict[str, float]:
        params = {f"c{i}": c for i, c in enumerate(self.coeffs)}
        if self.C is not None:
            params["C"] = self.C
        return params

    def _antiderivative(self, t: float) -> float:
        total = 0.0
        for k in reversed(range(len(self.coeffs))):
            total = total * t + self.coeffs[k] / (k + 1)
        return total * t

    def evaluate(self, t: float) -> float:
        C = _require_scale(self)
        return _finite(C * _exp(self._antiderivative(t)), f"S({t})")

    def rate_at(self, t: float) -> float:
        total = 0.0
        for c in reversed(self.coeffs):
            total = total * t + c
        return total

    def normalized(self, t0: float, S0: float) -> "PolyRateTime":
        return PolyRateTime(self.coeffs, S0 / _exp(self._antiderivative(t0)))

    def diagnostics(self) -> ModelDiagnostics:
        return ModelDiagnostics()


@dataclass(frozen=True)
class Hyperbolic:
    """S = 1/(C - bt): first-order hyperbolic growth, rate proportional to S.

    For b > 0 the reciprocal 1/S falls linearly and hits zero at t_s = C/b,
    where the trajectory escapes to infinity; evaluation stops there.
    """

    b: float
    C: float | None = None

    kind: ClassVar[str] = "hyperbolic"

    def parameters(self) -> dict[str, float]:
        params = {"b": self.b}
        if self.C is not None:
            params["C"] = self.C
        return params

    def evaluate(self, t: float) -> float:
        C = _require_scale(self)
        denominator = C - self.b * t
        if denominator <= 0:
            if self.b > 0:
                raise OutsideDomain(
                    f"t={t!r} is at or beyond the singularity at t={C / self.b!r}"
                )
            raise OutsideDomain(f"t={t!r} is outside the model's domain (1/S <= 0)")
        return 1.0 / denominator

    def rate_at(self, t: float) -> float:
        return self.b * self.evaluate(t)

    def normalized(self, t0: float, S0: float) -> "Hyperbolic":
        return Hyperbolic(self.b, 1.0 / S0 + self.b * t0)

    def diagnostics(self) -> ModelDiagnostics:
        if self.b > 0 and self.C is not None:
            return ModelDiagnostics(singularity_time=self.C / self.b)
        return ModelDiagnostics()


@dataclass(frozen=True)
class LinearRateSize:
    """S = [C e^{-at} - b/a]^{-1}: rate linear in size, a + bS.

    b > 0 is the pseudo-hyperbolic branch: it escapes to infinity at a
    finite time, but its reciprocal is an exponential plus a constant (with
    limit -b/a) rather than a straight line. b < 0 is logistic growth with
    ceiling a/|b|. b = 0 collapses to plain exponential growth at rate a.
    """

    a: float
    b: float
    C: float | None = None

    kind: ClassVar[str] = "linear_rate_size"

    def __post_init__(self):
        if self.a == 0:
            raise InvalidParameter("linear_rate_size requires a != 0")

    def parameters(self) -> dict[str, float]:
        params = {"a": self.a, "b": self.b}
        if self.C is not None:
            params["C"] = self.C
        return params

    def evaluate(self, t: float) -> float:
        C = _require_scale(self)
        denominator = _finite(C * _exp(-self.a * t), "1/S") - self.b / self.a
        if denominator <= 0:
            raise OutsideDomain(
                f"t={t!r} is at or beyond the trajectory's domain (1/S <= 0)"
            )
        return 1.0 / denominator

    def rate_at(self, t: float) -> float:
        return self.a + self.b * self.evaluate(t)

    def normalized(self, t0: float, S0: float) -> "LinearRateSize":
        if self.b < 0 and self.a > 0:
            ceiling = self.a / abs(self.b)
            if S0 >= ceiling:
                raise UnreachableAnchor(
                    f"anchor S0={S0!r} is at or above the ceiling a/|b|={ceiling!r}; "
                    "the logistic trajectory never reaches it"
                )
        C = (self.a + self.b * S0) / (S0 * self.a * _exp(-self.a * t0))
        return LinearRateSize(self.a, self.b, _finite(C, "C"))

    def diagnostics(self) -> ModelDiagnostics:
        if self.b > 0:
            singularity = None
            if self.C is not None:
                ratio = self.b / (self.a * self.C)
                if ratio > 0:
                    singularity = -math.log(ratio) / self.a
            return ModelDiagnostics(
                singularity_time=singularity,
                reciprocal_limit=-self.b / self.a,
            )
        if self.b < 0:
            return ModelDiagnostics(size_limit=self.a / abs(self.b))
        return ModelDiagnostics()


@dataclass(frozen=True)
class HyperbolicRateTime:
    """S = C (a + bt)^{1/b}: the rate itself is hyperbolic in time, 1/(a+bt).

    b = 0 would make the exponent undefined; that limit is the exponential
    model and is rejected here. The domain requires a + bt > 0.
    """

    a: float
    b: float
    C: float | None = None

    kind: ClassVar[str] = "hyperbolic_rate_time"

    def __post_init__(self):
        if self.b == 0:
            raise InvalidParameter(
                "hyperbolic_rate_time requires b != 0; a constant reciprocal "
                "rate is the exponential model"
            )

    def parameters(self) -> dict[str, float]:
        params = {"a": self.a, "b": self.b}
        if self.C is not None:
            params["C"] = self.C
        return params

    def _base(self, t: float) -> float:
        base = self.a + self.b * t
        if base <= 0:
            raise OutsideDomain(
                f"t={t!r} is outside the domain: a + bt must stay positive "
                f"(boundary at t={-self.a / self.b!r})"
            )
        return base

    def evaluate(self, t: float) -> float:
        C = _require_scale(self)
        return _finite(C * _pow(self._base(t), 1.0 / self.b), f"S({t})")

    def rate_at(self, t: float) -> float:
        return 1.0 / self._base(t)

    def normalized(self, t0: float, S0: float) -> "HyperbolicRateTime":
        shape = _pow(self._base(t0), 1.0 / self.b)
        return HyperbolicRateTime(self.a, self.b, S0 / shape)

    def diagnostics(self) -> ModelDiagnostics:
        return ModelDiagnostics()


@dataclass(frozen=True)
class ExpRateTime:
    """S = C exp[(e^a/b) e^{bt}]: log of the rate is a straight line, a + bt.

    b = 0 means a constant rate e^a; the closed form divides by b, so that
    case reduces analytically to S = C exp(e^a t).
    """

    a: float
    b: float
    C: float | None = None

    kind: ClassVar[str] = "exp_rate_time"

    def parameters(self) -> dict[str, float]:
        params = {"a": self.a, "b": self.b}
        if self.C is not None:
            params["C"] = self.C
        return params

    def _exponent(self, t: float) -> float:
        if self.b == 0:
            return _finite(_exp(self.a) * t, "exponent")
        return _finite(_exp(self.a) / self.b * _exp(self.b * t), "exponent")

    def evaluate(self, t: float) -> float:
        C = _require_scale(self)
        return _finite(C * _exp(self._exponent(t)), f"S({t})")

    def rate_at(self, t: float) -> float:
        return _exp(self.a + self.b * t)

    def normalized(self, t0: float, S0: float) -> "ExpRateTime":
        return ExpRateTime(self.a, self.b, S0 / _exp(self._exponent(t0)))

    def diagnostics(self) -> ModelDiagnostics:
        return ModelDiagnostics()


@dataclass(frozen=True)
class LogWrapped:
    """The inner model describes F = ln S, so S = exp(inner value).

    The rate of S follows from the chain rule: (1/S) dS/dt = F' = (rate of
    F) * F. Wrapping twice is rejected — one level covers the catalog.
    """

    inner: "GrowthModel"

    kind: ClassVar[str] = "log_wrapped"

    def __post_init__(self):
        if isinstance(self.inner, LogWrapped):
            raise InvalidParameter("nested log-wrapped models are not supported")

    @property
    def C(self) -> float | None:
        return self.inner.C

    def parameters(self) -> dict[str, float]:
        return self.inner.parameters()

    def evaluate(self, t: float) -> float:
        return _finite(_exp(self.inner.evaluate(t)), f"S({t})")

    def rate_at(self, t: float) -> float:
        return self.inner.rate_at(t) * self.inner.evaluate(t)

    def normalized(self, t0: float, S0: float) -> "LogWrapped":
        if S0 <= 0:
            raise NonPositiveAnchor(f"anchor value must be positive, got {S0!r}")
        return LogWrapped(self.inner.normalized(t0, math.log(S0)))

    def diagnostics(self) -> ModelDiagnostics:
        inner = self.inner.diagnostics()
        extremum = None
        if inner.extremum is not None:
            size = None
            if inner.extremum.size is not None:
                try:
                    size = _exp(inner.extremum.size)
                except Overflow:
                    size = None
            extremum = Extremum(inner.extremum.time, size)
        size_limit = None
        if inner.size_limit is not None:
            try:
                size_limit = _exp(inner.size_limit)
            except Overflow:
                size_limit = None
        return ModelDiagnostics(
            singularity_time=inner.singularity_time,
            extremum=extremum,
            size_limit=size_limit,
        )


GrowthModel = Union[
    Exponential,
    LinearRateTime,
    PolyRateTime,
    Hyperbolic,
    LinearRateSize,
    HyperbolicRateTime,
    ExpRateTime,
    LogWrapped,
]


# --- catalog-wide operations ---------------------------------------------

def evaluate(m: GrowthModel, t: float) -> float:
    """Closed-form size at time t (requires a normalized model)."""
    return m.evaluate(t)


def rate_at(m: GrowthModel, t: float) -> float:
    """The model's defining growth rate at time t."""
    return m.rate_at(t)


def normalize(m: GrowthModel, t0: float, S0: float) -> GrowthModel:
    """Return m with C chosen so that evaluate(result, t0) == S0."""
    if S0 <= 0:
        raise NonPositiveAnchor(f"anchor value must be positive, got {S0!r}")
    return m.normalized(t0, S0)


def diagnostics(m: GrowthModel) -> ModelDiagnostics:
    """Singularity / extremum / asymptote facts; absence is encoded, not an error."""
    return m.diagnostics()


def poly_rate_solution(coeffs, C: float | None = None) -> PolyRateTime:
    """Model whose rate is the polynomial with the given ascending coeffs."""
    return PolyRateTime(tuple(coeffs), C)


def log_wrap(inner: GrowthModel) -> LogWrapped:
    """Wrap a model so it describes F = ln S instead of S."""
    return LogWrapped(inner)


# --- flat serialization ---------------------------------------------------

_BASE_KINDS: dict[str, type] = {
    cls.kind: cls
    for cls in (
        Exponential,
        LinearRateTime,
        PolyRateTime,
        Hyperbolic,
        LinearRateSize,
        HyperbolicRateTime,
        ExpRateTime,
    )
}

_LOG_PREFIX = "log_"


def to_record(m: GrowthModel) -> dict:
    """Flat {kind, parameters} record; floats pass through untouched, so the
    round trip through :func:`model_from_record` is bit-exact."""
    if isinstance(m, LogWrapped):
        return {
            "kind": _LOG_PREFIX + m.inner.kind,
            "parameters": m.inner.parameters(),
        }
    return {"kind": m.kind, "parameters": m.parameters()}


def _base_from_parameters(cls, params: dict) -> GrowthModel:
    params = dict(params)
    C = params.pop("C", None)
    if cls is PolyRateTime:
        coeffs = []
        while f"c{len(coeffs)}" in params:
            coeffs.append(params.pop(f"c{len(coeffs)}"))
        if params:
            raise InvalidParameter(
                f"unexpected parameters for poly_rate_time: {sorted(params)}"
            )
        return PolyRateTime(tuple(coeffs), C)
    try:
        return cls(**params, C=C)
    except TypeError:
        raise InvalidParameter(
            f"wrong parameters for {cls.kind}: {sorted(params)}"
        ) from None


def model_from_record(record: dict) -> GrowthModel:
    """Inverse of :func:`to_record`."""
    kind = record["kind"]
    params = record.get("parameters", {})
    if kind.startswith(_LOG_PREFIX):
        inner_kind = kind[len(_LOG_PREFIX):]
        if inner_kind not in _BASE_KINDS:
            raise InvalidParameter(f"unknown model kind {kind!r}")
        return LogWrapped(_base_from_parameters(_BASE_KINDS[inner_kind], params))
    if kind not in _BASE_KINDS:
        raise InvalidParameter(f"unknown model kind {kind!r}")
    return _base_from_parameters(_BASE_KINDS[kind], params)
