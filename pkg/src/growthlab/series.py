"""Time-series containers and the value transforms used to linearize growth.

Sizes live in :class:`TimeSeries` (strictly positive, so reciprocal and log
transforms are always defined); transformed sequences, whose values can be
zero or negative after a log, live in the looser :class:`PointSeries`.
Times are absolute calendar years stored as floats; fractional years and
irregular spacing are both fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import LengthMismatch, NonMonotonicTime, NonPositiveValue, SeriesTooShort


class TransformKind(str, Enum):
    IDENTITY = "identity"
    RECIPROCAL = "reciprocal"
    LOG = "log"


def _frozen_array(values) -> np.ndarray:
    """Copy into a read-only float array so containers stay immutable."""
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PointSeries:
    """(time, value) samples with strictly increasing times.

    Values are unconstrained: log-transformed series may be zero or
    negative, so this is the shape downstream fits accept.
    """

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = _frozen_array(self.times)
        values = _frozen_array(self.values)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        if len(times) != len(values):
            raise LengthMismatch(
                f"times has {len(times)} entries but values has {len(values)}"
            )
        bad = np.diff(times) <= 0
        if bad.any():
            index = int(np.argmax(bad)) + 1
            raise NonMonotonicTime(
                f"times must be strictly increasing; offending index {index} "
                f"(t={float(times[index])!r} follows t={float(times[index - 1])!r})"
            )

    def __len__(self) -> int:
        return len(self.times)


@dataclass(frozen=True)
class TimeSeries(PointSeries):
    """Validated observations of a growing entity's size.

    Invariants: strictly increasing times, strictly positive values (the
    reciprocal and logarithm transforms must be defined everywhere), and at
    least two points.
    """

    def __post_init__(self):
        super().__post_init__()
        if len(self.times) < 2:
            raise SeriesTooShort(
                f"a series needs at least 2 points, got {len(self.times)}",
                module="series",
            )
        nonpositive = self.values <= 0
        if nonpositive.any():
            index = int(np.argmax(nonpositive))
            raise NonPositiveValue(
                f"values must be strictly positive; offending index {index} "
                f"(value {float(self.values[index])!r})"
            )


def make_series(times, values) -> TimeSeries:
    """Build a validated TimeSeries from parallel sequences."""
    return TimeSeries(times, values)


def transform_series(ts: TimeSeries, kind: TransformKind) -> PointSeries:
    """Apply a pointwise value transform, keeping times unchanged.

    identity returns the values as they are, reciprocal maps S to 1/S and
    log maps S to ln S (which is why the result is a PointSeries: ln S can
    be any sign).
    """
    kind = TransformKind(kind)
    if kind is TransformKind.IDENTITY:
        return PointSeries(ts.times, ts.values)
    if kind is TransformKind.RECIPROCAL:
        return PointSeries(ts.times, 1.0 / ts.values)
    return PointSeries(ts.times, np.log(ts.values))
