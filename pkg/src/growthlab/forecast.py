"""Projection of normalized models over time grids, with guarded handling
of finite-time singularities and floating-point overflow.

A projection never extrapolates *through* a singularity: grid points at or
beyond the guard band in front of the blow-up time get a flag instead of a
number, and values that leave double range are flagged as overflow rather
than saturated to inf.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    EmptyGrid,
    InvalidParameter,
    OutsideDomain,
    Overflow,
    UnnormalizedModel,
)
from .models import GrowthModel, LogWrapped, ModelDiagnostics, diagnostics

VALID = "valid"
BEYOND_SINGULARITY = "beyond_singularity"
OVERFLOW = "overflow"


@dataclass(frozen=True)
class Projection:
    model: GrowthModel
    grid: np.ndarray
    values: tuple  # float where the flag is "valid", None otherwise
    flags: tuple
    diagnostics: ModelDiagnostics

    def __len__(self) -> int:
        return len(self.grid)


def _check_grid(grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise EmptyGrid("projection grid has no points")
    if grid.size > 1 and np.any(np.diff(grid) <= 0):
        raise InvalidParameter(
            "projection grid must be strictly increasing", module="forecast"
        )
    grid = grid.copy()
    grid.setflags(write=False)
    return grid


def _require_normalized(m: GrowthModel) -> None:
    inner = m.inner if isinstance(m, LogWrapped) else m
    if inner.C is None:
        raise UnnormalizedModel(
            f"{m.kind} has no scale C; normalize it before projecting",
            module="forecast",
        )


def project(
    m: GrowthModel, grid, guard_fraction: float = 0.001
) -> Projection:
    """Evaluate m over the grid, flagging guarded/overflowing points.

    Points within guard_fraction of the run-up to a singularity (measured
    from the grid start) — or beyond it — are flagged instead of evaluated,
    so a near-vertical trajectory cannot smuggle astronomically amplified
    rounding error into the output.
    """
    if not 0.0 < guard_fraction < 1.0:
        raise InvalidParameter(
            f"guard_fraction must be in (0, 1), got {guard_fraction!r}",
            module="forecast",
        )
    grid = _check_grid(grid)
    _require_normalized(m)
    diag = diagnostics(m)

    cutoff = None
    if diag.singularity_time is not None:
        t_s = diag.singularity_time
        run_up = max(t_s - float(grid[0]), 0.0)
        cutoff = t_s - guard_fraction * run_up

    values: list = []
    flags: list = []
    for t in grid:
        t = float(t)
        if cutoff is not None and t >= cutoff:
            values.append(None)
            flags.append(BEYOND_SINGULARITY)
            continue
        try:
            values.append(m.evaluate(t))
            flags.append(VALID)
        except OutsideDomain:
            values.append(None)
            flags.append(BEYOND_SINGULARITY)
        except Overflow:
            values.append(None)
            flags.append(OVERFLOW)
    return Projection(
        model=m,
        grid=grid,
        values=tuple(values),
        flags=tuple(flags),
        diagnostics=diag,
    )


@dataclass(frozen=True)
class Comparison:
    """Several projections over one shared grid, for side-by-side reading."""

    grid: np.ndarray
    projections: tuple

    def rows(self) -> Iterator[tuple]:
        """Yield (t, cell, cell, ...) with a value where valid, else the flag."""
        for i, t in enumerate(self.grid):
            cells = tuple(
                p.values[i] if p.flags[i] == VALID else p.flags[i]
                for p in self.projections
            )
            yield (float(t), *cells)


def compare(
    models: Sequence[GrowthModel], grid, guard_fraction: float = 0.001
) -> Comparison:
    """Project each model independently over the same grid.

    Models never interact: each projection is exactly what :func:`project`
    would return for that model alone.
    """
    if len(models) == 0:
        raise InvalidParameter(
            "compare needs at least one model", module="forecast"
        )
    shared = _check_grid(grid)
    projections = tuple(project(m, shared, guard_fraction) for m in models)
    return Comparison(grid=shared, projections=projections)
