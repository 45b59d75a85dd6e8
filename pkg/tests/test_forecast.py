"""Projection over grids: flags for guarded singularities and overflow."""

import numpy as np
import pytest

from growthlab.errors import EmptyGrid, InvalidParameter, UnnormalizedModel
from growthlab.forecast import (
    BEYOND_SINGULARITY,
    OVERFLOW,
    VALID,
    compare,
    project,
)
from growthlab.models import (
    Exponential,
    Hyperbolic,
    LinearRateTime,
    LogWrapped,
    normalize,
)

HYP = Hyperbolic(b=2.155e-3, C=4.376)  # singularity at C/b ~ 2030.63
YEARS = np.arange(2000.0, 2041.0)


def test_guard_band_splits_grid_at_singularity():
    p = project(HYP, YEARS, guard_fraction=0.001)
    t_s = 4.376 / 2.155e-3
    cutoff = t_s - 0.001 * (t_s - 2000.0)
    assert 2030.0 < cutoff < 2031.0
    for t, value, flag in zip(p.grid, p.values, p.flags):
        if t < cutoff:
            assert flag == VALID
            assert value is not None
        else:
            assert flag == BEYOND_SINGULARITY
            assert value is None
    assert p.flags.count(VALID) == 31  # 2000..2030
    assert p.flags.count(BEYOND_SINGULARITY) == 10  # 2031..2040


def test_valid_flag_iff_value_present():
    p = project(HYP, YEARS)
    for value, flag in zip(p.values, p.flags):
        assert (flag == VALID) == (value is not None)


def test_values_climb_toward_singularity():
    p = project(HYP, np.arange(2000.0, 2031.0))
    vals = [v for v in p.values if v is not None]
    assert vals == sorted(vals)
    assert vals[-1] > 40.0 * vals[0]


def test_wider_guard_flags_more_points():
    narrow = project(HYP, YEARS, guard_fraction=0.001)
    wide = project(HYP, YEARS, guard_fraction=0.2)
    assert wide.flags.count(BEYOND_SINGULARITY) > narrow.flags.count(BEYOND_SINGULARITY)


def test_overflow_is_flagged_not_saturated():
    p = project(Exponential(r=1.0, C=1.0), np.arange(0.0, 801.0, 10.0))
    # e^t leaves double range just under t = 710
    assert p.flags[:71] == (VALID,) * 71
    assert set(p.flags[71:]) == {OVERFLOW}
    assert all(v is None for v in p.values[71:])
    assert not any(v is not None and np.isinf(v) for v in p.values)


def test_log_wrapped_overflows_before_guard_cutoff():
    # inner hyperbola describes ln S, so S blows past double range while
    # still inside the guard cutoff: overflow and guard flags coexist
    p = project(LogWrapped(HYP), YEARS)
    by_year = dict(zip((float(t) for t in p.grid), p.flags))
    assert by_year[2000.0] == VALID
    assert by_year[2029.0] == VALID
    assert by_year[2030.0] == OVERFLOW
    assert by_year[2031.0] == BEYOND_SINGULARITY
    assert by_year[2040.0] == BEYOND_SINGULARITY


def test_projection_is_deterministic():
    a = project(HYP, YEARS)
    b = project(HYP, YEARS)
    assert a.values == b.values
    assert a.flags == b.flags


def test_projection_grid_is_frozen():
    p = project(HYP, YEARS)
    with pytest.raises(ValueError):
        p.grid[0] = 1999.0
    assert len(p) == len(YEARS)


def test_unnormalized_model_is_rejected():
    with pytest.raises(UnnormalizedModel):
        project(Hyperbolic(b=2.155e-3), YEARS)
    with pytest.raises(UnnormalizedModel):
        project(LogWrapped(LinearRateTime(a=0.02, b=-4e-6)), YEARS)


def test_grid_validation():
    with pytest.raises(EmptyGrid):
        project(HYP, [])
    with pytest.raises(InvalidParameter):
        project(HYP, [2000.0, 2000.0, 2001.0])
    with pytest.raises(InvalidParameter):
        project(HYP, [2002.0, 2001.0])


@pytest.mark.parametrize("guard", [0.0, 1.0, -0.1, 1.5])
def test_guard_fraction_must_be_a_proper_fraction(guard):
    with pytest.raises(InvalidParameter):
        project(HYP, YEARS, guard_fraction=guard)


def test_grid_accepts_plain_lists():
    p = project(HYP, [2000.0, 2010.0, 2020.0])
    assert p.flags == (VALID, VALID, VALID)


def test_compare_matches_individual_projections():
    exp = normalize(Exponential(r=0.025), 2014.0, 5.0e13)
    comp = compare([HYP, exp], YEARS)
    solo_hyp = project(HYP, YEARS)
    solo_exp = project(exp, YEARS)
    assert comp.projections[0].values == solo_hyp.values
    assert comp.projections[0].flags == solo_hyp.flags
    assert comp.projections[1].values == solo_exp.values
    assert comp.projections[1].flags == solo_exp.flags


def test_compare_requires_models():
    with pytest.raises(InvalidParameter):
        compare([], YEARS)


def test_comparison_rows_mix_values_and_flags():
    exp = normalize(Exponential(r=0.025), 2014.0, 5.0e13)
    comp = compare([HYP, exp], np.array([2000.0, 2035.0]))
    rows = list(comp.rows())
    assert len(rows) == 2
    t0, hyp_cell, exp_cell = rows[0]
    assert t0 == 2000.0
    assert isinstance(hyp_cell, float) and isinstance(exp_cell, float)
    t1, hyp_cell, exp_cell = rows[1]
    assert t1 == 2035.0
    assert hyp_cell == BEYOND_SINGULARITY  # past the hyperbola's pole
    assert isinstance(exp_cell, float)


def test_constant_rate_overtakes_fading_rate_by_2100():
    # anchored to the same 2014 datum, a constant 2.5% compounds past a
    # trend whose rate is already fading
    anchor_t, anchor_s = 2014.0, 5.0e13
    exp = normalize(Exponential(r=0.025), anchor_t, anchor_s)
    fading = normalize(LinearRateTime(a=0.3895, b=-1.805e-4), anchor_t, anchor_s)
    assert exp.evaluate(anchor_t) == pytest.approx(anchor_s, rel=1e-12)
    assert fading.evaluate(anchor_t) == pytest.approx(anchor_s, rel=1e-12)
    grid = np.array([2050.0, 2100.0])
    comp = compare([exp, fading], grid)
    exp_2100 = comp.projections[0].values[1]
    fading_2100 = comp.projections[1].values[1]
    assert exp_2100 > fading_2100
