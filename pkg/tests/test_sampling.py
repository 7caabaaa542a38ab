import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coverquad.geometry import PolygonSet, area
from coverquad.sampling import (
    SamplingConfig,
    classify_grid_fast,
    integrate_sampling,
    integrate_sampling_fast,
    min_n_for_sensor,
    relative_error,
)
from coverquad.predicates import contains_batch
from conftest import random_buffered_polygon

ONES = lambda p: np.ones(p.shape[0])


def test_config_validation():
    with pytest.raises(ValueError):
        SamplingConfig(n=0, m=5, bounds=(0, 0, 1, 1))
    with pytest.raises(ValueError):
        SamplingConfig(n=5, m=5, bounds=(1, 0, 0, 1))
    with pytest.raises(ValueError):
        SamplingConfig(n=5, m=5, bounds=(0, 0, 1, 1), predicate="magic")
    cfg = SamplingConfig(n=4, m=8, bounds=(0, 0, 2, 3))
    assert cfg.area == pytest.approx(6.0)


def test_full_rectangle_constant_is_exact():
    region = PolygonSet.from_box(0, 0, 10, 6)
    for n, m in [(5, 5), (12, 7), (1, 1)]:
        cfg = SamplingConfig(n=n, m=m, bounds=(0, 0, 10, 6))
        got = integrate_sampling(lambda p: np.full(p.shape[0], 2.5), region, cfg)
        assert got == pytest.approx(2.5 * 60.0, rel=1e-14)


def test_half_rectangle_even_grid_is_exact():
    region = PolygonSet.from_box(0, 0, 5, 10)
    cfg = SamplingConfig(n=10, m=10, bounds=(0, 0, 10, 10))
    assert integrate_sampling(ONES, region, cfg) == pytest.approx(50.0, rel=1e-14)


def test_empty_region_gives_zero():
    cfg = SamplingConfig(n=4, m=4, bounds=(0, 0, 1, 1))
    assert integrate_sampling(ONES, PolygonSet(), cfg) == 0.0


def test_prefilter_does_not_change_result():
    region = random_buffered_polygon(3)
    xmin, ymin, xmax, ymax = region.bounds()
    bounds = (xmin - 10, ymin - 10, xmax + 10, ymax + 10)
    f = lambda p: np.exp(-0.001 * (p[:, 0] ** 2 + p[:, 1] ** 2))
    on = SamplingConfig(n=60, m=55, bounds=bounds, prefilter=True)
    off = SamplingConfig(n=60, m=55, bounds=bounds, prefilter=False)
    assert integrate_sampling(f, region, on) == integrate_sampling(f, region, off)


def test_predicate_choice_matches_on_generic_grids():
    region = random_buffered_polygon(8)
    xmin, ymin, xmax, ymax = region.bounds()
    bounds = (xmin - 1, ymin - 1, xmax + 1, ymax + 1)
    f = lambda p: p[:, 0] + 2.0 * p[:, 1] + 10.0
    a = integrate_sampling(f, region, SamplingConfig(n=41, m=37, bounds=bounds))
    b = integrate_sampling(
        f, region, SamplingConfig(n=41, m=37, bounds=bounds, predicate="de9im")
    )
    assert a == b


def test_aliasing_bound_for_indicator():
    region = random_buffered_polygon(5)
    xmin, ymin, xmax, ymax = region.bounds()
    bounds = (xmin - 1, ymin - 1, xmax + 1, ymax + 1)
    for n in (20, 40, 80):
        cfg = SamplingConfig(n=n, m=n, bounds=bounds)
        got = integrate_sampling(ONES, region, cfg)
        dx = (bounds[2] - bounds[0]) / n
        dy = (bounds[3] - bounds[1]) / n
        assert abs(got - area(region)) <= region.perimeter() * max(dx, dy)


def test_scanline_classification_matches_per_point_predicate():
    for seed in (0, 1, 2, 7):
        region = random_buffered_polygon(seed)
        xmin, ymin, xmax, ymax = region.bounds()
        cfg = SamplingConfig(n=73, m=67, bounds=(xmin - 1, ymin - 1, xmax + 1, ymax + 1))
        mask = classify_grid_fast(region, cfg)
        xs = cfg.bounds[0] + (np.arange(cfg.m) + 0.5) * (cfg.bounds[2] - cfg.bounds[0]) / cfg.m
        ys = cfg.bounds[1] + (np.arange(cfg.n) + 0.5) * (cfg.bounds[3] - cfg.bounds[1]) / cfg.n
        pts = np.column_stack([np.tile(xs, cfg.n), np.repeat(ys, cfg.m)])
        ref = contains_batch(pts, region).reshape(cfg.n, cfg.m)
        assert np.array_equal(mask, ref)


def test_fast_engine_matches_reference_engine():
    region = random_buffered_polygon(9)
    xmin, ymin, xmax, ymax = region.bounds()
    cfg = SamplingConfig(n=50, m=50, bounds=(xmin - 1, ymin - 1, xmax + 1, ymax + 1))
    f = lambda p: np.cos(0.05 * p[:, 0]) + 1.5
    slow = integrate_sampling(f, region, cfg)
    fast = integrate_sampling_fast(f, region, cfg)
    assert fast == pytest.approx(slow, rel=1e-12)


def test_grid_centers_on_boundary_are_excluded():
    # a unit square placed so that a column of cell centers lies exactly on
    # its left edge: those centers must not contribute
    region = PolygonSet.from_box(0.25, 0.0, 1.0, 1.0)
    cfg = SamplingConfig(n=2, m=2, bounds=(0, 0, 1, 1))
    # centers at x in {0.25, 0.75}: the x=0.25 column sits on the boundary
    got = integrate_sampling(ONES, region, cfg)
    assert got == pytest.approx(0.5)
    mask = classify_grid_fast(region, cfg)
    assert mask.sum() == 2
    assert not mask[:, 0].any()


def test_relative_error():
    assert relative_error(2.0, 2.0) == 0.0
    assert relative_error(1.0, 0.8525) == pytest.approx(0.1475)
    d = 0.25
    assert relative_error(2.0, 2.0 + d) == relative_error(2.0, 2.0 - d)
    with pytest.raises(ValueError, match="zero baseline"):
        relative_error(0.0, 1.0)


def test_min_n_for_sensor():
    assert min_n_for_sensor(150, 1) == 150
    assert min_n_for_sensor(150, 5) == 30
    assert min_n_for_sensor(7, 7) == 1
    assert min_n_for_sensor(10, 3) == 4
    with pytest.raises(ValueError):
        min_n_for_sensor(0, 1)
    with pytest.raises(ValueError):
        min_n_for_sensor(10, 0)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 5000))
def test_error_shrinks_with_resolution(seed):
    region = random_buffered_polygon(seed, radius=2.0)
    xmin, ymin, xmax, ymax = region.bounds()
    bounds = (xmin - 1, ymin - 1, xmax + 1, ymax + 1)
    coarse = integrate_sampling(ONES, region, SamplingConfig(n=16, m=16, bounds=bounds))
    fine = integrate_sampling(ONES, region, SamplingConfig(n=256, m=256, bounds=bounds))
    truth = area(region)
    h_fine = max(bounds[2] - bounds[0], bounds[3] - bounds[1]) / 256
    # the fine grid must beat the coarse one unless the coarse error already
    # cancelled below the fine grid's aliasing bound
    assert abs(fine - truth) <= max(abs(coarse - truth), region.perimeter() * h_fine)
