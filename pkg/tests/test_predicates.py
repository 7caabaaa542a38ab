import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coverquad.geometry import PolygonSet, Ring
from coverquad.predicates import (
    contains_batch,
    de9im_matrix,
    de9im_within,
    matches_within,
    on_boundary,
    point_in_polygon_raycast,
)
from conftest import random_buffered_polygon


@pytest.fixture
def concave_polygon():
    # arrow-like concave outline: a horizontal ray from inside the notch
    # crosses the boundary three times
    verts = [(0, 0), (10, 0), (10, 10), (6, 10), (6, 4), (4, 4), (4, 10), (0, 10)]
    return PolygonSet([(Ring(verts), [])])


def test_raycast_basic(unit_square):
    assert point_in_polygon_raycast((0.5, 0.5), unit_square)
    assert not point_in_polygon_raycast((1.5, 0.5), unit_square)
    assert not point_in_polygon_raycast((-0.5, 0.5), unit_square)


def test_raycast_hole(square_with_hole):
    assert point_in_polygon_raycast((0.5, 0.5), square_with_hole)
    assert not point_in_polygon_raycast((2.0, 2.0), square_with_hole)  # in hole


def test_raycast_concave_three_crossings(concave_polygon):
    # from (1, 7) a +x ray exits at x=4, re-enters at x=6, exits at x=10
    assert point_in_polygon_raycast((1.0, 7.0), concave_polygon)
    assert not point_in_polygon_raycast((5.0, 7.0), concave_polygon)  # in notch


def test_boundary_points_are_outside(unit_square):
    for p in [(0.0, 0.5), (0.5, 0.0), (1.0, 1.0), (0.0, 0.0)]:
        assert on_boundary([p], unit_square)[0]
        assert not point_in_polygon_raycast(p, unit_square)
        assert not de9im_within(p, unit_square)


def test_vertex_grazing_ray(unit_square):
    # ray through y=0 and y=1 touches vertices; half-open edge rule must
    # still classify strictly interior / exterior points correctly
    tri = PolygonSet([(Ring([(0, 0), (2, 0), (1, 2)]), [])])
    assert point_in_polygon_raycast((1.0, 0.5), tri)
    assert not point_in_polygon_raycast((-1.0, 0.0), tri)
    assert not point_in_polygon_raycast((3.0, 0.0), tri)
    assert not point_in_polygon_raycast((-1.0, 2.0), tri)


def test_de9im_matrix_shape_and_rows(unit_square):
    m = de9im_matrix((0.5, 0.5), unit_square)
    assert m.shape == (3, 3)
    assert m[0, 0] == 0  # point interior meets region interior, dimension 0
    assert list(m[1]) == [-1, -1, -1]  # a point has no boundary
    assert list(m[2]) == [2, 1, 2]

    m = de9im_matrix((0.0, 0.5), unit_square)
    assert m[0, 1] == 0 and m[0, 0] == -1

    m = de9im_matrix((5.0, 5.0), unit_square)
    assert m[0, 2] == 0 and m[0, 0] == -1


def test_within_pattern_matching(unit_square):
    assert matches_within(de9im_matrix((0.5, 0.5), unit_square))
    assert not matches_within(de9im_matrix((0.0, 0.5), unit_square))
    assert not matches_within(de9im_matrix((2.0, 0.5), unit_square))


def test_de9im_within_hole(square_with_hole):
    assert de9im_within((0.5, 0.5), square_with_hole)
    assert not de9im_within((2.0, 2.0), square_with_hole)


def _min_boundary_distance(points, region):
    """Exact point-to-edge distance, vectorized; test-side oracle."""
    starts, ends = region.edges()
    e = ends - starts
    seg2 = np.maximum(np.sum(e * e, axis=1), 1e-300)
    d = points[:, None, :] - starts[None, :, :]
    t = np.clip(np.sum(d * e[None, :, :], axis=2) / seg2[None, :], 0.0, 1.0)
    proj = starts[None, :, :] + t[:, :, None] * e[None, :, :]
    dist = np.hypot(*(points[:, None, :] - proj).transpose(2, 0, 1))
    return dist.min(axis=1)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_predicates_agree_away_from_boundary(seed):
    region = random_buffered_polygon(seed)
    rng = np.random.Generator(np.random.Philox(seed + 77))
    xmin, ymin, xmax, ymax = region.bounds()
    pts = rng.uniform([xmin - 2, ymin - 2], [xmax + 2, ymax + 2], size=(500, 2))
    keep = _min_boundary_distance(pts, region) > 1e-7
    a = contains_batch(pts[keep], region, predicate="raycast")
    b = contains_batch(pts[keep], region, predicate="de9im")
    assert np.array_equal(a, b)


def test_batch_matches_scalar_predicates():
    region = random_buffered_polygon(5)
    rng = np.random.Generator(np.random.Philox(9))
    xmin, ymin, xmax, ymax = region.bounds()
    pts = rng.uniform([xmin, ymin], [xmax, ymax], size=(200, 2))
    batch_rc = contains_batch(pts, region, predicate="raycast")
    batch_de = contains_batch(pts, region, predicate="de9im")
    for p, brc, bde in zip(pts, batch_rc, batch_de):
        assert point_in_polygon_raycast(p, region) == brc
        assert de9im_within(p, region) == bde


def test_batch_chunking_invariance():
    region = random_buffered_polygon(11)
    rng = np.random.Generator(np.random.Philox(4))
    pts = rng.uniform(-40, 40, size=(300, 2))
    full = contains_batch(pts, region)
    small = contains_batch(pts, region, chunk_edges=997)
    assert np.array_equal(full, small)


def test_batch_input_validation(unit_square):
    with pytest.raises(ValueError):
        contains_batch(np.zeros((3, 3)), unit_square)
    with pytest.raises(ValueError):
        contains_batch(np.zeros((5, 2)), unit_square, predicate="nearest")
    out = contains_batch(np.zeros((0, 2)), unit_square)
    assert out.shape == (0,)


def test_empty_region_classifies_nothing():
    empty = PolygonSet()
    assert not point_in_polygon_raycast((0, 0), empty)
    assert not de9im_within((0, 0), empty)
    assert not contains_batch(np.zeros((4, 2)), empty).any()
