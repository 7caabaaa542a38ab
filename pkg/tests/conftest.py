"""Shared fixtures: the benchmark trial corpus and small reusable regions.

The full 105-trial corpus drives several slow end-to-end checks, so it is
built once per session and shared. Everything derived from a seed is
deterministic; only wall-clock times vary between runs.
"""

import numpy as np
import pytest

from coverquad import bench
from coverquad.geometry import PolygonSet, Polyline, buffer_polyline, union

# Grid resolutions used by the full corpus: small values resolve the
# error-decay doublings, the middle brackets the time crossing on this
# hardware, and the tail pins the complexity fit.
CORPUS_N_VALUES = (10, 20, 40, 80, 100, 130, 160, 300, 320)

CORPUS_TRIALS = 105


@pytest.fixture(scope="session")
def corpus_config():
    return bench.SweepConfig(n_values=CORPUS_N_VALUES, trials=CORPUS_TRIALS)


@pytest.fixture(scope="session")
def corpus(corpus_config):
    """All benchmark trial records, seeds 0..104."""
    records, failed = bench.run_sweep(corpus_config)
    assert not failed, f"corpus trials failed for seeds {failed}"
    return records


@pytest.fixture(scope="session")
def mission_pair():
    """One deterministic (pdm, coverage polygon) pair at reference settings."""
    cfg = bench.SweepConfig()
    return bench.mission_region(3, cfg)


@pytest.fixture
def unit_square():
    return PolygonSet.from_box(0.0, 0.0, 1.0, 1.0)


@pytest.fixture
def square_with_hole():
    outer = [(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)]
    hole = [(1.0, 1.0), (3.0, 1.0), (3.0, 3.0), (1.0, 3.0)]
    from coverquad.geometry import Ring

    return PolygonSet([(Ring(outer), [Ring(hole)])])


def random_buffered_polygon(seed, n_verts=24, scale=30.0, radius=1.0):
    """Irregular test region: a buffered random walk, holes possible."""
    rng = np.random.Generator(np.random.Philox(seed))
    steps = rng.normal(0.0, scale / 8.0, size=(n_verts, 2))
    verts = np.cumsum(steps, axis=0)
    return buffer_polyline(Polyline(verts), radius, arc_segments=8)
