"""coverquad: integrate Gaussian-mixture fields over coverage-path polygons.

Two integration backends over the same geometry: adaptive triangle cubature
(37-point degree-13 rule, null-rule error control, greedy subdivision) and
grid sampling with pluggable point-in-polygon predicates, plus the mission
generator and the benchmark harness that compares them.
"""

from .cubature import (
    CubatureRule,
    DEFAULT_RULE,
    IntegrationResult,
    Tolerance,
    TriangleEstimate,
    apply_rule,
    integrate_adaptive,
    subdivide,
)
from .geometry import (
    Point2,
    PolygonSet,
    Polyline,
    Ring,
    Triangle,
    area,
    buffer_polyline,
    clip_to_box,
    triangulate,
    union,
    union_until,
)
from .integrand import (
    GaussianComponent,
    GaussianMixturePdm,
    Kernel3x3,
    RasterGrid,
    convolve3x3,
    eval_pdm,
    random_pdm,
    rasterize,
)
from .planner import MissionGrid, WaypointPath, global_warming, lhc_step, perturb_paths, plan
from .predicates import de9im_matrix, de9im_within, point_in_polygon_raycast
from .sampling import (
    SamplingConfig,
    integrate_sampling,
    integrate_sampling_fast,
    min_n_for_sensor,
    relative_error,
)
from .bench import (
    OlsResult,
    SweepConfig,
    TrialRecord,
    aggregate,
    crossing_point,
    fit_complexity,
    ols_regression,
    run_sweep,
    run_trial,
)

__version__ = "0.1.0"
