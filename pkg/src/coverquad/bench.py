"""End-to-end benchmark: cubature baselines vs. sampling sweeps.

One trial = one random mission: generate a 4-component mixture, plan the
waypoint route, lay out the rover paths, buffer and union them into the
coverage polygon, integrate the mixture over it once with adaptive cubature
(the baseline) and once per grid resolution N with the sampling method.
Timing wraps only the integration calls (monotonic clock, median of three
repeats, single thread); everything else in a trial is deterministic per
seed, so the e_rel columns reproduce bit-for-bit while times vary with the
machine. Only time *ratios* are analyzed downstream.
"""

from __future__ import annotations

import csv
import json
import logging
import time
from dataclasses import dataclass, field, asdict

import numpy as np
from scipy import special

from . import geometry, planner, sampling
from .cubature import Tolerance, integrate_adaptive
from .integrand import random_pdm

log = logging.getLogger(__name__)

# log-spaced sweep resolving both the crossing region and the tail
DEFAULT_N_VALUES = (10, 12, 16, 20, 25, 32, 40, 50, 65, 80, 100, 130, 160, 200, 250, 300)

CSV_HEADER = "seed,n_coords,baseline_q,baseline_time_s,N,s_value,s_time_s,e_rel,t_rel"

# fixed offsets deriving per-stage sub-seeds from the trial seed, so one
# number reproduces the whole trial
SUBSEED_PDM = 1
SUBSEED_PATHS = 2


@dataclass(frozen=True)
class SweepConfig:
    n_values: tuple = DEFAULT_N_VALUES
    trials: int = 105
    tolerance: Tolerance = field(default_factory=Tolerance)
    area_side: float = 150.0
    rovers: int = 5
    sensor_diameter: float = 1.0
    waypoints: int = 64
    levels: int = 10
    spacing: float = 1.0
    cells_per_side: int = 30
    arc_segments: int = 16
    predicate: str = "raycast"
    timing_repeats: int = 3
    mixture_size: int = 4

    def __post_init__(self):
        if min(self.n_values) < 1 or len(self.n_values) < 1:
            raise ValueError("sweep needs positive grid resolutions")
        if self.trials < 1 or self.rovers < 1 or self.waypoints < 1:
            raise ValueError("invalid sweep configuration")

    @property
    def bounds(self):
        return (0.0, 0.0, self.area_side, self.area_side)


@dataclass
class SweepRow:
    n: int
    s_value: float
    s_time: float
    e_rel: float
    t_rel: float


@dataclass
class TrialRecord:
    seed: int
    n_coords: int
    baseline_q: float
    baseline_time: float
    rows: list  # [SweepRow, ...]


@dataclass
class OlsResult:
    slope: float
    intercept: float
    p_value: float
    r_squared: float


def mission_region(seed, cfg):
    """Deterministic mission geometry for a trial seed: (pdm, polygon set)."""
    pdm = random_pdm(seed * 1000 + SUBSEED_PDM, cfg.mixture_size, cfg.bounds)
    route = planner.plan(
        pdm, waypoints=cfg.waypoints, levels=cfg.levels, cells_per_side=cfg.cells_per_side
    )
    cell = cfg.area_side / cfg.cells_per_side
    paths = planner.perturb_paths(
        route,
        rovers=cfg.rovers,
        spacing=cfg.spacing,
        seed=seed * 1000 + SUBSEED_PATHS,
        cell_size=cell,
    )
    buffered = [
        geometry.buffer_polyline(p, cfg.sensor_diameter / 2.0, cfg.arc_segments)
        for p in paths
    ]
    # jitter and avoidance detours can push a path over the area edge; the
    # coverage polygon is what lies inside the search area
    return pdm, geometry.clip_to_box(geometry.union(buffered), cfg.bounds)


def _timed(fn, repeats):
    """Median wall time of ``repeats`` runs plus the (identical) value."""
    times = []
    value = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn()
        times.append(time.perf_counter() - t0)
    return value, float(np.median(times))


def run_trial(seed, cfg):
    """Run one full mission benchmark for a seed."""
    pdm, region = mission_region(seed, cfg)
    if region.is_empty:
        raise RuntimeError("mission produced an empty coverage polygon")
    triangles = geometry.triangulate(region)
    result, baseline_time = _timed(
        lambda: integrate_adaptive(pdm, region, cfg.tolerance, triangles=triangles),
        cfg.timing_repeats,
    )
    baseline_q = result.q_total
    rows = []
    for n in cfg.n_values:
        scfg = sampling.SamplingConfig(n=n, m=n, bounds=cfg.bounds, predicate=cfg.predicate)
        s_value, s_time = _timed(
            lambda: sampling.integrate_sampling(pdm, region, scfg), cfg.timing_repeats
        )
        rows.append(
            SweepRow(
                n=n,
                s_value=s_value,
                s_time=s_time,
                e_rel=sampling.relative_error(baseline_q, s_value),
                t_rel=s_time / baseline_time,
            )
        )
    return TrialRecord(
        seed=seed,
        n_coords=region.n_coords(),
        baseline_q=baseline_q,
        baseline_time=baseline_time,
        rows=rows,
    )


def fit_complexity(records):
    """Least-squares slope of log(median sampling time) against log N."""
    ns, times = _median_by_n(records, "s_time")
    if len(ns) < 2 or np.any(times <= 0):
        raise ValueError("need >= 2 distinct N values with positive times")
    slope, _ = np.polyfit(np.log(ns), np.log(times), 1)
    return float(slope)


def crossing_point(records):
    """N* where the median relative time crosses 1 (log-linear interpolation)."""
    ns, t_rel = _median_by_n(records, "t_rel")
    logn, logt = np.log(ns), np.log(t_rel)
    for i in range(len(ns) - 1):
        if (logt[i] <= 0.0 <= logt[i + 1]) or (logt[i] >= 0.0 >= logt[i + 1]):
            if logt[i + 1] == logt[i]:
                return float(ns[i])
            frac = (0.0 - logt[i]) / (logt[i + 1] - logt[i])
            return float(np.exp(logn[i] + frac * (logn[i + 1] - logn[i])))
    raise ValueError("no crossing in sweep")


def _median_by_n(records, attr):
    by_n = {}
    for rec in records:
        for row in rec.rows:
            by_n.setdefault(row.n, []).append(getattr(row, attr))
    ns = np.array(sorted(by_n))
    med = np.array([float(np.median(by_n[n])) for n in ns])
    return ns, med


def ols_regression(x, y):
    """Ordinary least squares with a two-sided t-test on the slope.

    The t CDF is evaluated through the regularized incomplete beta function,
    accurate well past the 1e-9 the tests demand.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size != y.size or x.size < 3:
        raise ValueError("need >= 3 paired points")
    if np.all(x == x[0]):
        raise ValueError("degenerate regressor")
    n = x.size
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    sxy = float(np.sum((x - xm) * (y - ym)))
    slope = sxy / sxx
    intercept = ym - slope * xm
    resid = y - (intercept + slope * x)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - ym) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    dof = n - 2
    if ss_res == 0.0:
        return OlsResult(slope, intercept, 0.0, r_squared)
    se = np.sqrt(ss_res / dof / sxx)
    t = slope / se
    # two-sided p-value: survival of |t| under Student's t via I_x(dof/2, 1/2)
    p = float(special.betainc(dof / 2.0, 0.5, dof / (dof + t * t)))
    return OlsResult(slope, intercept, p, r_squared)


def aggregate(records):
    """Summary statistics across trials: per-N medians/IQRs, crossing point,
    complexity exponent, and the vertex-count OLS check."""
    if not records:
        raise ValueError("no records to aggregate")
    per_n = []
    by_n = {}
    for rec in records:
        for row in rec.rows:
            by_n.setdefault(row.n, {"e": [], "t": []})
            by_n[row.n]["e"].append(row.e_rel)
            by_n[row.n]["t"].append(row.t_rel)
    for n in sorted(by_n):
        e = np.array(by_n[n]["e"])
        t = np.array(by_n[n]["t"])
        per_n.append(
            {
                "n": int(n),
                "e_rel_median": float(np.median(e)),
                "e_rel_iqr": float(np.percentile(e, 75) - np.percentile(e, 25)),
                "t_rel_median": float(np.median(t)),
                "t_rel_iqr": float(np.percentile(t, 75) - np.percentile(t, 25)),
            }
        )
    summary = {"schema": 1, "per_n": per_n}
    try:
        summary["crossing_n"] = crossing_point(records)
        ns = np.array([row["n"] for row in per_n])
        es = np.array([row["e_rel_median"] for row in per_n])
        summary["e_rel_at_crossing"] = float(
            np.interp(np.log(summary["crossing_n"]), np.log(ns), es)
        )
    except ValueError:
        summary["crossing_n"] = None
        summary["e_rel_at_crossing"] = None
    try:
        summary["complexity_exponent"] = fit_complexity(records)
    except ValueError:
        summary["complexity_exponent"] = None
    if len(records) >= 3:
        # one point per sweep row: does the polygon's vertex count influence
        # the relative error, across all grid resolutions?
        x = [rec.n_coords for rec in records for _ in rec.rows]
        y = [row.e_rel for rec in records for row in rec.rows]
        try:
            ols = ols_regression(x, y)
            summary["ols"] = {
                "slope": ols.slope,
                "intercept": ols.intercept,
                "p_value": ols.p_value,
                "r_squared": ols.r_squared,
            }
        except ValueError:
            summary["ols"] = None
    else:
        summary["ols"] = None
    return summary


def write_trials_csv(records, path):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(CSV_HEADER.split(","))
        for rec in records:
            _write_trial_rows(w, rec)


def _write_trial_rows(writer, rec):
    for row in rec.rows:
        writer.writerow(
            [
                rec.seed,
                rec.n_coords,
                f"{rec.baseline_q:.17g}",
                f"{rec.baseline_time:.9f}",
                row.n,
                f"{row.s_value:.17g}",
                f"{row.s_time:.9f}",
                f"{row.e_rel:.12g}",
                f"{row.t_rel:.9g}",
            ]
        )


def run_sweep(cfg, seeds=None, csv_path=None, progress=None):
    """Run all trials; failed seeds are logged and excluded from aggregates.

    Returns (records, failed_seeds). When ``csv_path`` is given, rows are
    appended and flushed per trial so an interrupted run leaves a valid CSV.
    """
    seeds = list(range(cfg.trials)) if seeds is None else list(seeds)
    records, failed = [], []
    writer = None
    f = None
    try:
        if csv_path is not None:
            f = open(csv_path, "w", newline="")
            writer = csv.writer(f)
            writer.writerow(CSV_HEADER.split(","))
        for seed in seeds:
            try:
                rec = run_trial(seed, cfg)
            except Exception:
                log.exception("trial with seed %d failed", seed)
                failed.append(seed)
                continue
            records.append(rec)
            if writer is not None:
                _write_trial_rows(writer, rec)
                f.flush()
            if progress is not None:
                progress(seed, rec)
    finally:
        if f is not None:
            f.close()
    if failed:
        log.warning("%d/%d trials failed: %s", len(failed), len(seeds), failed)
    return records, failed
