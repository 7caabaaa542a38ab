import csv
import json

import numpy as np
import pytest

from coverquad import bench
from coverquad.bench import (
    OlsResult,
    SweepConfig,
    SweepRow,
    TrialRecord,
    aggregate,
    crossing_point,
    fit_complexity,
    ols_regression,
    run_sweep,
    run_trial,
    write_trials_csv,
)

SMALL = SweepConfig(n_values=(10, 20, 40), trials=2, timing_repeats=1)


def _synthetic_record(seed, n_values, t_rel_fn, e_rel_fn, s_time_fn):
    rows = [
        SweepRow(
            n=n,
            s_value=1.0 - e_rel_fn(n),
            s_time=s_time_fn(n),
            e_rel=e_rel_fn(n),
            t_rel=t_rel_fn(n),
        )
        for n in n_values
    ]
    return TrialRecord(seed=seed, n_coords=1000 + seed, baseline_q=1.0,
                       baseline_time=1.0, rows=rows)


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(n_values=(0, 10))
    with pytest.raises(ValueError):
        SweepConfig(trials=0)


def test_run_trial_deterministic_values():
    a = run_trial(0, SMALL)
    b = run_trial(0, SMALL)
    assert a.baseline_q == b.baseline_q
    assert a.n_coords == b.n_coords
    assert [r.s_value for r in a.rows] == [r.s_value for r in b.rows]
    assert [r.e_rel for r in a.rows] == [r.e_rel for r in b.rows]
    assert len(a.rows) == len(SMALL.n_values)


def test_run_trial_row_identities():
    rec = run_trial(1, SMALL)
    for row in rec.rows:
        assert row.e_rel == abs(rec.baseline_q - row.s_value) / rec.baseline_q
        assert row.t_rel == row.s_time / rec.baseline_time
        assert row.s_time > 0


def test_fit_complexity_exact_power_laws():
    ns = (10, 20, 40, 80, 160)
    quad = [_synthetic_record(0, ns, lambda n: 1.0, lambda n: 0.1, lambda n: 3e-6 * n**2)]
    assert fit_complexity(quad) == pytest.approx(2.0, abs=1e-6)
    lin = [_synthetic_record(0, ns, lambda n: 1.0, lambda n: 0.1, lambda n: 1e-4 * n)]
    assert fit_complexity(lin) == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(ValueError):
        fit_complexity([_synthetic_record(0, (10,), lambda n: 1, lambda n: 0.1, lambda n: 1)])


def test_crossing_point_closed_form():
    ns = (10, 20, 40)
    recs = [_synthetic_record(0, ns, lambda n: (n / 20.0) ** 2, lambda n: 0.1, lambda n: 1.0)]
    assert crossing_point(recs) == pytest.approx(20.0, rel=1e-12)


def test_crossing_point_requires_bracket():
    ns = (10, 20, 40)
    recs = [_synthetic_record(0, ns, lambda n: 0.5, lambda n: 0.1, lambda n: 1.0)]
    with pytest.raises(ValueError, match="no crossing in sweep"):
        crossing_point(recs)


def test_crossing_point_scale_invariance():
    ns = (10, 20, 40, 80)
    recs = [_synthetic_record(0, ns, lambda n: (n / 33.0) ** 1.8, lambda n: 0.1,
                              lambda n: 1e-5 * n**2)]
    n_star = crossing_point(recs)
    assert n_star == pytest.approx(33.0, rel=1e-9)
    scaled = [_synthetic_record(0, ns, lambda n: (n / 33.0) ** 1.8, lambda n: 0.1,
                                lambda n: 7e-3 * n**2)]
    assert fit_complexity(recs) == pytest.approx(fit_complexity(scaled), abs=1e-12)


# three regressions worked by hand with exact rational sums; the p-values
# come from the regularized incomplete beta form of the two-sided t-test,
# evaluated at 50-digit precision and rounded here
HAND_WORKED = [
    ([1, 2, 3, 4, 5], [2, 4, 5, 4, 5],
     0.6, 2.2, 0.12402706265755463, 0.6),
    ([0, 1, 2, 3, 4, 5], [1, 3, 2, 5, 4, 7],
     1.0285714285714286, 1.0952380952380952, 0.017245481149199349,
     0.7934693877551020),
    ([10, 20, 30, 40, 50, 60, 70], [8.2, 9.1, 10.3, 10.9, 12.2, 12.8, 14.1],
     0.09642857142857144, 7.228571428571428, 8.8556641111797513e-7,
     0.9941632118699542),
]


@pytest.mark.parametrize("x,y,slope,intercept,p,r2", HAND_WORKED)
def test_ols_hand_worked(x, y, slope, intercept, p, r2):
    res = ols_regression(x, y)
    assert res.slope == pytest.approx(slope, abs=1e-12)
    assert res.intercept == pytest.approx(intercept, abs=1e-12)
    assert res.p_value == pytest.approx(p, abs=1e-9)
    assert res.r_squared == pytest.approx(r2, abs=1e-12)


def test_ols_perfect_fit():
    x = np.arange(10.0)
    res = ols_regression(x, 2.0 * x + 1.0)
    assert res.slope == pytest.approx(2.0)
    assert res.intercept == pytest.approx(1.0)
    assert res.p_value < 1e-6
    assert res.r_squared == pytest.approx(1.0)


def test_ols_validation():
    with pytest.raises(ValueError):
        ols_regression([1, 2], [1, 2])
    with pytest.raises(ValueError, match="degenerate regressor"):
        ols_regression([3, 3, 3, 3], [1, 2, 3, 4])


def test_ols_null_calibration():
    # independent noise: the slope test should reject at ~5% for alpha=0.05
    rejections = 0
    trials = 300
    for seed in range(trials):
        rng = np.random.Generator(np.random.Philox(seed))
        x = rng.normal(size=100)
        y = rng.normal(size=100)
        if ols_regression(x, y).p_value <= 0.05:
            rejections += 1
    assert 0.015 <= rejections / trials <= 0.10


def test_aggregate_single_and_duplicate_records():
    ns = (10, 20, 40)
    rec = _synthetic_record(0, ns, lambda n: (n / 20.0) ** 2, lambda n: 1.0 / n,
                            lambda n: 1e-5 * n**2)
    single = aggregate([rec])
    assert single["schema"] == 1
    assert [row["n"] for row in single["per_n"]] == list(ns)
    for row, n in zip(single["per_n"], ns):
        assert row["e_rel_median"] == pytest.approx(1.0 / n)
        assert row["t_rel_median"] == pytest.approx((n / 20.0) ** 2)
        assert row["e_rel_iqr"] == 0.0
    doubled = aggregate([rec, rec])
    assert doubled["per_n"] == single["per_n"]
    assert doubled["crossing_n"] == single["crossing_n"]


def test_aggregate_permutation_invariant():
    ns = (10, 20, 40, 80)
    recs = [
        _synthetic_record(s, ns, lambda n, s=s: (n / (20.0 + s)) ** 2,
                          lambda n, s=s: (1.0 + 0.1 * s) / n, lambda n: 1e-5 * n**2)
        for s in range(6)
    ]
    fwd = aggregate(recs)
    rev = aggregate(list(reversed(recs)))
    assert fwd["per_n"] == rev["per_n"]
    assert fwd["crossing_n"] == rev["crossing_n"]
    assert fwd["complexity_exponent"] == rev["complexity_exponent"]
    # the regression folds sums in input order, so allow roundoff
    assert rev["ols"]["slope"] == pytest.approx(fwd["ols"]["slope"], rel=1e-12)
    assert rev["ols"]["p_value"] == pytest.approx(fwd["ols"]["p_value"], rel=1e-9)


def test_aggregate_requires_records():
    with pytest.raises(ValueError):
        aggregate([])


def test_csv_roundtrip_schema(tmp_path):
    recs, failed = run_sweep(SMALL, seeds=[0, 1], csv_path=tmp_path / "trials.csv")
    assert failed == []
    rows = list(csv.reader((tmp_path / "trials.csv").open()))
    assert rows[0] == bench.CSV_HEADER.split(",")
    assert len(rows) == 1 + 2 * len(SMALL.n_values)
    for row in rows[1:]:
        seed, n_coords, bq, bt, n, sv, st_, er, tr = row
        assert float(er) == pytest.approx(
            abs(float(bq) - float(sv)) / float(bq), rel=1e-6
        )


def test_write_trials_csv_matches_run_sweep(tmp_path):
    recs, _ = run_sweep(SMALL, seeds=[3])
    write_trials_csv(recs, tmp_path / "again.csv")
    rows = list(csv.reader((tmp_path / "again.csv").open()))
    assert len(rows) == 1 + len(SMALL.n_values)


def test_run_sweep_records_failed_seeds(monkeypatch):
    real = bench.run_trial

    def flaky(seed, cfg):
        if seed == 1:
            raise RuntimeError("boom")
        return real(seed, cfg)

    monkeypatch.setattr(bench, "run_trial", flaky)
    recs, failed = run_sweep(SMALL, seeds=[0, 1])
    assert failed == [1]
    assert [r.seed for r in recs] == [0]
