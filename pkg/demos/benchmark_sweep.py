"""Small benchmark sweep: cubature baseline vs grid sampling across missions.

Runs a handful of randomized missions, aggregates the per-resolution medians,
and reports the fitted time-complexity exponent and the resolution where the
sampling route becomes slower than the cubature baseline. Increase --trials
for tighter statistics (the full study uses 105).
"""

import argparse

from coverquad import bench


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--csv", default=None, help="optional per-trial CSV output")
    args = ap.parse_args()

    cfg = bench.SweepConfig(trials=args.trials)
    records, failed = bench.run_sweep(
        cfg, csv_path=args.csv,
        progress=lambda seed, rec: print(
            f"  trial {seed}: {rec.n_coords} vertices, "
            f"baseline {1e3 * rec.baseline_time:.1f} ms"
        ),
    )
    if failed:
        print(f"failed seeds: {failed}")

    summary = bench.aggregate(records)
    print(f"\n{'N':>5}  {'median e_rel':>12}  {'median t_rel':>12}")
    for row in summary["per_n"]:
        print(f"  {row['n']:>5}  {row['e_rel_median']:>11.2%}  {row['t_rel_median']:>11.1%}")
    print(f"\ncomplexity exponent: {summary['complexity_exponent']:.2f} "
          "(2.0 = quadratic in N)")
    if summary["crossing_n"] is not None:
        print(f"sampling slower than cubature past N* = {summary['crossing_n']:.1f} "
              f"(median e_rel there: {summary['e_rel_at_crossing']:.2%})")
    ols = summary["ols"]
    if ols is not None:
        print(f"polygon-vertex-count vs error: slope {ols['slope']:.2e}, "
              f"p = {ols['p_value']:.3f}, r^2 = {ols['r_squared']:.3f}")


if __name__ == "__main__":
    main()
