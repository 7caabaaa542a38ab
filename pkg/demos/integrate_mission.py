"""Integrate a probability field over one mission's coverage polygon.

Runs the adaptive triangle cubature once as the baseline, then the grid
sampling estimator across resolutions, printing the error/time trade-off that
motivates the cubature route for irregular polygons.
"""

import argparse
import time

from coverquad import bench
from coverquad.cubature import Tolerance, integrate_adaptive
from coverquad.geometry import triangulate
from coverquad.sampling import SamplingConfig, integrate_sampling, relative_error


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()

    cfg = bench.SweepConfig()
    pdm, region = bench.mission_region(args.seed, cfg)
    tris = triangulate(region)

    t0 = time.perf_counter()
    res = integrate_adaptive(pdm, region, Tolerance(eps_rel=1e-8), triangles=tris)
    t_base = time.perf_counter() - t0
    print(f"cubature baseline: Q = {res.q_total:.9f} +- {res.e_total:.1e}")
    print(f"  {len(tris)} initial triangles, {res.subdivisions} subdivisions, "
          f"{res.evals} evaluations, {1e3 * t_base:.1f} ms")

    print("\ngrid sampling sweep:")
    print(f"  {'N':>5}  {'estimate':>12}  {'rel err':>9}  {'time':>8}  {'rel time':>8}")
    for n in (10, 20, 40, 80, 160, 300):
        scfg = SamplingConfig(n=n, m=n, bounds=cfg.bounds)
        t0 = time.perf_counter()
        s = integrate_sampling(pdm, region, scfg)
        dt = time.perf_counter() - t0
        print(
            f"  {n:>5}  {s:>12.9f}  {relative_error(res.q_total, s):>9.2%}  "
            f"{1e3 * dt:>6.1f}ms  {dt / t_base:>7.1%}"
        )


if __name__ == "__main__":
    main()
