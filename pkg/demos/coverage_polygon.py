"""Build the covered-area polygon of a multi-rover mission.

Follows the full geometry pipeline: plan a route, lay out five jittered rover
paths, buffer each by the 0.5 m sensor radius, union the results, and clip to
the search area. Prints how the polygon grows over mission time and how
ragged the final shape is (vertex and hole counts).
"""

import argparse

from coverquad import bench, geometry, planner
from coverquad.geometry import area
from coverquad.integrand import random_pdm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=36)
    args = ap.parse_args()

    cfg = bench.SweepConfig()
    pdm = random_pdm(args.seed * 1000 + bench.SUBSEED_PDM, 4, cfg.bounds)
    route = planner.plan(pdm, waypoints=cfg.waypoints, levels=cfg.levels)
    paths = planner.perturb_paths(
        route, rovers=cfg.rovers, spacing=cfg.spacing,
        seed=args.seed * 1000 + bench.SUBSEED_PATHS, cell_size=5.0,
    )

    t_end = max(p.t_max for p in paths)
    print("coverage growth (buffered path prefixes up to time t):")
    for frac in (0.1, 0.25, 0.5, 0.75, 1.0):
        snap = geometry.union_until(paths, frac * t_end, 0.5, cfg.arc_segments)
        print(
            f"  t = {frac * t_end:7.1f} s: area {area(snap):8.2f} m^2, "
            f"{len(snap)} piece(s), {sum(len(h) for _, h in snap.polygons)} hole(s)"
        )

    full = geometry.clip_to_box(geometry.union_until(paths, t_end, 0.5), cfg.bounds)
    print(
        f"\nfinal polygon (clipped to the search area): area {area(full):.2f} m^2, "
        f"{full.n_coords()} vertices, "
        f"{sum(len(h) for _, h in full.polygons)} holes"
    )
    tris = geometry.triangulate(full)
    print(f"constrained triangulation: {len(tris)} triangles, "
          f"area check {sum(t.area for t in tris):.2f} m^2")


if __name__ == "__main__":
    main()
