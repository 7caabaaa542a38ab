"""Command-line entry point: scenario generation, integration, benchmarking.

Exit codes are a stable contract: 0 success, 2 usage error, 3 bad input
file, 4 partial benchmark failure. All randomness flows from --seed through
fixed per-stage offsets, so a seed reproduces a whole run; outputs other than
wall-clock times are byte-identical across runs with equal flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import bench, geometry, planner, sampling
from .cubature import Tolerance, integrate_adaptive
from .geometry import PolygonSet
from .integrand import GaussianMixturePdm, random_pdm

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_PARTIAL = 4


def _read_config_file(path):
    """key=value config file; later flags override these values."""
    values = {}
    try:
        with open(path) as f:
            for lineno, line in enumerate(f, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected key=value")
                key, _, val = line.partition("=")
                values[key.strip().replace("-", "_")] = val.strip()
        return values
    except OSError as exc:
        raise SystemExit(_input_error(f"cannot read config file: {exc}"))


def _input_error(message):
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT


def _load_json(path, loader, what):
    try:
        with open(path) as f:
            text = f.read()
    except OSError as exc:
        raise SystemExit(_input_error(f"cannot read {what}: {exc}"))
    try:
        return loader(text)
    except json.JSONDecodeError as exc:
        raise SystemExit(
            _input_error(f"malformed {what} {path}: line {exc.lineno} column {exc.colno}: {exc.msg}")
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise SystemExit(_input_error(f"invalid {what} {path}: {exc}"))


def _add_common(p):
    p.add_argument("--config", help="optional key=value config file (flags override it)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=".")


def _add_scenario_flags(p):
    p.add_argument("--waypoints", type=int, default=64)
    p.add_argument("--levels", type=int, default=10)
    p.add_argument("--rovers", type=int, default=5)
    p.add_argument("--sensor-diameter", type=float, default=1.0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coverquad",
        description="Coverage-polygon integration benchmark: adaptive cubature vs. grid sampling",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", help="generate a mission: PDM, waypoints, rover paths")
    _add_common(p_plan)
    _add_scenario_flags(p_plan)

    p_int = sub.add_parser("integrate", help="integrate a PDM over a polygon set")
    _add_common(p_int)
    p_int.add_argument("--pdm", required=True, help="PDM JSON file")
    p_int.add_argument("--region", required=True, help="PolygonSet JSON file")
    p_int.add_argument("--method", choices=["cubature", "sampling"], default="cubature")
    p_int.add_argument("--n", type=int, default=150, help="sampling grid resolution")
    p_int.add_argument("--predicate", choices=["raycast", "de9im"], default="raycast")
    p_int.add_argument("--eps-rel", type=float, default=1e-8)
    p_int.add_argument("--eps-abs", type=float, default=0.0)
    p_int.add_argument("--max-evals", type=int, default=10_000_000)
    p_int.add_argument("--baseline", type=float, help="report e_rel against this value")

    p_bench = sub.add_parser("bench", help="run the benchmark sweep")
    _add_common(p_bench)
    _add_scenario_flags(p_bench)
    p_bench.add_argument("--trials", type=int, default=105)
    p_bench.add_argument("--n-min", type=int, default=10)
    p_bench.add_argument("--n-max", type=int, default=300)
    p_bench.add_argument("--predicate", choices=["raycast", "de9im"], default="raycast")
    p_bench.add_argument("--eps-rel", type=float, default=1e-8)
    p_bench.add_argument("--eps-abs", type=float, default=0.0)
    p_bench.add_argument("--max-evals", type=int, default=10_000_000)
    p_bench.add_argument("--jobs", type=int, default=1)
    return parser


def _apply_config(parser, argv):
    """Two-phase parse so a config file fills in defaults under the flags."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv[1:] if argv and argv[0] in _SUBCOMMANDS else argv)
    args = parser.parse_args(argv)
    if args.config:
        file_values = _read_config_file(args.config)
        cli_given = {a.split("=")[0].lstrip("-").replace("-", "_") for a in argv if a.startswith("--")}
        for key, raw in file_values.items():
            if key in cli_given or not hasattr(args, key):
                continue
            current = getattr(args, key)
            caster = type(current) if current is not None else str
            try:
                setattr(args, key, caster(raw) if caster is not bool else raw.lower() in ("1", "true", "yes"))
            except ValueError:
                raise SystemExit(_input_error(f"config value {key}={raw!r} has the wrong type"))
    return args


_SUBCOMMANDS = ("plan", "integrate", "bench")


def cmd_plan(args, parser):
    if args.waypoints < 1:
        parser.error("--waypoints must be >= 1")
    if args.levels < 1:
        parser.error("--levels must be >= 1")
    if args.rovers < 1:
        parser.error("--rovers must be >= 1")
    cfg = bench.SweepConfig(
        waypoints=args.waypoints,
        levels=args.levels,
        rovers=args.rovers,
        sensor_diameter=args.sensor_diameter,
    )
    pdm = random_pdm(args.seed * 1000 + bench.SUBSEED_PDM, cfg.mixture_size, cfg.bounds)
    route = planner.plan(pdm, waypoints=cfg.waypoints, levels=cfg.levels)
    grid = planner.MissionGrid.from_pdm(pdm, cfg.cells_per_side)
    cell = cfg.area_side / cfg.cells_per_side
    paths = planner.perturb_paths(
        route, rovers=cfg.rovers, spacing=cfg.spacing,
        seed=args.seed * 1000 + bench.SUBSEED_PATHS, cell_size=cell,
    )
    buffered = [
        geometry.buffer_polyline(p, cfg.sensor_diameter / 2.0, cfg.arc_segments)
        for p in paths
    ]
    region = geometry.clip_to_box(geometry.union(buffered), cfg.bounds)
    out = args.out_dir
    try:
        os.makedirs(out, exist_ok=True)
        route.to_csv(os.path.join(out, f"waypoints_seed{args.seed}.csv"), grid)
        planner.polylines_to_csv(paths, os.path.join(out, f"paths_seed{args.seed}.csv"))
        with open(os.path.join(out, f"pdm_seed{args.seed}.json"), "w") as f:
            f.write(pdm.to_json())
        with open(os.path.join(out, f"region_seed{args.seed}.json"), "w") as f:
            f.write(region.to_json())
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return 1
    print(f"wrote mission for seed {args.seed} to {out}")
    return 0


def cmd_integrate(args, parser):
    pdm = _load_json(args.pdm, GaussianMixturePdm.from_json, "PDM JSON")
    region = _load_json(args.region, PolygonSet.from_json, "PolygonSet JSON")
    if args.method == "cubature":
        tol = Tolerance(eps_abs=args.eps_abs, eps_rel=args.eps_rel, max_evals=args.max_evals)
        result = integrate_adaptive(pdm, region, tol)
        doc = result.to_json_dict()
    else:
        if args.n < 1:
            parser.error("--n must be >= 1")
        cfg = sampling.SamplingConfig(
            n=args.n, m=args.n, bounds=pdm.bounds, predicate=args.predicate
        )
        q = sampling.integrate_sampling(pdm, region, cfg)
        doc = {"q": q, "n": args.n, "predicate": args.predicate}
    if args.baseline is not None:
        doc["e_rel"] = sampling.relative_error(args.baseline, doc["q"])
    print(json.dumps(doc))
    return 0


def _bench_trial(payload):
    seed, cfg = payload
    try:
        return seed, bench.run_trial(seed, cfg), None
    except Exception as exc:  # surfaced in the failed-seed report
        return seed, None, repr(exc)


def cmd_bench(args, parser):
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    if args.n_max < args.n_min:
        parser.error("--n-max must be >= --n-min")
    n_values = tuple(n for n in bench.DEFAULT_N_VALUES if args.n_min <= n <= args.n_max)
    if not n_values:
        n_values = (args.n_min, args.n_max) if args.n_max > args.n_min else (args.n_min,)
    cfg = bench.SweepConfig(
        n_values=n_values,
        trials=args.trials,
        tolerance=Tolerance(eps_abs=args.eps_abs, eps_rel=args.eps_rel, max_evals=args.max_evals),
        rovers=args.rovers,
        sensor_diameter=args.sensor_diameter,
        waypoints=args.waypoints,
        levels=args.levels,
        predicate=args.predicate,
    )
    os.makedirs(args.out_dir, exist_ok=True)
    csv_path = os.path.join(args.out_dir, "trials.csv")
    summary_path = os.path.join(args.out_dir, "summary.json")
    seeds = list(range(args.seed, args.seed + args.trials))
    records, failed = [], []
    if args.jobs > 1:
        with open(csv_path, "w", newline="") as f:
            import csv as _csv

            writer = _csv.writer(f)
            writer.writerow(bench.CSV_HEADER.split(","))
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                for seed, rec, err in pool.map(_bench_trial, [(s, cfg) for s in seeds]):
                    if rec is None:
                        failed.append(seed)
                        print(f"trial {seed} failed: {err}", file=sys.stderr)
                        continue
                    records.append(rec)
                    bench._write_trial_rows(writer, rec)
                    f.flush()
    else:
        records, failed = bench.run_sweep(cfg, seeds=seeds, csv_path=csv_path)
    if records:
        summary = bench.aggregate(records)
        summary["failed_seeds"] = failed
        with open(summary_path, "w") as f:
            json.dump(summary, f, indent=2)
        print(summary_path)
    if failed:
        print(f"failed seeds: {failed}", file=sys.stderr)
        if len(failed) > 0.1 * len(seeds):
            return EXIT_PARTIAL
    return 0


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {"plan": cmd_plan, "integrate": cmd_integrate, "bench": cmd_bench}
    try:
        return handlers[args.command](args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
