"""Command-line front end.

    matterwave list-presets
    matterwave run --preset fig1 [--preset fig2a ...] --out results/
    matterwave run --config scenario.ini --out results/

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
Batch runs execute concurrently, bounded by MATTERWAVE_THREADS
(default: number of cores).
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

from .billiard import EventLimitError
from .dynamics import NoStableRootError, SingularityError
from .gp_modes import ParameterSolveError
from .scenario import (
    EXIT_CONFIG,
    EXIT_NUMERICAL,
    EXIT_OK,
    ConfigError,
    ScenarioConfig,
    get_preset,
    list_presets,
    read_config,
    run_scenario,
)
from .specfun import QuadratureError

_NUMERICAL_ERRORS = (SingularityError, NoStableRootError, ParameterSolveError,
                     EventLimitError, QuadratureError)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matterwave",
        description="Simulate a harmonically bound wall driven by "
                    "matter-wave pressure.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list-presets", help="show the figure preset table")

    run = sub.add_parser("run", help="run presets and/or config files")
    run.add_argument("--preset", action="append", default=[],
                     help="preset name (repeatable)")
    run.add_argument("--config", action="append", default=[],
                     help="INI scenario file (repeatable)")
    run.add_argument("--out", default="matterwave-out",
                     help="output directory (default: matterwave-out)")
    run.add_argument("--tol", type=float, default=None,
                     help="override integrator tolerance")
    run.add_argument("--t-end", type=float, default=None,
                     help="override integration end time")
    run.add_argument("--sample-dt", type=float, default=None,
                     help="override sampling interval")
    return parser


def _describe(cfg: ScenarioConfig) -> str:
    if cfg.kind == "quantum_atom":
        drive = f"B={cfg.B:g}"
    elif cfg.kind == "bec":
        drive = f"C={cfg.C:g} D={cfg.D:g}" if cfg.C is not None \
            else f"g={cfg.g:g} j={cfg.j}"
    else:
        drive = (f"m={cfg.m_atom:g} M={cfg.M_wall:g} "
                 f"v(0)={cfg.v_init:g}")
    return (f"{cfg.label:12s} {cfg.kind:18s} {drive:22s} "
            f"omega={cfg.omega:g} Q0={cfg.Q0:g} Q(0)={cfg.Q_init:g}")


def _run_one(cfg: ScenarioConfig, args) -> int:
    updates = {}
    if args.tol is not None:
        updates["tol"] = args.tol
    if args.t_end is not None:
        updates["t_end"] = args.t_end
    if args.sample_dt is not None:
        updates["sample_dt"] = args.sample_dt
    if updates:
        cfg = replace(cfg, **updates)
    try:
        result = run_scenario(cfg, out_dir=args.out)
    except ConfigError as exc:
        print(f"[{cfg.label}] config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _NUMERICAL_ERRORS as exc:
        print(f"[{cfg.label}] numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for key, val in result.summary.items():
        print(f"[{cfg.label}] {key} = {val}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "list-presets":
        for name, cfg in list_presets().items():
            print(_describe(cfg))
        return EXIT_OK

    configs: list[ScenarioConfig] = []
    try:
        for name in args.preset:
            configs.append(get_preset(name))
        for path in args.config:
            configs.append(read_config(path))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not configs:
        print("nothing to run: pass --preset and/or --config", file=sys.stderr)
        return EXIT_CONFIG

    if len(configs) == 1:
        return _run_one(configs[0], args)

    try:
        workers = int(os.environ.get("MATTERWAVE_THREADS", "") or 0)
    except ValueError:
        workers = 0
    if workers <= 0:
        workers = os.cpu_count() or 1
    with ThreadPoolExecutor(max_workers=workers) as pool:
        codes = list(pool.map(lambda c: _run_one(c, args), configs))
    return max(codes)


if __name__ == "__main__":
    sys.exit(main())
