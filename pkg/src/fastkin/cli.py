"""Command-line interface: run, converge, bench, list-problems.

Flags override config-file values; the FASTKIN_OUTDIR environment variable
overrides the output directory over both.  Exit codes: 0 success, 2 bad
configuration, 3 mid-run solver failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigError, InvalidStateError
from .problems import PROBLEMS
from .runner import (
    RunConfig,
    SCHEMES,
    bench,
    config_from_mapping,
    convergence_study,
    parse_config_text,
    run,
)


def _add_run_flags(p: argparse.ArgumentParser, need_scheme: bool = True) -> None:
    p.add_argument("--config", type=Path, help="key=value config file (flags override it)")
    p.add_argument("--problem", choices=sorted(PROBLEMS), help="problem name")
    if need_scheme:
        p.add_argument("--scheme", choices=SCHEMES, help="solver scheme")
    p.add_argument("--cells", help="cells per axis, comma separated (e.g. 100,100)")
    p.add_argument("--nv", type=int, help="velocity nodes per axis")
    p.add_argument("--vbounds", help="velocity bounds lo,hi")
    p.add_argument("--tau", type=float, help="relaxation time")
    p.add_argument("--cfl", type=float, help="kinetic CFL factor (default 1)")
    p.add_argument("--euler-factor", type=float, help="euler step factor (default 0.5)")
    p.add_argument("--gamma", type=float, help="ratio of specific heats override")
    p.add_argument("--tfinal", type=float, help="final time override")
    p.add_argument("--center", help="vortex center x,y override")
    p.add_argument("--out", help="output directory (default ./out)")
    p.add_argument("--cadence", type=int, help="snapshot every k cycles (0: final only)")


_FLAG_TO_KEY = {
    "problem": "problem.name",
    "scheme": "solver.scheme",
    "cells": "grid.cells",
    "nv": "velocity.nodes",
    "vbounds": "velocity.bounds",
    "tau": "solver.tau",
    "cfl": "solver.cfl",
    "euler_factor": "solver.euler_factor",
    "gamma": "solver.gamma",
    "tfinal": "time.final",
    "center": "problem.center",
    "out": "output.dir",
    "cadence": "output.cadence",
}


def _config_from_args(args: argparse.Namespace, any_scheme: bool = False) -> RunConfig:
    mapping: dict[str, str] = {}
    if args.config is not None:
        mapping.update(parse_config_text(args.config.read_text()))
    for flag, key in _FLAG_TO_KEY.items():
        value = getattr(args, flag, None)
        if value is not None:
            mapping[key] = str(value)
    if any_scheme:
        # bench supplies its own scheme list; the base config just needs one
        mapping.setdefault("solver.scheme", "fks")
    return config_from_mapping(mapping)


def _meshes(arg: str) -> list[int]:
    return [int(p) for p in arg.split(",")]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="fastkin",
        description="Discrete-velocity BGK solver with exact transport and a hybrid Euler coupling",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one problem/scheme and write artifacts")
    _add_run_flags(p_run)

    p_conv = sub.add_parser("converge", help="mesh-refinement error study on a problem with an exact solution")
    _add_run_flags(p_conv)
    p_conv.add_argument("--meshes", default="25,50,100", help="cells per axis, comma separated")
    p_conv.add_argument(
        "--no-refine-dt",
        action="store_true",
        help="keep dt ~ dx instead of dx^2 (measures the coupled space-time error)",
    )

    p_bench = sub.add_parser("bench", help="time schemes across meshes; reports per-cycle and per-cell cost")
    _add_run_flags(p_bench, need_scheme=False)
    p_bench.add_argument("--schemes", default="fks,hofks", help="schemes to time, comma separated")
    p_bench.add_argument("--meshes", default="100", help="cells per axis, comma separated")

    sub.add_parser("list-problems", help="list available problems")

    args = parser.parse_args(argv)
    try:
        if args.command == "list-problems":
            for name in sorted(PROBLEMS):
                print(f"{name:12s} {PROBLEMS[name]().description}")
            return 0
        if args.command == "run":
            res = run(_config_from_args(args))
            print(f"wrote {len(res.snapshots)} snapshot(s) to {res.outdir}")
            print(
                f"cells={res.timing.cells} cycles={res.timing.cycles} "
                f"wall={res.timing.total:.3f}s per_cycle={res.timing.per_cycle:.3e}s"
            )
            if res.errors is not None:
                print(f"eps1={res.errors[0]:.6e} epsinf={res.errors[1]:.6e}")
            return 0
        if args.command == "converge":
            config = _config_from_args(args)
            rows = convergence_study(
                config, _meshes(args.meshes), refine_dt=not args.no_refine_dt
            )
            for r in rows:
                rate = f"{float(r['rate1']):.2f}" if r["rate1"] != "" else "-"
                print(f"mesh {r['mesh']:4d}  eps1={r['eps1']:.6e}  rate1={rate}")
            return 0
        if args.command == "bench":
            config = _config_from_args(args, any_scheme=True)
            rows = bench(config, args.schemes.split(","), _meshes(args.meshes))
            for r in rows:
                print(
                    f"{r['scheme']:12s} mesh {r['mesh']:4d}  cycles={r['cycles']:4d}  "
                    f"per_cycle={float(r['per_cycle_s']):.4e}s  per_cell={float(r['per_cell_s']):.3e}s"
                )
            return 0
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidStateError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
