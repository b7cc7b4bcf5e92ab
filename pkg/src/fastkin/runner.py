"""Run orchestration: config resolution, time loops, studies, benchmarks.

A run is described by a flat key=value config (section-prefixed keys, see
KEYS) that the written manifest echoes verbatim, so a manifest reproduces
its run bit for bit.  Wall time is accumulated around solver steps only;
output written between steps does not count toward timing.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .euler import EulerState, euler_step, euler_timestep
from .grids import SpatialGrid, VelocityGrid, build_velocity_grid
from .hofks import HybridState, hofks_step, init_hybrid_state
from .moments import Moments
from .output import snapshot_name, write_manifest, write_snapshot, write_table
from .problems import PROBLEMS, ProblemSpec, check_velocity_coverage, error_norms
from .projection import build_conservation_operator, projected_equilibrium
from .transport import fks_step, fks_timestep, make_field

SCHEMES = ("fks", "hofks", "euler-upwind", "euler-muscl")
OUTDIR_ENV = "FASTKIN_OUTDIR"


@dataclass(frozen=True)
class RunConfig:
    """Resolved or partially-resolved run parameters; None means problem default."""

    problem: str
    scheme: str
    cells: tuple[int, ...] | None = None
    nv: int | None = None
    vbounds: tuple[float, float] | None = None
    tau: float | None = None
    cfl: float = 1.0
    euler_factor: float = 0.5
    gamma: float | None = None
    t_final: float | None = None
    center: tuple[float, float] | None = None
    outdir: str = "out"
    cadence: int = 0
    deterministic: bool = True

    def validate(self) -> None:
        if self.problem not in PROBLEMS:
            raise ConfigError(f"unknown problem {self.problem!r}; have {sorted(PROBLEMS)}")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; have {SCHEMES}")
        if self.tau is not None and self.tau <= 0.0:
            raise ConfigError(f"tau must be positive, got {self.tau}")
        if self.cfl <= 0.0 or self.euler_factor <= 0.0:
            raise ConfigError("cfl and euler factor must be positive")
        if self.cadence < 0:
            raise ConfigError(f"cadence must be nonnegative, got {self.cadence}")
        if self.t_final is not None and self.t_final < 0.0:
            raise ConfigError(f"final time must be nonnegative, got {self.t_final}")
        if not self.deterministic:
            raise ConfigError("non-deterministic runs are not supported")


# config keys <-> RunConfig fields; values are (field, parser, formatter)
def _ints(s: str) -> tuple[int, ...]:
    return tuple(int(p) for p in s.split(","))


def _floats2(s: str) -> tuple[float, float]:
    parts = [float(p) for p in s.split(",")]
    if len(parts) != 2:
        raise ConfigError(f"expected two comma-separated values, got {s!r}")
    return parts[0], parts[1]


def _bool(s: str) -> bool:
    if s.lower() in ("true", "1", "yes"):
        return True
    if s.lower() in ("false", "0", "no"):
        return False
    raise ConfigError(f"expected a boolean, got {s!r}")


_join = ",".join
KEYS = {
    "problem.name": ("problem", str, str),
    "problem.center": ("center", _floats2, lambda v: _join(format(x, ".17g") for x in v)),
    "grid.cells": ("cells", _ints, lambda v: _join(str(x) for x in v)),
    "velocity.nodes": ("nv", int, str),
    "velocity.bounds": ("vbounds", _floats2, lambda v: _join(format(x, ".17g") for x in v)),
    "solver.scheme": ("scheme", str, str),
    "solver.tau": ("tau", float, lambda v: format(v, ".17g")),
    "solver.cfl": ("cfl", float, lambda v: format(v, ".17g")),
    "solver.euler_factor": ("euler_factor", float, lambda v: format(v, ".17g")),
    "solver.gamma": ("gamma", float, lambda v: format(v, ".17g")),
    "solver.deterministic": ("deterministic", _bool, lambda v: "true" if v else "false"),
    "time.final": ("t_final", float, lambda v: format(v, ".17g")),
    "output.dir": ("outdir", str, str),
    "output.cadence": ("cadence", int, str),
}
_FIELD_TO_KEY = {f: k for k, (f, _, _) in KEYS.items()}


def parse_config_text(text: str) -> dict[str, str]:
    """Parse key = value lines; '#' starts a comment, blanks are skipped.

    Keys with a 'derived.' prefix are informational manifest entries and
    are ignored.  Unknown keys are rejected.
    """
    out: dict[str, str] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {ln}: expected 'key = value', got {raw!r}")
        key, value = (p.strip() for p in line.split("=", 1))
        if key.startswith("derived."):
            continue
        if key not in KEYS:
            raise ConfigError(f"line {ln}: unknown config key {key!r}")
        out[key] = value
    return out


def config_from_mapping(mapping: dict[str, str]) -> RunConfig:
    kwargs = {}
    for key, value in mapping.items():
        fieldname, parser, _ = KEYS[key]
        try:
            kwargs[fieldname] = parser(value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {value!r} ({exc})") from exc
    if "problem" not in kwargs or "scheme" not in kwargs:
        raise ConfigError("config must set problem.name and solver.scheme")
    return RunConfig(**kwargs)


def _problem_spec(config: RunConfig) -> ProblemSpec:
    factory = PROBLEMS[config.problem]
    kwargs = {}
    if config.problem == "vortex2d":
        if config.gamma is not None:
            kwargs["gamma"] = config.gamma
        if config.center is not None:
            kwargs["center"] = config.center
    elif config.tau is not None:
        kwargs["tau"] = config.tau
    return factory(**kwargs)


def resolve(config: RunConfig) -> tuple[RunConfig, ProblemSpec]:
    """Fill problem defaults into unset fields and validate the result."""
    config.validate()
    spec = _problem_spec(config)
    resolved = replace(
        config,
        cells=config.cells or spec.cells,
        nv=config.nv or spec.nv,
        vbounds=config.vbounds or spec.vbounds,
        tau=config.tau if config.tau is not None else spec.tau,
        gamma=config.gamma if config.gamma is not None else spec.gamma,
        t_final=config.t_final if config.t_final is not None else spec.t_final,
        center=config.center or ((5.0, 5.0) if config.problem == "vortex2d" else None),
        outdir=os.environ.get(OUTDIR_ENV, config.outdir),
    )
    if len(resolved.cells) != spec.d:
        raise ConfigError(f"problem is {spec.d}D but grid.cells has {len(resolved.cells)} axes")
    return resolved, spec


def manifest_entries(config: RunConfig, derived: dict[str, str] | None = None) -> dict[str, str]:
    entries: dict[str, str] = {}
    for key, (fieldname, _, fmt) in KEYS.items():
        value = getattr(config, fieldname)
        if value is None:
            continue
        entries[key] = fmt(value)
    for k, v in (derived or {}).items():
        entries[f"derived.{k}"] = v
    return entries


@dataclass(frozen=True)
class TimingRecord:
    """Wall-time accounting of one run's solver loop."""

    cells: int
    dof: int
    cycles: int
    total: float

    @property
    def per_cycle(self) -> float:
        return self.total / self.cycles if self.cycles else 0.0

    @property
    def per_cell(self) -> float:
        return self.per_cycle / self.cells


@dataclass
class RunResult:
    config: RunConfig
    grid: SpatialGrid
    vgrid: VelocityGrid | None
    final: Moments
    timing: TimingRecord
    outdir: Path
    errors: tuple[float, float] | None = None
    snapshots: list[Path] = field(default_factory=list)


class _Stepper:
    """Scheme-specific state plus a step(dt) -> Moments closure."""

    def __init__(self, config: RunConfig, spec: ProblemSpec, grid: SpatialGrid):
        self.kinetic = config.scheme in ("fks", "hofks")
        self.config = config
        self.grid = grid
        u0 = spec.initial(grid)
        u0.require_valid("initial data")
        self.vgrid: VelocityGrid | None = None
        if self.kinetic:
            self.vgrid = build_velocity_grid(spec.d, config.nv, config.vbounds)
            check_velocity_coverage(u0, self.vgrid)
            self.op = build_conservation_operator(self.vgrid)
            f0 = projected_equilibrium(u0, self.vgrid, self.op)
            fld = make_field(f0, self.vgrid, grid)
            self.kinetic_dt = fks_timestep(self.vgrid, grid, config.cfl)
            if config.scheme == "fks":
                self.field = fld
                self.moments = u0
            else:
                self.hybrid: HybridState = init_hybrid_state(fld, self.op)
                self.moments = self.hybrid.moments
        else:
            self.state = EulerState(u0, grid, config.gamma)
            self.moments = u0

    @property
    def dof(self) -> int:
        per_cell = self.vgrid.n if self.kinetic else self.grid.d + 2
        return self.grid.ncells * per_cell

    def next_dt(self) -> float:
        cfg = self.config
        if cfg.scheme == "fks":
            return self.kinetic_dt
        if cfg.scheme == "hofks":
            euler_dt = euler_timestep(
                EulerState(self.hybrid.moments, self.grid, cfg.gamma), cfg.euler_factor
            )
            return min(self.kinetic_dt, euler_dt)
        return euler_timestep(self.state, cfg.euler_factor)

    def step(self, dt: float) -> Moments:
        cfg = self.config
        if cfg.scheme == "fks":
            self.moments = fks_step(self.field, self.op, dt, cfg.tau)
        elif cfg.scheme == "hofks":
            self.moments = hofks_step(self.hybrid, self.op, dt, cfg.tau, cfg.gamma).moments
        else:
            scheme = "muscl" if cfg.scheme == "euler-muscl" else "upwind"
            self.state = euler_step(self.state, dt, scheme)
            self.moments = self.state.moments
        return self.moments


def run(config: RunConfig) -> RunResult:
    """Execute one run and write its artifacts.

    Writes a manifest, snapshots (cadence-controlled, final always),
    timing.csv, and errors.csv when the problem has an exact solution.
    """
    config, spec = resolve(config)
    grid = spec.build_grid(config.cells)
    stepper = _Stepper(config, spec, grid)
    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    derived = {
        "dx": format(grid.dx, ".17g"),
        "cells_total": str(grid.ncells),
        "dof": str(stepper.dof),
    }
    if stepper.vgrid is not None:
        derived["dv"] = format(stepper.vgrid.dv, ".17g")
    write_manifest(outdir / "manifest.cfg", manifest_entries(config, derived))

    result = RunResult(
        config=config,
        grid=grid,
        vgrid=stepper.vgrid,
        final=stepper.moments,
        timing=TimingRecord(grid.ncells, stepper.dof, 0, 0.0),
        outdir=outdir,
    )

    def snap(cycle: int) -> None:
        path = outdir / snapshot_name(cycle)
        if path in result.snapshots:
            return
        write_snapshot(path, grid, stepper.moments, config.gamma)
        result.snapshots.append(path)

    if config.cadence > 0:
        snap(0)

    t = 0.0
    cycle = 0
    elapsed = 0.0
    # land exactly on t_final; the epsilon guards against a spurious tiny last step
    while t < config.t_final * (1.0 - 1e-12):
        dt = min(stepper.next_dt(), config.t_final - t)
        tic = time.perf_counter()
        stepper.step(dt)
        elapsed += time.perf_counter() - tic
        t += dt
        cycle += 1
        if config.cadence > 0 and cycle % config.cadence == 0:
            snap(cycle)

    result.timing = TimingRecord(grid.ncells, stepper.dof, cycle, elapsed)
    result.final = stepper.moments
    snap(cycle)

    write_table(
        outdir / "timing.csv",
        ["cells", "dof", "cycles", "wall_s", "per_cycle_s", "per_cell_s"],
        [[
            str(result.timing.cells),
            str(result.timing.dof),
            str(result.timing.cycles),
            result.timing.total,
            result.timing.per_cycle,
            result.timing.per_cell,
        ]],
    )

    if spec.exact_density is not None:
        exact = spec.exact_density(grid.centers(), config.t_final)
        result.errors = error_norms(stepper.moments.rho, exact)
        write_table(
            outdir / "errors.csv",
            ["cells_per_axis", "eps1", "epsinf"],
            [[str(grid.counts[0]), result.errors[0], result.errors[1]]],
        )
    return result


def convergence_study(
    config: RunConfig, meshes: list[int], refine_dt: bool = True
) -> list[dict[str, float | int | str]]:
    """Run one scheme over a mesh sequence and tabulate errors and rates.

    With refine_dt the step shrinks by an extra mesh ratio (dt ~ dx^2) so
    the first-order-in-time error stays below the spatial one and the rates
    measure spatial accuracy; disable it to study the coupled error.
    Writes convergence_<scheme>.csv in the output directory; per-mesh run
    artifacts land in subdirectories.
    """
    base, spec = resolve(config)
    if spec.exact_density is None:
        raise ConfigError(f"problem {spec.name!r} has no exact solution")
    rows: list[dict[str, float | int | str]] = []
    outdir = Path(base.outdir)
    for m in meshes:
        factor = meshes[0] / m if refine_dt else 1.0
        sub = replace(
            base,
            cells=(m,) * spec.d,
            cfl=base.cfl * factor,
            euler_factor=base.euler_factor * factor,
            outdir=str(outdir / f"{base.scheme}_m{m}"),
        )
        res = run(sub)
        eps1, epsinf = res.errors
        row: dict[str, float | int | str] = {
            "scheme": base.scheme,
            "mesh": m,
            "cells": m**spec.d,
            "eps1": eps1,
            "rate1": "",
            "epsinf": epsinf,
            "rateinf": "",
        }
        if rows:
            prev = rows[-1]
            ratio = math.log(float(prev["mesh"]) / m)
            row["rate1"] = math.log(eps1 / float(prev["eps1"])) / ratio
            row["rateinf"] = math.log(epsinf / float(prev["epsinf"])) / ratio
        rows.append(row)
    header = ["scheme", "mesh", "cells", "eps1", "rate1", "epsinf", "rateinf"]
    outdir.mkdir(parents=True, exist_ok=True)
    write_table(
        outdir / f"convergence_{base.scheme}.csv",
        header,
        [[str(r["scheme"]), str(r["mesh"]), str(r["cells"]), r["eps1"], _cell(r["rate1"]), r["epsinf"], _cell(r["rateinf"])]
         for r in rows],
    )
    return rows


def _cell(v) -> str:
    return v if isinstance(v, str) else format(float(v), ".17g")


def bench(
    config: RunConfig, schemes: list[str], meshes: list[int]
) -> list[dict[str, float | int | str]]:
    """Time scheme x mesh runs and tabulate per-cycle and per-cell costs.

    Writes bench.csv, and cost_ratio.csv whenever both kinetic schemes ran
    (per-cycle hofks / fks at equal mesh).
    """
    base, spec = resolve(config)
    rows: list[dict[str, float | int | str]] = []
    outdir = Path(base.outdir)
    for scheme in schemes:
        if scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {scheme!r}")
        for m in meshes:
            sub = replace(
                base,
                scheme=scheme,
                cells=(m,) * spec.d,
                cadence=0,
                outdir=str(outdir / f"bench_{scheme}_m{m}"),
            )
            res = run(sub)
            rows.append(
                {
                    "scheme": scheme,
                    "mesh": m,
                    "cells": res.timing.cells,
                    "dof": res.timing.dof,
                    "cycles": res.timing.cycles,
                    "wall_s": res.timing.total,
                    "per_cycle_s": res.timing.per_cycle,
                    "per_cell_s": res.timing.per_cell,
                }
            )
    outdir.mkdir(parents=True, exist_ok=True)
    write_table(
        outdir / "bench.csv",
        ["scheme", "mesh", "cells", "dof", "cycles", "wall_s", "per_cycle_s", "per_cell_s"],
        [[str(r["scheme"]), str(r["mesh"]), str(r["cells"]), str(r["dof"]), str(r["cycles"]),
          r["wall_s"], r["per_cycle_s"], r["per_cell_s"]] for r in rows],
    )
    per_cycle = {(r["scheme"], r["mesh"]): float(r["per_cycle_s"]) for r in rows}
    ratios = []
    for m in meshes:
        if ("fks", m) in per_cycle and ("hofks", m) in per_cycle:
            ratios.append([str(m), per_cycle[("hofks", m)] / per_cycle[("fks", m)]])
    if ratios:
        write_table(outdir / "cost_ratio.csv", ["mesh", "hofks_over_fks_per_cycle"], ratios)
    return rows
