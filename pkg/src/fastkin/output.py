"""Atomic file writers for run artifacts.

Every file is comma-separated text with a header row (the manifest is
key=value text), written to a temp file and renamed into place, and
formatted with repr-exact floats so identical runs produce identical bytes.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .euler import _pressure
from .grids import SpatialGrid
from .moments import Moments


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_table(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write a CSV table; cells may be strings or numbers."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(c if isinstance(c, str) else _fmt(c) for c in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def write_snapshot(path: Path, grid: SpatialGrid, state: Moments, gamma: float) -> None:
    """Write one moment-field snapshot, one row per cell.

    Columns: axis indices, center coordinates, rho, u components, theta,
    E, p.  Pressure uses the configured gamma; with the kinetic-consistent
    gamma it equals rho * theta.
    """
    d = grid.d
    axis_names = ["x", "y"][:d]
    header = (
        [f"i{n}" for n in axis_names]
        + axis_names
        + ["rho"]
        + [f"u{n}" for n in axis_names]
        + ["theta", "E", "p"]
    )
    idx = np.indices(grid.counts).reshape(d, -1)
    coords = grid.centers().reshape(d, -1)
    rho = state.rho.reshape(-1)
    u = state.u.reshape(d, -1)
    theta = state.theta.reshape(-1)
    energy = state.energy.reshape(-1)
    p = _pressure(state.data, d, gamma).reshape(-1)
    lines = [",".join(header)]
    for j in range(rho.size):
        cells = [str(int(idx[a, j])) for a in range(d)]
        cells += [_fmt(coords[a, j]) for a in range(d)]
        cells += [_fmt(rho[j])]
        cells += [_fmt(u[a, j]) for a in range(d)]
        cells += [_fmt(theta[j]), _fmt(energy[j]), _fmt(p[j])]
        lines.append(",".join(cells))
    _atomic_write(path, "\n".join(lines) + "\n")


def write_manifest(path: Path, entries: dict[str, str]) -> None:
    """Write key = value lines; the file parses back as a run config."""
    lines = [f"{k} = {v}" for k, v in entries.items()]
    _atomic_write(path, "\n".join(lines) + "\n")


def snapshot_name(cycle: int) -> str:
    return f"snapshot_{cycle:06d}.csv"
