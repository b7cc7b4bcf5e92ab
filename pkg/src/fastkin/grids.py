"""Cartesian lattices in velocity and physical space.

Both lattices are uniform with a single scalar spacing shared by every
axis.  Velocity nodes are laid out row-major over the axes, so a node
index k maps to integer coordinates via ``np.unravel_index(k, counts)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

BOUNDARY_KINDS = ("periodic", "copy")


@dataclass(frozen=True)
class VelocityGrid:
    """Bounded velocity lattice v_k = k * dv + offset.

    Attributes:
        d: dimension (1 or 2).
        counts: nodes per axis.
        dv: lattice spacing, identical on every axis.
        offset: coordinate of the node with integer index 0 on each axis.
        nodes: (n, d) array of node coordinates, row-major over axes.
    """

    d: int
    counts: tuple[int, ...]
    dv: float
    offset: np.ndarray
    nodes: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.nodes.shape[0]

    @property
    def weight(self) -> float:
        """Quadrature weight dv**d of one node."""
        return self.dv**self.d

    @property
    def max_speed(self) -> float:
        """Largest |v_a| over all nodes and axes (per-axis infinity norm)."""
        return float(np.abs(self.nodes).max())


def build_velocity_grid(
    d: int,
    counts: int | tuple[int, ...],
    bounds: tuple[float, float],
) -> VelocityGrid:
    """Build a velocity lattice whose extreme nodes sit exactly on the bounds.

    Args:
        d: dimension.
        counts: nodes per axis (scalar applies to every axis).
        bounds: (lo, hi) node range, inclusive on both ends, shared by all axes.

    Raises:
        ConfigError: fewer than 2 nodes per axis, or lo >= hi.
    """
    if d not in (1, 2):
        raise ConfigError(f"velocity grid dimension must be 1 or 2, got {d}")
    counts_t = (counts,) * d if isinstance(counts, int) else tuple(counts)
    if len(counts_t) != d:
        raise ConfigError(f"expected {d} axis counts, got {counts_t}")
    if any(c < 2 for c in counts_t):
        raise ConfigError(f"need at least 2 velocity nodes per axis, got {counts_t}")
    lo, hi = float(bounds[0]), float(bounds[1])
    if not lo < hi:
        raise ConfigError(f"velocity bounds must satisfy lo < hi, got ({lo}, {hi})")
    spacings = [(hi - lo) / (c - 1) for c in counts_t]
    if any(abs(s - spacings[0]) > 1e-12 * abs(spacings[0]) for s in spacings):
        raise ConfigError("axis counts give unequal spacings; the lattice spacing is scalar")
    dv = spacings[0]
    idx = np.indices(counts_t).reshape(d, -1).T.astype(float)
    offset = np.full(d, lo)
    nodes = idx * dv + offset
    return VelocityGrid(d=d, counts=counts_t, dv=dv, offset=offset, nodes=nodes)


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform cell-centered mesh, cells half-open [x_j - dx/2, x_j + dx/2).

    Attributes:
        d: dimension (1 or 2).
        counts: cells per axis.
        dx: cell size, identical on every axis.
        offset: center coordinate of cell j = 0 on each axis.
        boundaries: per-axis boundary kind, "periodic" or "copy".
    """

    d: int
    counts: tuple[int, ...]
    dx: float
    offset: np.ndarray
    boundaries: tuple[str, ...]

    @property
    def ncells(self) -> int:
        return int(np.prod(self.counts))

    def axis_centers(self, axis: int) -> np.ndarray:
        return np.arange(self.counts[axis]) * self.dx + self.offset[axis]

    def centers(self) -> np.ndarray:
        """Cell-center coordinates, shape (d, *counts)."""
        axes = [self.axis_centers(a) for a in range(self.d)]
        return np.stack(np.meshgrid(*axes, indexing="ij"))


def build_spatial_grid(
    d: int,
    cells: int | tuple[int, ...],
    extent: tuple[float, float],
    boundary: str | tuple[str, ...],
) -> SpatialGrid:
    """Build a mesh of `cells` cells per axis covering [lo, hi] on every axis.

    Raises:
        ConfigError: non-square cells, unknown boundary kind, or cells < 1.
    """
    if d not in (1, 2):
        raise ConfigError(f"spatial grid dimension must be 1 or 2, got {d}")
    cells_t = (cells,) * d if isinstance(cells, int) else tuple(cells)
    if len(cells_t) != d:
        raise ConfigError(f"expected {d} axis cell counts, got {cells_t}")
    if any(c < 1 for c in cells_t):
        raise ConfigError(f"cell counts must be positive, got {cells_t}")
    lo, hi = float(extent[0]), float(extent[1])
    if not lo < hi:
        raise ConfigError(f"domain extent must satisfy lo < hi, got ({lo}, {hi})")
    spacings = [(hi - lo) / c for c in cells_t]
    if any(abs(s - spacings[0]) > 1e-12 * abs(spacings[0]) for s in spacings):
        raise ConfigError("axis cell counts give unequal spacings; dx is scalar")
    dx = spacings[0]
    bnd_t = (boundary,) * d if isinstance(boundary, str) else tuple(boundary)
    if len(bnd_t) != d or any(b not in BOUNDARY_KINDS for b in bnd_t):
        raise ConfigError(f"boundary kinds must be in {BOUNDARY_KINDS}, got {bnd_t}")
    offset = np.full(d, lo + 0.5 * dx)
    return SpatialGrid(d=d, counts=cells_t, dx=dx, offset=offset, boundaries=bnd_t)
