"""Exact transport of piecewise-constant per-node profiles, and the BGK step.

Each velocity node k carries a piecewise-constant profile that free
streaming translates rigidly by v_k * t.  Transport therefore never moves
data: it only advances a per-node displacement, measured in cells.
Evaluating the profile at the cell centers reduces to an integer index
shift per node and axis, because the fractional part of the displacement
never moves a center across more than one interface.

After relaxation the cell values change, so the step re-anchors: the
relaxed center values become the stored array and the integer part of the
displacement is folded into `anchor`.  On periodic axes this is exactly
the same bookkeeping as writing back through the shift permutation; on
copy axes it keeps every read within one cell of the boundary, which is
what makes zero-gradient inflow well defined.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .grids import SpatialGrid, VelocityGrid
from .moments import Moments, discrete_moments
from .projection import ConservationOperator, projected_equilibrium

# Below this value of dt/tau one relaxation step changes nothing at double
# precision, so the weight snaps to exactly 1 and the step is a pure shift.
_IDENTITY_RELAXATION = 1e-11


@dataclass
class DistributionField:
    """Per-node piecewise-constant profiles on a spatial mesh.

    Attributes:
        vgrid: velocity lattice (n nodes).
        sgrid: spatial mesh.
        values: cell values, shape (n, *sgrid.counts).
        shift: cumulative displacement v_k * t / dx, shape (n, d).
        anchor: integer part of the displacement already folded into
            `values` by re-anchoring, shape (n, d).
        time: total transported time.
    """

    vgrid: VelocityGrid
    sgrid: SpatialGrid
    values: np.ndarray
    shift: np.ndarray
    anchor: np.ndarray = field(default=None)  # type: ignore[assignment]
    time: float = 0.0

    def __post_init__(self):
        if self.anchor is None:
            self.anchor = np.zeros((self.vgrid.n, self.sgrid.d), dtype=np.int64)


def make_field(values: np.ndarray, vgrid: VelocityGrid, sgrid: SpatialGrid) -> DistributionField:
    """Wrap freshly initialized cell values (zero displacement)."""
    expected = (vgrid.n,) + sgrid.counts
    if values.shape != expected:
        raise ConfigError(f"field values shape {values.shape}, expected {expected}")
    shift = np.zeros((vgrid.n, sgrid.d))
    return DistributionField(vgrid=vgrid, sgrid=sgrid, values=values, shift=shift)


@dataclass
class EquilibriumField:
    """Equilibrium cell values sharing the frame of a companion DistributionField.

    The values are stored against the companion's anchor, so transporting the
    companion transports the equilibrium with it.
    """

    values: np.ndarray


def transport(fld: DistributionField, dt: float) -> DistributionField:
    """Advance the profiles by dt: displacement bump only, no data motion."""
    fld.shift += fld.vgrid.nodes * (dt / fld.sgrid.dx)
    fld.time += dt
    return fld


def _source_offsets(fld: DistributionField) -> np.ndarray:
    """Integer index offsets per node and axis: center j reads cell j + off."""
    sigma = fld.shift - fld.anchor
    return np.floor(0.5 - sigma).astype(np.int64)


def _gather(values: np.ndarray, offsets: np.ndarray, sgrid: SpatialGrid) -> np.ndarray:
    """Read each node's profile at the cell centers given integer offsets."""
    out = np.empty_like(values)
    for k in range(values.shape[0]):
        row = values[k]
        for ax in range(sgrid.d):
            off = int(offsets[k, ax])
            if off == 0:
                continue
            if sgrid.boundaries[ax] == "periodic":
                row = np.roll(row, -off, axis=ax)
            else:
                idx = np.clip(np.arange(sgrid.counts[ax]) + off, 0, sgrid.counts[ax] - 1)
                row = np.take(row, idx, axis=ax)
        out[k] = row
    return out


def evaluate_at_centers(fld: DistributionField) -> np.ndarray:
    """Sample every node profile at the cell centers, shape (n, *counts).

    The profile of node k is the stored data translated by shift_k cells;
    center j therefore reads stored cell floor(j - shift_k + 1/2) per axis
    (half-open cells), wrapped on periodic axes and clamped on copy axes.
    """
    return _gather(fld.values, _source_offsets(fld), fld.sgrid)


def relaxation_weight(dt: float, tau: float) -> float:
    """Convex weight lambda = exp(-dt/tau) of the pre-relaxation values.

    Snaps to exactly 1.0 when dt/tau is below the double-precision identity
    threshold and decays to exactly 0.0 in the stiff limit, so the two
    degenerate regimes are reproduced without rounding residue.

    Raises:
        ConfigError: tau <= 0 or dt < 0.
    """
    if tau <= 0.0:
        raise ConfigError(f"relaxation time must be positive, got {tau}")
    if dt < 0.0:
        raise ConfigError(f"time step must be nonnegative, got {dt}")
    x = dt / tau
    if x <= _IDENTITY_RELAXATION:
        return 1.0
    return float(np.exp(-x))


def relax(f_star: np.ndarray, eq: np.ndarray, dt: float, tau: float) -> np.ndarray:
    """BGK relaxation toward equilibrium: lambda f* + (1 - lambda) eq."""
    lam = relaxation_weight(dt, tau)
    return _mix(f_star, eq, lam)


def _mix(f_star: np.ndarray, eq: np.ndarray, lam: float) -> np.ndarray:
    # branch on the exact endpoints so degenerate regimes are bitwise clean
    if lam == 1.0:
        return f_star.copy()
    if lam == 0.0:
        return eq.copy()
    return f_star + (1.0 - lam) * (eq - f_star)


def fks_timestep(vgrid: VelocityGrid, sgrid: SpatialGrid, cfl: float = 1.0) -> float:
    """Kinetic time step dt = cfl * dx / max_k |v_k|, per-axis infinity norm.

    cfl > 1 is permitted: transport stays exact for any displacement.
    """
    vmax = vgrid.max_speed
    if vmax <= 0.0:
        raise ConfigError("velocity lattice has no moving node; time step undefined")
    if cfl <= 0.0:
        raise ConfigError(f"cfl must be positive, got {cfl}")
    return cfl * sgrid.dx / vmax


def _reanchor(fld: DistributionField, new_values: np.ndarray, offsets: np.ndarray) -> None:
    """Store center values as the new profile data, folding in the offsets."""
    fld.values = new_values
    fld.anchor -= offsets


def fks_step(
    fld: DistributionField, op: ConservationOperator, dt: float, tau: float
) -> Moments:
    """One kinetic cycle: exact transport, then pointwise BGK relaxation.

    Transport advances the per-node displacement; the profiles are then
    sampled at the cell centers, relaxed toward the moment-matched
    equilibrium of their own moments, and re-anchored.  Relaxation leaves
    the cell moments unchanged, so the returned moments are both the
    post-transport and post-relaxation ones.

    Returns:
        Moment field of the updated distribution.
    """
    transport(fld, dt)
    offsets = _source_offsets(fld)
    f_star = _gather(fld.values, offsets, fld.sgrid)
    state = discrete_moments(f_star, fld.vgrid)
    lam = relaxation_weight(dt, tau)
    if lam == 1.0:
        _reanchor(fld, f_star, offsets)
        return state
    state.require_valid("fks_step")
    eq = projected_equilibrium(state, fld.vgrid, op)
    _reanchor(fld, _mix(f_star, eq, lam), offsets)
    return state
