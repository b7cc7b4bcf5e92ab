"""Moment-conserving L2 correction of discrete-velocity data.

A bounded velocity lattice does not reproduce the moments of the pointwise
Maxwellian exactly, so equilibria (and any other per-node data) are
corrected by the smallest L2 change that restores the target moments:

    minimize ||f - f_tilde||^2  subject to  C f = U,

whose closed-form solution is f = f_tilde + D (U - C f_tilde) with
D = C^T (C C^T)^{-1}.  The correction conserves moments exactly but does
not keep node values nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .grids import VelocityGrid
from .moments import Moments, collision_invariants, maxwellian


@dataclass(frozen=True)
class ConservationOperator:
    """Precomputed moment matrix C (d+2, n) and corrector D = C^T (C C^T)^{-1}."""

    vgrid: VelocityGrid
    C: np.ndarray = field(repr=False)
    D: np.ndarray = field(repr=False)


def build_conservation_operator(vgrid: VelocityGrid) -> ConservationOperator:
    """Assemble C and D for a velocity lattice.

    Column k of C is dv**d * (1, v_k, |v_k|^2 / 2), so C f gives the discrete
    moments of f directly.

    Raises:
        ConfigError: the Gram matrix C C^T is singular (degenerate lattice)
            or the identity check C D = I fails.
    """
    C = collision_invariants(vgrid) * vgrid.weight
    gram = C @ C.T
    try:
        # rows of solve(gram, C) are (C C^T)^{-1} C; transpose gives D
        D = np.linalg.solve(gram, C).T
    except np.linalg.LinAlgError as exc:
        raise ConfigError(f"velocity lattice gives singular moment Gram matrix: {exc}") from exc
    resid = np.abs(C @ D - np.eye(vgrid.d + 2)).max()
    if not resid < 1e-10:
        raise ConfigError(f"conservation operator identity check failed: |CD - I| = {resid:.3e}")
    return ConservationOperator(vgrid=vgrid, C=C, D=D)


def conservative_correction(
    values: np.ndarray, target: Moments, op: ConservationOperator
) -> np.ndarray:
    """Smallest L2 change of `values` whose discrete moments equal `target`.

    Args:
        values: per-node data, shape (n, *spatial).
        target: moments to enforce, data shape (d+2, *spatial).

    Returns:
        Corrected values, same shape as `values`.
    """
    defect = target.data - np.tensordot(op.C, values, axes=(1, 0))
    return values + np.tensordot(op.D, defect, axes=(1, 0))


def projected_equilibrium(
    state: Moments, vgrid: VelocityGrid, op: ConservationOperator
) -> np.ndarray:
    """Maxwellian at `state`, corrected so its discrete moments equal `state`.

    This is the equilibrium the relaxation drives toward; the correction is
    what makes relaxation conservative on a bounded lattice.
    """
    return conservative_correction(maxwellian(state, vgrid), state, op)
