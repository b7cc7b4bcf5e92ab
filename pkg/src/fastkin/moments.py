"""Conserved moments of a discrete-velocity distribution and the Maxwellian.

A moment state stacks (rho, rho*u, E) along the first axis; the trailing
axes, if any, index spatial cells.  Temperature enters as theta = R*T with
the gas constant fixed at R = 1, so theta carries the numeric value of T
and the internal energy density is (d/2) * rho * theta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError
from .grids import VelocityGrid


@dataclass(frozen=True)
class Moments:
    """Conserved state (rho, rho*u, E), a single state or a per-cell field.

    Attributes:
        data: array of shape (d+2, *spatial); spatial may be empty.
        d: dimension, so data[0] is rho, data[1:1+d] momentum, data[1+d] E.
    """

    data: np.ndarray
    d: int

    @classmethod
    def from_primitive(cls, rho, u, theta, d: int) -> "Moments":
        """Build from density, velocity (d leading components), and theta."""
        rho = np.asarray(rho, dtype=float)
        u = np.asarray(u, dtype=float)
        theta = np.asarray(theta, dtype=float)
        mom = rho * u
        energy = 0.5 * d * rho * theta + 0.5 * rho * np.sum(u * u, axis=0)
        return cls(np.concatenate([rho[None], mom, energy[None]], axis=0), d)

    @property
    def rho(self) -> np.ndarray:
        return self.data[0]

    @property
    def momentum(self) -> np.ndarray:
        return self.data[1 : 1 + self.d]

    @property
    def energy(self) -> np.ndarray:
        return self.data[1 + self.d]

    @property
    def u(self) -> np.ndarray:
        return self.momentum / self.rho

    @property
    def theta(self) -> np.ndarray:
        """Temperature from E = (d/2) rho theta + rho |u|^2 / 2."""
        return (2.0 * self.energy / self.rho - np.sum(self.u**2, axis=0)) / self.d

    def totals(self) -> np.ndarray:
        """Domain sums of each conserved component, shape (d+2,)."""
        return self.data.reshape(self.d + 2, -1).sum(axis=1)

    def is_valid(self) -> bool:
        return bool(np.all(self.rho > 0.0) and np.all(self.theta > 0.0))

    def require_valid(self, context: str = "") -> None:
        """Raise InvalidStateError naming the first offending cell."""
        rho = np.atleast_1d(self.rho)
        theta = np.atleast_1d(self.theta)
        bad = ~((rho > 0.0) & (theta > 0.0))
        if bad.any():
            idx = np.unravel_index(int(np.argmax(bad)), bad.shape)
            where = f" in {context}" if context else ""
            raise InvalidStateError(
                f"non-physical state{where} at cell {idx}: "
                f"rho={rho[idx]:.6e}, theta={theta[idx]:.6e}"
            )

    def copy(self) -> "Moments":
        return Moments(self.data.copy(), self.d)


def collision_invariants(vgrid: VelocityGrid) -> np.ndarray:
    """Matrix of collision invariants, shape (d+2, n).

    Row 0 is all ones, rows 1..d hold the node velocity components, and the
    last row holds |v_k|^2 / 2.
    """
    v = vgrid.nodes
    ones = np.ones((1, vgrid.n))
    ke = 0.5 * np.sum(v * v, axis=1)[None]
    return np.concatenate([ones, v.T, ke[0:1]], axis=0)


def discrete_moments(values: np.ndarray, vgrid: VelocityGrid) -> Moments:
    """Moments U = sum_k m_k f_k dv**d of per-node values.

    Args:
        values: shape (n, *spatial).
    """
    m = collision_invariants(vgrid)
    data = np.tensordot(m, values, axes=(1, 0)) * vgrid.weight
    return Moments(data, vgrid.d)


def maxwellian(state: Moments, vgrid: VelocityGrid) -> np.ndarray:
    """Local Maxwellian sampled at the lattice nodes, shape (n, *spatial).

    M_k = rho / (2 pi theta)^(d/2) * exp(-|u - v_k|^2 / (2 theta)).

    Raises:
        InvalidStateError: any cell has rho <= 0 or theta <= 0.
    """
    state.require_valid("maxwellian")
    d = vgrid.d
    rho = np.asarray(state.rho, dtype=float)
    u = np.asarray(state.u, dtype=float)
    theta = np.asarray(state.theta, dtype=float)
    v = vgrid.nodes
    vsq = np.sum(v * v, axis=1)
    # |u - v|^2 = |v|^2 - 2 v.u + |u|^2, expanded to avoid an (n, d, cells) temporary
    vu = np.tensordot(v, u, axes=(1, 0))
    usq = np.sum(u * u, axis=0)
    arg = -(vsq.reshape((-1,) + (1,) * rho.ndim) - 2.0 * vu + usq) / (2.0 * theta)
    return rho / (2.0 * np.pi * theta) ** (0.5 * d) * np.exp(arg)


def maxwellian_pointwise(rho: float, u, theta: float, v, d: int) -> float:
    """Scalar Maxwellian at one velocity node for one state."""
    if not (rho > 0.0 and theta > 0.0):
        raise InvalidStateError(f"non-physical state: rho={rho}, theta={theta}")
    u = np.asarray(u, dtype=float).reshape(d)
    v = np.asarray(v, dtype=float).reshape(d)
    diff = u - v
    return float(rho / (2.0 * np.pi * theta) ** (0.5 * d) * np.exp(-diff @ diff / (2.0 * theta)))
