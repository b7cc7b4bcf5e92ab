"""Compressible Euler equations: fluxes, wavespeeds, and a MUSCL update.

The update is an unsplit finite-volume step with local Lax-Friedrichs
(Rusanov) interface fluxes, optionally corrected to second order by
limited slopes of the split fluxes F +- alpha U (van Leer limiter).
Dropping the correction gives the first-order upwind scheme.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .grids import SpatialGrid
from .moments import Moments

_PAD_MODE = {"periodic": "wrap", "copy": "edge"}


@dataclass(frozen=True)
class EulerState:
    """Conserved moment field with its mesh and ratio of specific heats."""

    moments: Moments
    grid: SpatialGrid
    gamma: float

    @property
    def pressure(self) -> np.ndarray:
        """p = (gamma - 1)(E - rho |u|^2 / 2); equals rho * theta when
        gamma = (d+2)/d, the monatomic value consistent with the kinetic model."""
        return _pressure(self.moments.data, self.moments.d, self.gamma)


def _pressure(data: np.ndarray, d: int, gamma: float) -> np.ndarray:
    rho = data[0]
    kinetic = 0.5 * np.sum(data[1 : 1 + d] ** 2, axis=0) / rho
    return (gamma - 1.0) * (data[1 + d] - kinetic)


def euler_flux(state: Moments, axis: int, gamma: float) -> np.ndarray:
    """Flux of the conserved variables along one axis.

    Returns (rho u_a, rho u_a u + p e_a, (E + p) u_a) stacked like the
    moment data.
    """
    return _flux_data(state.data, state.d, axis, gamma)


def _flux_data(data: np.ndarray, d: int, axis: int, gamma: float) -> np.ndarray:
    rho = data[0]
    mom = data[1 : 1 + d]
    energy = data[1 + d]
    p = _pressure(data, d, gamma)
    ua = mom[axis] / rho
    out = np.empty_like(data)
    out[0] = mom[axis]
    out[1 : 1 + d] = mom * ua
    out[1 + axis] += p
    out[1 + d] = (energy + p) * ua
    return out


def max_wavespeed(state: Moments, gamma: float) -> np.ndarray:
    """Largest eigenvalue magnitude per cell: max_a |u_a| + sqrt(gamma p / rho)."""
    data = state.data
    rho = data[0]
    c = np.sqrt(gamma * _pressure(data, state.d, gamma) / rho)
    return np.max(np.abs(data[1 : 1 + state.d] / rho), axis=0) + c


def _axis_wavespeed(data: np.ndarray, d: int, axis: int, gamma: float) -> np.ndarray:
    """|u_a| + c per cell for the sweep along one axis."""
    rho = data[0]
    c = np.sqrt(gamma * _pressure(data, d, gamma) / rho)
    return np.abs(data[1 + axis] / rho) + c


def vanleer_limiter(chi):
    """Van Leer limiter phi(chi) = (|chi| + chi) / (1 + chi), zero for chi <= 0."""
    chi = np.asarray(chi, dtype=float)
    phi = np.zeros_like(chi)
    pos = chi > 0.0
    # cap the ratio so 2*chi cannot overflow; phi is already ~2 up there
    c = np.minimum(chi[pos], 1e300)
    phi[pos] = 2.0 * c / (1.0 + c)
    return float(phi) if phi.ndim == 0 else phi


def _ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """Componentwise num/den with exact-zero denominators mapping to 0."""
    out = np.zeros_like(num)
    np.divide(num, den, out=out, where=den != 0.0)
    return out


def _limited_slopes(G: np.ndarray) -> np.ndarray:
    """G[i] * phi(G[i-1] / G[i]) for interfaces 1..nI-1 of a split-flux family."""
    return G[:, 1:] * vanleer_limiter(_ratio(G[:, :-1], G[:, 1:]))


def _interface_fluxes(
    data: np.ndarray,
    d: int,
    axis: int,
    gamma: float,
    alpha: np.ndarray,
    second_order: bool,
    nu: float,
) -> np.ndarray:
    """Interface fluxes along the axis at position 1 of `data`.

    Args:
        data: cell states, shape (d+2, Jg, ...), including any ghost cells.
        alpha: per-interface dissipation speeds, shape (Jg - 1, ...).
        second_order: include the limited slope correction.
        nu: dt/dx of the update the fluxes feed; the antidiffusive term
            carries the factor (1 - alpha nu), which turns the scheme into
            limited Lax-Wendroff and is what makes forward-Euler time
            stepping stable (at alpha nu = 0 the correction would cancel
            the Rusanov dissipation exactly on smooth data).

    Returns:
        Fluxes for interfaces 1 .. Jg-3 (those with a full four-cell
        stencil), shape (d+2, Jg - 3, ...).
    """
    F = _flux_data(data, d, axis, gamma)
    a = alpha[None]
    dF = F[:, 1:] - F[:, :-1]
    dU = data[:, 1:] - data[:, :-1]
    psi = 0.5 * (F[:, 1:-2] + F[:, 2:-1]) - 0.5 * a[:, 1:-1] * dU[:, 1:-1]
    if second_order:
        sp = _limited_slopes(dF + a * dU)  # interfaces 1..nI-1
        sm = _limited_slopes(dF - a * dU)
        psi = psi + 0.25 * (1.0 - nu * a[:, 1:-1]) * (sp[:, :-1] - sm[:, 1:])
    return psi


def muscl_flux(
    u_jm1: Moments,
    u_j: Moments,
    u_jp1: Moments,
    u_jp2: Moments,
    alpha: float,
    axis: int,
    gamma: float,
    nu: float = 0.0,
) -> np.ndarray:
    """Second-order interface flux between u_j and u_jp1 from a 4-cell stencil.

    Args:
        alpha: dissipation speed, at least the largest local wavespeed.
        nu: dt/dx of the intended update (Courant factor of the correction).

    Returns:
        Flux vector of shape (d+2,).
    """
    data = np.stack([u_jm1.data, u_j.data, u_jp1.data, u_jp2.data], axis=1)
    a = np.full(3, float(alpha))
    psi = _interface_fluxes(data, u_j.d, axis, gamma, a, second_order=True, nu=nu)
    return psi[:, 0]


def _padded(data: np.ndarray, axis: int, boundary: str) -> np.ndarray:
    pad = [(0, 0)] * data.ndim
    pad[1 + axis] = (2, 2)
    return np.pad(data, pad, mode=_PAD_MODE[boundary])


def euler_step(state: EulerState, dt: float, scheme: str = "muscl") -> EulerState:
    """One unsplit finite-volume step of size dt.

    Args:
        scheme: "muscl" (limited second order) or "upwind" (first order).

    Raises:
        ConfigError: unknown scheme.
        InvalidStateError: the update leaves the physical region.
    """
    if scheme not in ("muscl", "upwind"):
        raise ConfigError(f"unknown euler scheme {scheme!r}")
    second_order = scheme == "muscl"
    U = state.moments
    d = U.d
    grid = state.grid
    new = U.data.copy()
    for axis in range(d):
        g = _padded(U.data, axis, grid.boundaries[axis])
        g = np.moveaxis(g, 1 + axis, 1)
        a_cell = _axis_wavespeed(g, d, axis, state.gamma)
        a_iface = np.maximum(a_cell[:-1], a_cell[1:])
        psi = _interface_fluxes(g, d, axis, state.gamma, a_iface, second_order, nu=dt / grid.dx)
        div = (psi[:, 1:] - psi[:, :-1]) / grid.dx
        new -= dt * np.moveaxis(div, 1, 1 + axis)
    out = Moments(new, d)
    out.require_valid(f"euler_step[{scheme}]")
    return EulerState(moments=out, grid=grid, gamma=state.gamma)


def euler_timestep(state: EulerState, factor: float = 0.5) -> float:
    """Stable step dt = factor * dx / max alpha; factor 1/2 also covers 2D."""
    alpha = float(np.max(max_wavespeed(state.moments, state.gamma)))
    if alpha <= 0.0:
        raise ConfigError("zero wavespeed everywhere; time step undefined")
    return factor * state.grid.dx / alpha
