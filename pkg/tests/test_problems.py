"""Benchmark initial states, their symmetries, and the error norms.

The vortex is the one problem with an exact solution, so its invariants get
the real oracle: the radial momentum balance dp/dr = rho * u_phi^2 / r is
checked by finite differences for both supported gamma values.  Frozen
numbers below are hand-derived from the closed forms.
"""

import math

import numpy as np
import pytest

from fastkin.errors import ConfigError
from fastkin.grids import build_velocity_grid
from fastkin.moments import Moments
from fastkin.problems import (
    PROBLEMS,
    check_velocity_coverage,
    error_norms,
    init_implosion_2d,
    init_sod_1d,
    init_sod_2d,
    init_vortex_2d,
    vortex_primitives,
)

# center values with gamma = 2, beta = 5: the temperature dip is
# 25 e / (16 pi^2) and the density equals tstar^(1/(gamma-1)) = tstar
CENTER_THETA = 0.5696569807297991


def test_registry_exposes_the_four_benchmarks():
    assert set(PROBLEMS) == {"sod1d", "vortex2d", "sod2d", "implosion2d"}
    for name, factory in PROBLEMS.items():
        spec = factory()
        assert spec.name == name
        assert spec.d in (1, 2)
        assert spec.t_final > 0.0


def test_vortex_center_values_frozen():
    pts = np.array([[5.0], [5.0]])
    rho, u, theta = vortex_primitives(pts)
    assert math.isclose(theta[0], CENTER_THETA, rel_tol=0.0, abs_tol=1e-15)
    assert math.isclose(rho[0], CENTER_THETA, rel_tol=0.0, abs_tol=1e-15)
    np.testing.assert_array_equal(u[:, 0], [1.0, 1.0])
    # one diameter out the perturbation has decayed by e^{-r^2}
    far = np.array([[9.0], [5.0]])
    _, _, theta_far = vortex_primitives(far)
    assert abs(theta_far[0] - 1.0) < (1.0 - CENTER_THETA) * math.exp(-15.0)


def test_vortex_swirl_is_antisymmetric_about_center():
    a, b = 0.7, -0.4
    pts = np.array([[5.0 + a, 5.0 - a], [5.0 + b, 5.0 - b]])
    _, u, _ = vortex_primitives(pts)
    du = u - 1.0
    np.testing.assert_allclose(du[:, 0], -du[:, 1], rtol=0.0, atol=1e-15)


@pytest.mark.parametrize("gamma", [2.0, 5.0 / 3.0])
def test_vortex_radial_momentum_balance(gamma):
    # along y = y0 the azimuthal speed is the v-perturbation; steadiness
    # requires dp/dx = rho * u_phi^2 / x' with p = (gamma - 1) rho theta
    h = 1e-3
    x = np.arange(5.0 + 0.2, 8.0, h)
    pts = np.stack([x, np.full_like(x, 5.0)])
    rho, u, theta = vortex_primitives(pts, gamma=gamma)
    p = (gamma - 1.0) * rho * theta
    dpdx = np.gradient(p, h)
    centripetal = rho * (u[1] - 1.0) ** 2 / (x - 5.0)
    np.testing.assert_allclose(dpdx[2:-2], centripetal[2:-2], rtol=5e-5, atol=1e-10)


def test_vortex_exact_density_translates_and_wraps():
    spec = init_vortex_2d()
    grid = spec.build_grid((50, 50))
    pts = grid.centers()
    rho0 = spec.initial(grid).rho
    np.testing.assert_allclose(spec.exact_density(pts, 0.0), rho0, rtol=0.0, atol=1e-15)
    # one box period along the diagonal returns the initial field
    np.testing.assert_allclose(spec.exact_density(pts, 10.0), rho0, rtol=0.0, atol=1e-12)
    # quarter period: the center moved to (7.5, 7.5)
    rho_q = spec.exact_density(pts, 2.5)
    peak = np.unravel_index(np.argmin(rho_q), rho_q.shape)
    np.testing.assert_allclose([pts[0][peak], pts[1][peak]], [7.5, 7.5], atol=grid.dx)


def test_vortex_rejects_underresolved_mesh():
    spec = init_vortex_2d()
    with pytest.raises(ConfigError):
        spec.initial(spec.build_grid((20, 20)))


def test_sod_1d_states_and_defaults():
    spec = init_sod_1d()
    assert (spec.boundary, spec.cells, spec.nv) == ("copy", (300,), 100)
    assert (spec.vbounds, spec.t_final, spec.gamma) == ((-15.0, 15.0), 0.05, 3.0)
    m = spec.initial(spec.build_grid())
    x = spec.build_grid().axis_centers(0)
    left = x <= 0.5
    np.testing.assert_array_equal(m.rho[left], 1.0)
    np.testing.assert_array_equal(m.rho[~left], 0.125)
    np.testing.assert_array_equal(m.momentum, 0.0)
    # E = rho theta / 2 at rest in 1D
    np.testing.assert_array_equal(m.energy[left], 2.5)
    np.testing.assert_array_equal(m.energy[~left], 0.25)


def test_sod_2d_disk_states():
    spec = init_sod_2d()
    grid = spec.build_grid((40, 40))
    m = spec.initial(grid)
    pts = grid.centers()
    inside = (pts[0] - 1.0) ** 2 + (pts[1] - 1.0) ** 2 <= 0.04
    assert inside.any() and (~inside).any()
    np.testing.assert_array_equal(m.rho[inside], 1.0)
    np.testing.assert_array_equal(m.rho[~inside], 0.125)
    # E = rho theta at rest in 2D
    np.testing.assert_array_equal(m.energy[inside], 5.0)
    np.testing.assert_array_equal(m.energy[~inside], 0.5)


def test_implosion_quadrant_velocities():
    spec = init_implosion_2d()
    grid = spec.build_grid((40, 40))
    m = spec.initial(grid)
    u = m.u
    probe = {(0.5, 0.5): (1.0, 1.0), (1.5, 0.5): (-1.0, 1.0),
             (0.5, 1.5): (1.0, -1.0), (1.5, 1.5): (-1.0, -1.0)}
    x = grid.axis_centers(0)
    for (px, py), expect in probe.items():
        i = int(np.argmin(np.abs(x - px)))
        j = int(np.argmin(np.abs(x - py)))
        assert (u[0][i, j], u[1][i, j]) == expect
    # the light disk is at rest
    pts = grid.centers()
    inside = (pts[0] - 1.0) ** 2 + (pts[1] - 1.0) ** 2 <= 0.04
    np.testing.assert_array_equal(u[0][inside], 0.0)
    np.testing.assert_array_equal(u[1][inside], 0.0)
    np.testing.assert_array_equal(m.rho[inside], 0.125)
    np.testing.assert_array_equal(m.rho[~inside], 1.0)


def test_velocity_coverage_six_sigma_rule():
    m = Moments.from_primitive(np.ones(4), np.zeros((1, 4)), np.ones(4), d=1)
    ok = build_velocity_grid(1, (13,), (-7.0, 7.0))
    check_velocity_coverage(m, ok)  # |u| + 6 sqrt(theta) = 6 fits in 7
    tight = build_velocity_grid(1, (11,), (-5.0, 5.0))
    with pytest.raises(ConfigError):
        check_velocity_coverage(m, tight)
    # a drifting state pushes the upper tail past +7
    drifting = Moments.from_primitive(np.ones(4), np.full((1, 4), 2.0), np.ones(4), d=1)
    with pytest.raises(ConfigError):
        check_velocity_coverage(drifting, ok)


def test_error_norms_frozen_example():
    eps1, epsinf = error_norms(np.array([1.0, 2.0]), np.array([2.0, 2.0]))
    assert eps1 == 0.25
    assert epsinf == 0.5
