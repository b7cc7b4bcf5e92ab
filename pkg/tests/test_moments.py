"""Moment fields, collision invariants, and the discrete Maxwellian.

The quadrature oracle below integrates the Maxwellian with a fine midpoint
rule on a wide lattice, where the discrete sums converge to the continuous
moments; all lattice-based expectations are checked against it.
"""

import numpy as np
import pytest

from fastkin.errors import InvalidStateError
from fastkin.grids import build_velocity_grid
from fastkin.moments import (
    Moments,
    collision_invariants,
    discrete_moments,
    maxwellian,
    maxwellian_pointwise,
)


def test_from_primitive_roundtrip_1d():
    state = Moments.from_primitive(
        rho=np.array([2.0]), u=np.array([[0.5]]), theta=np.array([3.0]), d=1
    )
    # E = (d/2) rho theta + rho |u|^2 / 2 = 3 + 0.25
    assert state.energy[0] == pytest.approx(3.25)
    assert state.u[0, 0] == pytest.approx(0.5)
    assert state.theta[0] == pytest.approx(3.0)


def test_moment_slices_named_consistently():
    rng = np.random.default_rng(7)
    rho = rng.uniform(0.5, 2.0, size=(4, 3))
    u = rng.uniform(-1.0, 1.0, size=(2, 4, 3))
    theta = rng.uniform(0.5, 2.0, size=(4, 3))
    state = Moments.from_primitive(rho, u, theta, d=2)
    np.testing.assert_allclose(state.rho, rho)
    np.testing.assert_allclose(state.u, u, atol=1e-14)
    np.testing.assert_allclose(state.theta, theta, rtol=1e-13)
    np.testing.assert_allclose(state.momentum, rho * u)


def test_discrete_moments_frozen_example():
    # f = (1, 2, 1) on nodes (-1, 0, 1) with dv = 1:
    # mass = 4, momentum = 0, energy = (1 + 0 + 1) / 2 = 1
    vg = build_velocity_grid(1, (3,), (-1.0, 1.0))
    f = np.array([1.0, 2.0, 1.0])
    state = discrete_moments(f, vg)
    np.testing.assert_allclose(state.data, [4.0, 0.0, 1.0])


def test_collision_invariants_rows():
    vg = build_velocity_grid(1, (3,), (-2.0, 2.0))
    m = collision_invariants(vg)
    np.testing.assert_allclose(m[0], [1.0, 1.0, 1.0])
    np.testing.assert_allclose(m[1], [-2.0, 0.0, 2.0])
    np.testing.assert_allclose(m[2], [2.0, 0.0, 2.0])


@pytest.mark.parametrize("d", [1, 2])
def test_maxwellian_moments_match_quadrature(d):
    # Wide, fine lattice: midpoint sums of a Gaussian converge exponentially,
    # so the discrete moments of the Maxwellian must reproduce (rho, rho u, E).
    rho = np.array([1.3])
    u = np.full((d, 1), 0.4)
    theta = np.array([0.9])
    state = Moments.from_primitive(rho, u, theta, d=d)
    vg = build_velocity_grid(d, (41,) * d, (-10.0, 10.0))
    mvals = maxwellian(state, vg)
    got = discrete_moments(mvals[:, 0], vg)
    np.testing.assert_allclose(got.data, state.data[:, 0], rtol=1e-12, atol=1e-12)


def test_maxwellian_matches_pointwise_formula():
    state = Moments.from_primitive(
        rho=np.array([0.7]), u=np.array([[0.2], [-0.4]]), theta=np.array([1.1]), d=2
    )
    vg = build_velocity_grid(2, (4, 4), (-3.0, 3.0))
    mvals = maxwellian(state, vg)
    for k in range(vg.n):
        want = maxwellian_pointwise(0.7, (0.2, -0.4), 1.1, vg.nodes[k], d=2)
        assert mvals[k, 0] == pytest.approx(want, rel=1e-14)


def test_maxwellian_peak_at_mean_velocity():
    state = Moments.from_primitive(
        rho=np.array([1.0]), u=np.array([[1.0]]), theta=np.array([0.5]), d=1
    )
    vg = build_velocity_grid(1, (21,), (-5.0, 5.0))
    mvals = maxwellian(state, vg)[:, 0]
    assert vg.nodes[np.argmax(mvals), 0] == pytest.approx(1.0)


def test_require_valid_flags_negative_density():
    data = np.array([[1.0, -0.5], [0.0, 0.0], [1.0, 1.0]])
    state = Moments(data=data, d=1)
    assert not state.is_valid()
    with pytest.raises(InvalidStateError):
        state.require_valid("unit test")


def test_require_valid_flags_negative_temperature():
    # E < rho |u|^2 / 2 means negative theta
    data = np.array([[1.0], [2.0], [0.5]])
    state = Moments(data=data, d=1)
    with pytest.raises(InvalidStateError):
        state.require_valid()


def test_totals_sum_over_cells():
    state = Moments.from_primitive(
        rho=np.array([1.0, 3.0]),
        u=np.zeros((1, 2)),
        theta=np.array([2.0, 2.0]),
        d=1,
    )
    np.testing.assert_allclose(state.totals(), [4.0, 0.0, 4.0])
