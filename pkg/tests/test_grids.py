"""Velocity-lattice and spatial-grid construction."""

import numpy as np
import pytest

from fastkin.errors import ConfigError
from fastkin.grids import build_spatial_grid, build_velocity_grid


def test_velocity_lattice_includes_bounds():
    vg = build_velocity_grid(1, (5,), (-2.0, 2.0))
    assert vg.n == 5
    assert vg.dv == pytest.approx(1.0)
    np.testing.assert_allclose(vg.nodes[:, 0], [-2.0, -1.0, 0.0, 1.0, 2.0])
    assert vg.weight == pytest.approx(1.0)
    assert vg.max_speed == pytest.approx(2.0)


def test_velocity_lattice_2d_row_major():
    vg = build_velocity_grid(2, (3, 3), (-1.0, 1.0))
    assert vg.n == 9
    # first axis varies slowest
    np.testing.assert_allclose(vg.nodes[0], [-1.0, -1.0])
    np.testing.assert_allclose(vg.nodes[1], [-1.0, 0.0])
    np.testing.assert_allclose(vg.nodes[3], [0.0, -1.0])


def test_velocity_lattice_rejects_unequal_spacing():
    # scalar bounds with unequal counts would give a non-scalar spacing
    with pytest.raises(ConfigError):
        build_velocity_grid(2, (3, 5), (-1.0, 1.0))


def test_velocity_lattice_weight_is_cell_volume():
    vg = build_velocity_grid(2, (3, 3), (-3.0, 3.0))
    assert vg.weight == pytest.approx(3.0 * 3.0)


def test_velocity_lattice_rejects_degenerate():
    with pytest.raises(ConfigError):
        build_velocity_grid(1, (1,), (-1.0, 1.0))
    with pytest.raises(ConfigError):
        build_velocity_grid(1, (4,), (2.0, -2.0))


def test_spatial_grid_centers_1d():
    sg = build_spatial_grid(1, (4,), (0.0, 1.0), "periodic")
    assert sg.dx == pytest.approx(0.25)
    np.testing.assert_allclose(sg.axis_centers(0), [0.125, 0.375, 0.625, 0.875])
    assert sg.ncells == 4


def test_spatial_grid_centers_2d_shape():
    sg = build_spatial_grid(2, (4, 4), (0.0, 2.0), "copy")
    pts = sg.centers()
    assert pts.shape == (2, 4, 4)
    # x varies along array axis 0 and is constant along axis 1
    np.testing.assert_allclose(pts[0, :, 0], sg.axis_centers(0))
    np.testing.assert_allclose(pts[0, 2, :], np.full(4, sg.axis_centers(0)[2]))
    np.testing.assert_allclose(pts[1, :, 3], np.full(4, sg.axis_centers(1)[3]))


def test_spatial_grid_rejects_unknown_boundary():
    with pytest.raises(ConfigError):
        build_spatial_grid(1, (4,), (0.0, 1.0), "reflect")
