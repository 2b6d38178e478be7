import math

import numpy as np
import pytest
from pydantic import ValidationError

from mrsav_gfd.models.grid import Grid


def test_should_broadcast_scalar_modes_and_default_lengths():
    grid = Grid(modes=16)

    assert grid.modes == (16, 16)
    assert grid.lengths == (2 * math.pi, 2 * math.pi)
    assert grid.shape == (16, 16)


def test_should_reject_odd_mode_counts():
    with pytest.raises(ValidationError):
        Grid(modes=15)


def test_should_reject_unsupported_dimensions():
    with pytest.raises(ValidationError):
        Grid(dim=4, modes=8)


def test_should_reject_mismatched_axis_counts():
    with pytest.raises(ValidationError):
        Grid(dim=3, modes=(8, 8))


def test_should_list_signed_indices_in_fft_order():
    grid = Grid(modes=8)

    assert list(grid.signed_indices(0)) == [0, 1, 2, 3, -4, -3, -2, -1]


def test_should_scale_wavenumbers_by_the_domain_length():
    grid = Grid(lengths=1.0, modes=8)

    assert grid.wavenumbers(1)[1] == pytest.approx(2 * math.pi)


def test_should_locate_negative_wavevectors():
    grid = Grid(modes=16)

    assert grid.index_of((0, -1)) == (0, 15)
    assert grid.contains((0, -8))
    assert not grid.contains((0, 8))
    assert not grid.contains((0, 1, 0))


def test_should_report_the_domain_volume():
    grid = Grid(dim=3, lengths=(1.0, 2.0, 3.0), modes=(4, 6, 8))

    assert grid.volume == pytest.approx(6.0)
    assert grid.point_count == 192


def test_should_build_an_ij_indexed_mesh():
    grid = Grid(modes=(4, 8))

    x, y = grid.mesh()

    assert x.shape == (4, 8)
    assert np.all(x[:, 0] == grid.coordinates(0))
    assert np.all(y[0, :] == grid.coordinates(1))
