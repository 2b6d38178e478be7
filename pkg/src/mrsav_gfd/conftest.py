"""
Shared fixtures for the mrsav-gfd specs.
"""
import math

import numpy as np
from hypothesis import settings
from pytest import fixture

from mrsav_gfd.models.grid import Grid
from mrsav_gfd.models.model_spec import ModelSpec
from mrsav_gfd.models.spectral_field import FieldRole
from mrsav_gfd.services.gfd_model_service import create_model
from mrsav_gfd.services.spectral_service import SpectralService

settings.register_profile("specs", max_examples=40, deadline=None)
settings.load_profile("specs")


@fixture
def grid16():
    return Grid(modes=16)


@fixture
def spectral16(grid16):
    return SpectralService(grid16)


@fixture
def unit_grid8():
    return Grid(lengths=1.0, modes=8)


@fixture
def qg_model(grid16):
    return create_model(ModelSpec(reynolds=100.0), grid16)


@fixture
def band_limited():
    """Factory for real random fields whose modes satisfy |j| <= cutoff on every axis."""

    def make(spectral, seed=0, cutoff=3, role=FieldRole.VORTICITY, mean_zero=True):
        rng = np.random.default_rng(seed)
        field = spectral.forward(rng.standard_normal(spectral.grid.shape), role)
        keep = np.ones(spectral.grid.shape, dtype=bool)
        for axis in range(spectral.grid.dim):
            shape = [1] * spectral.grid.dim
            shape[axis] = spectral.grid.modes[axis]
            keep = keep & (np.abs(spectral.grid.signed_indices(axis)) <= cutoff).reshape(shape)
        field = field.with_coeffs(field.coeffs * keep)
        return spectral.project_mean_zero(field) if mean_zero else field

    return make


@fixture
def two_pi_squared():
    return 2.0 * math.pi ** 2
