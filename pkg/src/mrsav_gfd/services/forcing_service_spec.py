import math

import numpy as np
import pytest
from pytest import fixture

from mrsav_gfd.errors import ConfigurationError
from mrsav_gfd.models.grid import Grid
from mrsav_gfd.models.model_spec import (
    ForcingKind, ForcingSpec, ManufacturedSpec, ModelKind, ModelSpec, TimeProfile
)
from mrsav_gfd.services.forcing_service import (
    ManufacturedForcing, ManufacturedSolution, SteadyForcing, ZeroForcing, create_forcing,
    kolmogorov_vorticity_forcing, manufactured_forcing,
)
from mrsav_gfd.services.gfd_model_service import create_model


@fixture
def unit_model(unit_grid8):
    return create_model(ModelSpec(reynolds=10.0), unit_grid8)


class DescribeKolmogorovForcing:

    def should_be_the_curl_of_the_shear_forcing(self, qg_model):
        y = qg_model.grid.mesh()[1]

        forcing = kolmogorov_vorticity_forcing(2, 100.0, qg_model)

        assert np.allclose(qg_model.spectral.inverse(forcing), 0.16 * np.sin(2 * y), atol=1e-14)
        assert abs(forcing.coeffs[0, 0]) < 1e-15

    def should_reduce_to_sin_y_for_unit_parameters(self, qg_model):
        y = qg_model.grid.mesh()[1]

        forcing = kolmogorov_vorticity_forcing(1, 1.0, qg_model)

        assert np.allclose(qg_model.spectral.inverse(forcing), np.sin(y), atol=1e-14)

    def should_reject_unresolved_wavenumbers(self, qg_model):
        with pytest.raises(ConfigurationError, match="not resolved"):
            kolmogorov_vorticity_forcing(8, 100.0, qg_model)

    def should_reject_wavenumbers_that_are_not_periodic(self, unit_model):
        with pytest.raises(ConfigurationError, match="not periodic"):
            kolmogorov_vorticity_forcing(1, 100.0, unit_model)


class DescribeManufacturedForcing:

    def should_match_the_symbolic_residual(self, unit_model, unit_grid8):
        x, y = unit_grid8.mesh()
        spec = ManufacturedSpec(m=1, time_profile=TimeProfile.COS)
        t = 0.5
        profile = np.cos(2 * math.pi * x) * np.cos(2 * math.pi * y)
        lam = 8 * math.pi ** 2

        forcing = manufactured_forcing(spec, t, unit_model)

        expected = (-lam * math.sin(t) + 0.1 * lam * lam * math.cos(t)) * profile
        assert np.allclose(unit_model.spectral.inverse(forcing), expected, rtol=1e-12, atol=1e-9)

    def should_reduce_to_the_diffusion_residual_for_a_steady_linear_model(self, unit_grid8):
        model = create_model(ModelSpec(reynolds=1.0, advection=False), unit_grid8)
        solution = ManufacturedSolution(ManufacturedSpec(time_profile=TimeProfile.CONSTANT), model)

        forcing = solution.forcing(3.0)

        expected = solution.omega(3.0).coeffs * model.spectral.dissipation_symbol(model.spec)
        assert np.allclose(forcing.coeffs, expected, atol=1e-9)

    def should_derive_the_vorticity_from_the_stream_function_in_3d(self):
        grid = Grid(dim=3, lengths=1.0, modes=8)
        model = create_model(ModelSpec(kind=ModelKind.CQG3D, reynolds=10.0, beta=1.0, froude=1.0), grid)
        solution = ManufacturedSolution(ManufacturedSpec(m=1), model)

        omega = solution.omega(0.0)

        assert np.allclose(omega.coeffs, 12 * math.pi ** 2 * solution.psi(0.0).coeffs, atol=1e-10)

    def should_reject_unknown_families(self, unit_model):
        with pytest.raises(ConfigurationError, match="family"):
            ManufacturedSolution(ManufacturedSpec(family="gaussian"), unit_model)

    def should_cache_time_independent_forcing(self, unit_model):
        forcing = ManufacturedForcing(ManufacturedSolution(ManufacturedSpec(time_profile=TimeProfile.CONSTANT), unit_model))

        assert not forcing.time_dependent
        assert forcing.at(0.0) is forcing.at(5.0)


class DescribeCreateForcing:

    def should_build_zero_forcing_by_default(self, qg_model):
        forcing = create_forcing(ForcingSpec(), qg_model)

        assert isinstance(forcing, ZeroForcing)
        assert forcing.at(1.0).max_abs() == 0.0

    def should_take_the_kolmogorov_reynolds_number_from_the_model(self, qg_model):
        forcing = create_forcing(ForcingSpec(kind=ForcingKind.KOLMOGOROV, m=2), qg_model)

        assert isinstance(forcing, SteadyForcing)
        assert np.allclose(forcing.at(0.0).coeffs, kolmogorov_vorticity_forcing(2, 100.0, qg_model).coeffs)

    def should_build_time_dependent_manufactured_forcing(self, unit_model):
        forcing = create_forcing(ForcingSpec(kind=ForcingKind.MANUFACTURED), unit_model)

        assert forcing.time_dependent
        assert not np.allclose(forcing.at(0.0).coeffs, forcing.at(1.0).coeffs)

    def should_load_custom_fields(self, qg_model, tmp_path):
        y = qg_model.grid.mesh()[1]
        path = tmp_path / "forcing.npy"
        np.save(path, np.cos(3 * y))

        forcing = create_forcing(ForcingSpec(kind=ForcingKind.CUSTOM, field_path=path), qg_model)

        assert np.allclose(qg_model.spectral.inverse(forcing.at(0.0)), np.cos(3 * y))

    def should_reject_custom_fields_of_the_wrong_shape(self, qg_model, tmp_path):
        path = tmp_path / "forcing.npy"
        np.save(path, np.zeros((4, 4)))

        with pytest.raises(ConfigurationError, match="field_path"):
            create_forcing(ForcingSpec(kind=ForcingKind.CUSTOM, field_path=path), qg_model)
