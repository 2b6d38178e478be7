import math

import numpy as np
import pytest

from mrsav_gfd.errors import ConfigurationError
from mrsav_gfd.models.grid import Grid
from mrsav_gfd.models.model_spec import ManufacturedSpec, ModelKind, ModelSpec
from mrsav_gfd.models.run_config import InitialConditionPreset
from mrsav_gfd.services.forcing_service import ManufacturedSolution
from mrsav_gfd.services.gfd_model_service import create_model
from mrsav_gfd.services.initial_condition_service import initial_condition


def test_should_start_from_rest(qg_model):
    omega = initial_condition(InitialConditionPreset.ZERO, qg_model)

    assert omega.max_abs() == 0.0


def test_should_perturb_the_kolmogorov_flow(qg_model):
    x, y = qg_model.grid.mesh()

    omega = initial_condition(InitialConditionPreset.KOLMOGOROV_PERTURBED_A, qg_model)

    expected = 4 * np.sin(2 * y) + 0.008 * np.sin(2 * x) * np.sin(2 * y)
    assert np.allclose(qg_model.spectral.inverse(omega), expected, atol=1e-12)


def test_should_sample_the_non_periodic_perturbation_on_the_grid(qg_model):
    x, y = qg_model.grid.mesh()
    psi0 = np.sin(2 * y) + 0.001 * np.sin(2 * math.pi * x) * np.sin(2 * math.pi * y)

    omega = initial_condition("kolmogorov_perturbed_b", qg_model)

    assert abs(omega.coeffs[0, 0]) == 0.0
    recovered = qg_model.spectral.inverse(qg_model.streamfunction(omega))
    assert np.allclose(recovered, psi0 - psi0.mean(), atol=1e-12)


def test_should_build_the_stratified_kolmogorov_start():
    grid = Grid(dim=3, modes=8)
    model = create_model(ModelSpec(kind=ModelKind.CQG3D, froude=1.0), grid)
    x, y, z = grid.mesh()

    omega = initial_condition(InitialConditionPreset.CQG_KOLMOGOROV_PERTURBED, model)

    expected = 4 * np.sin(2 * y) + 0.014 * np.sin(2 * x) * np.sin(3 * y) * np.sin(z)
    assert np.allclose(model.spectral.inverse(omega), expected, atol=1e-12)


def test_should_reject_the_stratified_start_on_2d_grids(qg_model):
    with pytest.raises(ConfigurationError):
        initial_condition(InitialConditionPreset.CQG_KOLMOGOROV_PERTURBED, qg_model)


def test_should_start_manufactured_runs_on_the_exact_vorticity():
    grid = Grid(dim=3, lengths=1.0, modes=8)
    model = create_model(ModelSpec(kind=ModelKind.CQG3D, froude=1.0), grid)
    solution = ManufacturedSolution(ManufacturedSpec(m=1), model)

    omega = initial_condition(InitialConditionPreset.MANUFACTURED, model, solution)

    assert np.allclose(omega.coeffs, 12 * math.pi ** 2 * solution.psi(0.0).coeffs, atol=1e-10)


def test_should_require_a_solution_for_the_manufactured_start(qg_model):
    with pytest.raises(ConfigurationError):
        initial_condition(InitialConditionPreset.MANUFACTURED, qg_model)


def test_should_reject_unknown_presets(qg_model):
    with pytest.raises(ConfigurationError, match="vortex_street"):
        initial_condition("vortex_street", qg_model)
