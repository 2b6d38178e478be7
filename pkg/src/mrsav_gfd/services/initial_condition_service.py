"""
Initial-condition presets.
"""
import math
from typing import Optional

import numpy as np

from mrsav_gfd.errors import ConfigurationError
from mrsav_gfd.models.run_config import InitialConditionPreset
from mrsav_gfd.models.spectral_field import FieldRole, SpectralField
from mrsav_gfd.services.forcing_service import ManufacturedSolution
from mrsav_gfd.services.gfd_model_service import SpectralGfdModel


def _streamfunction_preset(preset: InitialConditionPreset, model: SpectralGfdModel) -> np.ndarray:
    x, y = model.grid.mesh()[:2]
    if preset == InitialConditionPreset.KOLMOGOROV_PERTURBED_A:
        return np.sin(2 * y) + 0.001 * np.sin(2 * x) * np.sin(2 * y)
    if preset == InitialConditionPreset.KOLMOGOROV_PERTURBED_B:
        # sin(2 pi x) is not periodic on (0, 2 pi); sampled as given on the collocation points
        return np.sin(2 * y) + 0.001 * np.sin(2 * math.pi * x) * np.sin(2 * math.pi * y)
    if preset == InitialConditionPreset.CQG_KOLMOGOROV_PERTURBED:
        if model.grid.dim != 3:
            raise ConfigurationError("cqg_kolmogorov_perturbed needs a 3D grid", key_path="run.initial_condition")
        z = model.grid.mesh()[2]
        return np.sin(2 * y) + 0.001 * np.sin(2 * x) * np.sin(3 * y) * np.sin(z)
    raise ConfigurationError(f"unknown initial condition preset {preset!r}", key_path="run.initial_condition")


def initial_condition(
    preset: InitialConditionPreset,
    model: SpectralGfdModel,
    manufactured: Optional[ManufacturedSolution] = None,
) -> SpectralField:
    """
    Initial vorticity for a named preset.

    Presets prescribe a stream function; the vorticity returned is the
    elliptic operator applied to it, which is mean-zero.

    Args:
        preset: Preset name
        model: Model supplying grid and elliptic operator
        manufactured: Exact solution for the manufactured preset

    Returns:
        omega^0
    """
    try:
        preset = InitialConditionPreset(preset)
    except ValueError as error:
        raise ConfigurationError(f"unknown initial condition preset {preset!r}", key_path="run.initial_condition") from error
    if preset == InitialConditionPreset.ZERO:
        return SpectralField.zeros(model.grid, FieldRole.VORTICITY)
    if preset == InitialConditionPreset.MANUFACTURED:
        if manufactured is None:
            raise ConfigurationError("manufactured preset needs manufactured forcing", key_path="run.initial_condition")
        return manufactured.omega(0.0)
    psi = model.sample(_streamfunction_preset(preset, model), FieldRole.STREAMFUNCTION)
    return model.spectral.project_mean_zero(model.vorticity(psi))
