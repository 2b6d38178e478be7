"""
Forcing constructors: Kolmogorov shear forcing, manufactured-solution forcing and custom fields.
"""
import math
from typing import Optional

import numpy as np
import structlog

from mrsav_gfd.errors import ConfigurationError
from mrsav_gfd.models.model_spec import ForcingKind, ForcingSpec, ManufacturedSpec, TimeProfile
from mrsav_gfd.models.spectral_field import FieldRole, SpectralField
from mrsav_gfd.services.gfd_model_service import SpectralGfdModel
from mrsav_gfd.services.interfaces import ForcingInterface

logger = structlog.get_logger(__name__)

SUPPORTED_FAMILIES = ("cos_product",)


def _check_axis_mode(model: SpectralGfdModel, axis: int, wavenumber: float, what: str) -> None:
    """A physical wavenumber must be an integer multiple of 2 pi / L below Nyquist."""
    grid = model.grid
    index = wavenumber * grid.lengths[axis] / (2.0 * math.pi)
    if abs(index - round(index)) > 1e-9:
        raise ConfigurationError(f"{what}: wavenumber {wavenumber:g} is not periodic on length {grid.lengths[axis]:g}")
    if abs(round(index)) >= grid.modes[axis] // 2:
        raise ConfigurationError(f"{what}: mode {round(index)} is not resolved by {grid.modes[axis]} points")


def kolmogorov_vorticity_forcing(m: int, reynolds: float, model: SpectralGfdModel) -> SpectralField:
    """
    Vorticity form of the Kolmogorov forcing [m^3/Re cos(my), 0].

    Its curl is (m^4/Re) sin(my); the basic flow psi = sin(my) is a steady
    state of the forced vorticity equation when nu = 1/Re. On 3D grids the
    profile is extended independently of z.

    Args:
        m: Forcing wavenumber
        reynolds: Reynolds number in the amplitude
        model: Model whose grid the forcing is sampled on

    Returns:
        The forcing field
    """
    if m < 1:
        raise ConfigurationError("kolmogorov wavenumber must be >= 1", key_path="forcing.m")
    _check_axis_mode(model, 1, float(m), "kolmogorov forcing")
    y = model.grid.mesh()[1]
    return model.sample(m ** 4 / reynolds * np.sin(m * y), FieldRole.FORCING)


class ManufacturedSolution:
    """
    Exact stream function psi_e(t, x) = T(t) * prod_i cos(2 pi m x_i / L_i).

    The vorticity is derived as omega_e = elliptic(psi_e), so the kinematic
    relation holds exactly and the manufactured forcing enters the vorticity
    equation only.
    """

    def __init__(self, spec: ManufacturedSpec, model: SpectralGfdModel):
        if spec.family not in SUPPORTED_FAMILIES:
            raise ConfigurationError(
                f"unsupported manufactured family {spec.family!r}", key_path="forcing.manufactured.family"
            )
        self.spec = spec
        self.model = model
        grid = model.grid
        profile = np.ones(grid.shape)
        for axis, coordinate in enumerate(grid.mesh()):
            wavenumber = 2.0 * math.pi * spec.m / grid.lengths[axis]
            _check_axis_mode(model, axis, wavenumber, "manufactured solution")
            profile = profile * np.cos(wavenumber * coordinate)
        self._profile = model.sample(profile, FieldRole.STREAMFUNCTION)

    def time_factor(self, t: float) -> float:
        return math.cos(t) if self.spec.time_profile == TimeProfile.COS else 1.0

    def time_factor_rate(self, t: float) -> float:
        return -math.sin(t) if self.spec.time_profile == TimeProfile.COS else 0.0

    def psi(self, t: float) -> SpectralField:
        return self._profile * self.time_factor(t)

    def omega(self, t: float) -> SpectralField:
        return self.model.vorticity(self.psi(t))

    def forcing(self, t: float) -> SpectralField:
        """f = d_t omega_e + A omega_e + N(omega_e)."""
        psi = self.psi(t)
        omega = self.model.vorticity(psi)
        rate = self.model.vorticity(self._profile * self.time_factor_rate(t))
        dissipation = omega.with_coeffs(omega.coeffs * self.model.spectral.dissipation_symbol(self.model.spec))
        total = rate + dissipation + self.model.nonlinear_term(psi, omega)
        return total.as_role(FieldRole.FORCING)


def manufactured_forcing(spec: ManufacturedSpec, t: float, model: SpectralGfdModel) -> SpectralField:
    """
    Forcing that makes the manufactured stream function an exact solution.

    Args:
        spec: Manufactured-solution descriptor
        t: Time
        model: Model the forcing is manufactured for

    Returns:
        The forcing at time t
    """
    return ManufacturedSolution(spec, model).forcing(t)


class ZeroForcing(ForcingInterface):

    def __init__(self, model: SpectralGfdModel):
        self._field = SpectralField.zeros(model.grid, FieldRole.FORCING)

    def at(self, t: float) -> SpectralField:
        return self._field


class SteadyForcing(ForcingInterface):
    """Time-independent forcing held as one field."""

    def __init__(self, field: SpectralField):
        self._field = field.as_role(FieldRole.FORCING)

    def at(self, t: float) -> SpectralField:
        return self._field


class ManufacturedForcing(ForcingInterface):

    def __init__(self, solution: ManufacturedSolution):
        self.solution = solution
        self.time_dependent = solution.spec.time_profile != TimeProfile.CONSTANT
        self._steady: Optional[SpectralField] = None if self.time_dependent else solution.forcing(0.0)

    def at(self, t: float) -> SpectralField:
        if self._steady is not None:
            return self._steady
        return self.solution.forcing(t)


def create_forcing(spec: ForcingSpec, model: SpectralGfdModel) -> ForcingInterface:
    """
    Build the forcing provider described by a ForcingSpec.

    Args:
        spec: Forcing descriptor
        model: Model the forcing drives

    Returns:
        A ForcingInterface implementation
    """
    if spec.kind == ForcingKind.NONE:
        return ZeroForcing(model)
    if spec.kind == ForcingKind.KOLMOGOROV:
        reynolds = spec.reynolds if spec.reynolds is not None else model.spec.reynolds
        return SteadyForcing(kolmogorov_vorticity_forcing(spec.m, reynolds, model))
    if spec.kind == ForcingKind.MANUFACTURED:
        return ManufacturedForcing(ManufacturedSolution(spec.manufactured, model))
    values = np.load(spec.field_path)
    if values.shape != model.grid.shape:
        raise ConfigurationError(
            f"custom forcing shape {values.shape} does not match grid {model.grid.shape}",
            key_path="forcing.field_path",
        )
    logger.info("loaded custom forcing", path=str(spec.field_path))
    return SteadyForcing(model.sample(values, FieldRole.FORCING))
