"""
Vorticity-equation models: 2D barotropic QG / Navier-Stokes and 3D continuously stratified QG.
"""
import numpy as np

from mrsav_gfd.errors import ConfigurationError
from mrsav_gfd.models.grid import Grid
from mrsav_gfd.models.model_spec import ModelKind, ModelSpec
from mrsav_gfd.models.spectral_field import FieldRole, SpectralField
from mrsav_gfd.services.interfaces import GfdModelInterface
from mrsav_gfd.services.spectral_service import SpectralService


class SpectralGfdModel(GfdModelInterface):
    """
    Shared implementation of the pseudo-spectral models.

    The nonlinear term is N(omega) = J(psi, omega) + beta * psi_x with the
    Jacobian taken over horizontal components; the beta term sits inside the
    bracket the auxiliary variable multiplies.
    """

    expected_dim = 2

    def __init__(self, spec: ModelSpec, grid: Grid, dealias: bool = False):
        if grid.dim != self.expected_dim:
            raise ConfigurationError(
                f"{spec.kind.value} needs a {self.expected_dim}D grid, got dim={grid.dim}"
            )
        self.spec = spec
        self._spectral = SpectralService(grid, dealias=dealias)
        self._froude = spec.effective_froude

    @property
    def spectral(self) -> SpectralService:
        return self._spectral

    @property
    def grid(self) -> Grid:
        return self._spectral.grid

    @property
    def froude(self) -> float:
        return self._froude

    def streamfunction(self, omega: SpectralField) -> SpectralField:
        return self._spectral.invert_elliptic(omega, self._froude)

    def vorticity(self, psi: SpectralField) -> SpectralField:
        return self._spectral.apply_elliptic(psi, self._froude)

    def nonlinear_term(self, psi_bar: SpectralField, omega_bar: SpectralField) -> SpectralField:
        if psi_bar.grid != omega_bar.grid:
            raise ConfigurationError("psi and omega live on different grids")
        if not self.spec.advection:
            return SpectralField.zeros(self.grid)
        result = self._spectral.jacobian(psi_bar, omega_bar)
        if self.spec.beta:
            result = result + self.spec.beta * self._spectral.partial_derivative(psi_bar, axis=0)
        return result

    def helmholtz_solve(self, rhs: SpectralField, sigma: float) -> SpectralField:
        return self._spectral.helmholtz_solve(rhs, sigma, self.spec)

    def coercivity_constant(self) -> float:
        symbol = self._spectral.dissipation_symbol(self.spec)
        return float(symbol[symbol > 0].min())

    def sample(self, values: np.ndarray, role: FieldRole = FieldRole.GENERIC) -> SpectralField:
        """Forward transform of real-space samples on this model's grid."""
        return self._spectral.forward(values, role)


class QG2DModel(SpectralGfdModel):
    """
    Damped-driven barotropic QG on a doubly periodic domain.

    With beta = 0 this is the 2D Navier-Stokes equation in vorticity /
    stream-function form.
    """

    expected_dim = 2


class CQG3DModel(SpectralGfdModel):
    """
    Continuously stratified QG with Froude-weighted elliptic operator and
    anisotropic dissipation nu_H Delta_H + nu_v d_zz.
    """

    expected_dim = 3

    def __init__(self, spec: ModelSpec, grid: Grid, dealias: bool = False):
        super().__init__(spec, grid, dealias)
        if self._froude == 0.0:
            # pure vertical modes would make the elliptic inverse singular
            raise ConfigurationError("CQG3D needs froude > 0", key_path="model.froude")


def create_model(spec: ModelSpec, grid: Grid, dealias: bool = False) -> SpectralGfdModel:
    """
    Build the model implementation for a ModelSpec.

    Args:
        spec: Model descriptor
        grid: Grid to discretise on
        dealias: Use the 2/3 rule in the nonlinear product

    Returns:
        A QG2DModel or CQG3DModel
    """
    if spec.kind == ModelKind.QG2D:
        return QG2DModel(spec, grid, dealias)
    return CQG3DModel(spec, grid, dealias)
