"""
Fourier collocation primitives on periodic 2D and 3D grids.

Transforms use scipy.fft with ``norm="forward"`` so the coefficient of the
constant mode is the spatial mean and Parseval reads
``mean(f g) = sum(f_hat conj(g_hat))``.
"""
from enum import Enum
from typing import Dict, Tuple, Union

import numpy as np
import scipy.fft

from mrsav_gfd.errors import ConfigurationError, NumericFaultError, PreconditionError, SingularModeError
from mrsav_gfd.models.grid import Grid
from mrsav_gfd.models.model_spec import ModelSpec
from mrsav_gfd.models.spectral_field import FieldRole, SpectralField


class Direction(str, Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


class SpectralService:
    """
    Spectral operators bound to one grid.

    Wavenumber tables, derivative symbols and the dealiasing mask are built
    once per grid; every operation is a pure function of its arguments.
    """

    def __init__(self, grid: Grid, dealias: bool = False):
        """
        Initialize the operator tables.

        Args:
            grid: The periodic grid
            dealias: Apply the 2/3 rule inside the Jacobian
        """
        self.grid = grid
        self.dealias = dealias
        dim = grid.dim
        shape = [1] * dim

        self._wavenumbers = []
        self._first = []
        self._second = []
        keep = np.ones(grid.shape, dtype=bool)
        for axis in range(dim):
            axis_shape = list(shape)
            axis_shape[axis] = grid.modes[axis]
            kappa = grid.wavenumbers(axis)
            first = kappa.copy()
            first[grid.modes[axis] // 2] = 0.0  # Nyquist: odd operator on an unpaired mode
            self._wavenumbers.append(kappa.reshape(axis_shape))
            self._first.append((1j * first).reshape(axis_shape))
            self._second.append((-kappa ** 2).reshape(axis_shape))
            cutoff = grid.modes[axis] // 3
            keep &= (np.abs(grid.signed_indices(axis)) <= cutoff).reshape(axis_shape)
        self._dealias_mask = keep

        self._horizontal_sq = np.broadcast_to(self._wavenumbers[0] ** 2 + self._wavenumbers[1] ** 2, grid.shape)
        self._vertical_sq = (
            np.broadcast_to(self._wavenumbers[2] ** 2, grid.shape) if dim == 3 else np.zeros(grid.shape)
        )
        self._elliptic_cache: Dict[float, np.ndarray] = {}
        self._dissipation_cache: Dict[Tuple[float, float], np.ndarray] = {}

    # Transforms

    def forward(self, values: np.ndarray, role: FieldRole = FieldRole.GENERIC) -> SpectralField:
        values = np.asarray(values)
        if values.shape != self.grid.shape:
            raise ConfigurationError(f"array shape {values.shape} does not match grid {self.grid.shape}")
        coeffs = scipy.fft.fftn(values, norm="forward")
        return SpectralField(grid=self.grid, coeffs=coeffs, role=role)

    def inverse(self, field: SpectralField) -> np.ndarray:
        self._check_grid(field)
        return scipy.fft.ifftn(field.coeffs, norm="forward").real

    def transform(
        self, data: Union[np.ndarray, SpectralField], direction: Direction
    ) -> Union[SpectralField, np.ndarray]:
        """
        Transform between real space and Fourier space.

        Args:
            data: Real-space array (forward) or SpectralField (inverse)
            direction: Direction.FORWARD or Direction.INVERSE

        Returns:
            A SpectralField for the forward direction, a real array otherwise
        """
        if Direction(direction) == Direction.FORWARD:
            return self.forward(data)
        return self.inverse(data)

    # Differentiation and elliptic operators

    def partial_derivative(self, field: SpectralField, axis: int, order: int = 1) -> SpectralField:
        self._check_grid(field)
        if not 0 <= axis < self.grid.dim:
            raise PreconditionError(f"axis {axis} outside grid of dimension {self.grid.dim}")
        if order == 1:
            symbol = self._first[axis]
        elif order == 2:
            symbol = self._second[axis]
        else:
            raise PreconditionError(f"derivative order must be 1 or 2, got {order}")
        return field.with_coeffs(field.coeffs * symbol, FieldRole.GENERIC)

    def elliptic_symbol(self, froude: float = 0.0) -> np.ndarray:
        """Symbol of -(Delta_H + F^2 d_zz); in 2D simply |kappa|^2."""
        froude = float(froude) if self.grid.dim == 3 else 0.0
        if froude not in self._elliptic_cache:
            self._elliptic_cache[froude] = self._horizontal_sq + froude ** 2 * self._vertical_sq
        return self._elliptic_cache[froude]

    def apply_elliptic(self, psi: SpectralField, froude: float = 0.0) -> SpectralField:
        """Vorticity of a stream function: omega = -(Delta_H + F^2 d_zz) psi."""
        self._check_grid(psi)
        return psi.with_coeffs(psi.coeffs * self.elliptic_symbol(froude), FieldRole.VORTICITY)

    def invert_elliptic(self, omega: SpectralField, froude: float = 0.0) -> SpectralField:
        """
        Stream function of a vorticity field with the zero-mode gauge psi_hat(0) = 0.

        Args:
            omega: Vorticity coefficients
            froude: Froude number weighting the vertical derivative (3D only)

        Returns:
            The stream function

        Raises:
            SingularModeError: A vertical-only mode carries energy while F = 0 in 3D
        """
        self._check_grid(omega)
        symbol = self.elliptic_symbol(froude)
        null_space = symbol == 0.0
        null_space[(0,) * self.grid.dim] = False
        if null_space.any() and np.any(omega.coeffs[null_space] != 0.0):
            raise SingularModeError("elliptic operator is singular on pure vertical modes when froude = 0")
        psi = np.zeros_like(omega.coeffs)
        nonzero = symbol != 0.0
        psi[nonzero] = omega.coeffs[nonzero] / symbol[nonzero]
        return omega.with_coeffs(psi, FieldRole.STREAMFUNCTION)

    def dissipation_symbol(self, model: ModelSpec) -> np.ndarray:
        """Positive symbol of A = -(nu_H Delta_H + nu_v d_zz)."""
        key = (model.horizontal_viscosity, model.vertical_viscosity)
        if key not in self._dissipation_cache:
            self._dissipation_cache[key] = key[0] * self._horizontal_sq + key[1] * self._vertical_sq
        return self._dissipation_cache[key]

    def helmholtz_solve(self, rhs: SpectralField, sigma: float, model: ModelSpec) -> SpectralField:
        """
        Solve (sigma + A) u = rhs mode by mode.

        Args:
            rhs: Right-hand side
            sigma: Positive shift, 3/(2k) for BDF2 and 1/k for the bootstrap step
            model: Supplies the (possibly anisotropic) viscosities of A

        Returns:
            The solution u

        Raises:
            NumericFaultError: The right-hand side contains NaN or Inf
        """
        self._check_grid(rhs)
        if sigma <= 0:
            raise PreconditionError(f"helmholtz shift must be positive, got {sigma}")
        if not rhs.is_finite():
            raise NumericFaultError("non-finite right-hand side in helmholtz_solve")
        return rhs.with_coeffs(rhs.coeffs / (sigma + self.dissipation_symbol(model)))

    # Nonlinear products

    def jacobian(self, psi: SpectralField, omega: SpectralField) -> SpectralField:
        """
        Pseudo-spectral J(psi, omega) = grad_perp psi . grad omega, horizontal components in 3D.

        Derivatives are formed in Fourier space, multiplied pointwise on the
        collocation grid and transformed back.
        """
        self._check_grid(psi)
        self._check_grid(omega)
        psi_hat = psi.coeffs
        omega_hat = omega.coeffs
        if self.dealias:
            psi_hat = psi_hat * self._dealias_mask
            omega_hat = omega_hat * self._dealias_mask
        psi_x = self._to_real(psi_hat * self._first[0])
        psi_y = self._to_real(psi_hat * self._first[1])
        omega_x = self._to_real(omega_hat * self._first[0])
        omega_y = self._to_real(omega_hat * self._first[1])
        product = scipy.fft.fftn(psi_x * omega_y - psi_y * omega_x, norm="forward")
        # divergence form: the mean of J vanishes identically
        product[(0,) * self.grid.dim] = 0.0
        if self.dealias:
            product *= self._dealias_mask
        return SpectralField.model_construct(grid=self.grid, coeffs=product, role=FieldRole.GENERIC)

    # Inner products and norms

    def inner_product_l2(self, f: SpectralField, g: SpectralField) -> float:
        self._check_grid(f)
        self._check_grid(g)
        return self.grid.volume * float(np.vdot(g.coeffs, f.coeffs).real)

    def sobolev_norm_sq(self, field: SpectralField, s: int, froude: float = 0.0) -> float:
        """
        Squared H^s norm for s in {-1, 0, 1}.

        s = 0 gives ||f||^2, s = 1 gives ||grad f||^2 (palinstrophy for a
        vorticity field) and s = -1 the negative norm of a mean-zero field.
        """
        self._check_grid(field)
        if s not in (-1, 0, 1):
            raise PreconditionError(f"sobolev index must be -1, 0 or 1, got {s}")
        power = np.abs(field.coeffs) ** 2
        if s == 0:
            return self.grid.volume * float(power.sum())
        symbol = self.elliptic_symbol(froude)
        if s == 1:
            return self.grid.volume * float((symbol * power).sum())
        mean = abs(field.coeffs[(0,) * self.grid.dim])
        if mean > 1e-14 * max(1.0, float(np.abs(field.coeffs).max())):
            raise PreconditionError("H^-1 norm needs a mean-zero field")
        nonzero = symbol != 0.0
        singular = ~nonzero
        singular[(0,) * self.grid.dim] = False
        if np.any(power[singular] > 0.0):
            raise SingularModeError("H^-1 norm undefined on pure vertical modes when froude = 0")
        return self.grid.volume * float((power[nonzero] / symbol[nonzero]).sum())

    # Projections

    def project_mean_zero(self, field: SpectralField) -> SpectralField:
        coeffs = field.coeffs.copy()
        coeffs[(0,) * self.grid.dim] = 0.0
        return field.with_coeffs(coeffs)

    def dealias_two_thirds(self, field: SpectralField) -> SpectralField:
        self._check_grid(field)
        return field.with_coeffs(field.coeffs * self._dealias_mask)

    @property
    def dealias_mask(self) -> np.ndarray:
        return self._dealias_mask

    def _to_real(self, coeffs: np.ndarray) -> np.ndarray:
        return scipy.fft.ifftn(coeffs, norm="forward").real

    def _check_grid(self, field: SpectralField) -> None:
        if field.grid is not self.grid and field.grid != self.grid:
            raise ConfigurationError("field grid does not match the operator grid")
