"""
Spectral field and wavevector data models.
"""
from enum import Enum
from typing import Tuple

import numpy as np
from pydantic import BaseModel, Field

from mrsav_gfd.models.grid import Grid


class FieldRole(str, Enum):
    """Physical meaning of the scalar a SpectralField carries."""
    VORTICITY = "vorticity"
    STREAMFUNCTION = "streamfunction"
    FORCING = "forcing"
    GENERIC = "generic"


class SpectralField(BaseModel):
    """
    Fourier coefficients of a real scalar field on a periodic grid.

    Coefficients are stored full-spectrum in FFT order and normalised so the
    constant mode equals the spatial mean. Instances are immutable; the
    arithmetic helpers return new fields on the same grid.

    Attributes:
        grid: The grid the coefficients live on
        coeffs: Complex coefficient array with shape ``grid.modes``
        role: What the field represents (vorticity, stream function, forcing)
    """
    model_config = {"arbitrary_types_allowed": True, "frozen": True}

    grid: Grid = Field(..., description="Grid of the field")
    coeffs: np.ndarray = Field(..., description="Complex Fourier coefficients")
    role: FieldRole = Field(default=FieldRole.GENERIC, description="Field role tag")

    @classmethod
    def zeros(cls, grid: Grid, role: FieldRole = FieldRole.GENERIC) -> "SpectralField":
        return cls(grid=grid, coeffs=np.zeros(grid.shape, dtype=complex), role=role)

    def with_coeffs(self, coeffs: np.ndarray, role: FieldRole | None = None) -> "SpectralField":
        # model_construct skips validation: coeffs come from operations on self.coeffs
        return SpectralField.model_construct(grid=self.grid, coeffs=coeffs, role=role or self.role)

    def as_role(self, role: FieldRole) -> "SpectralField":
        return self.with_coeffs(self.coeffs, role)

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.coeffs).all())

    def max_abs(self) -> float:
        return float(np.abs(self.coeffs).max())

    def __add__(self, other: "SpectralField") -> "SpectralField":
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __mul__(self, scalar: float) -> "SpectralField":
        return self.with_coeffs(self.coeffs * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "SpectralField":
        return self.with_coeffs(self.coeffs / scalar)

    def __neg__(self) -> "SpectralField":
        return self.with_coeffs(-self.coeffs)


class Wavevector(BaseModel):
    """A wavevector given by its signed per-axis mode indices."""
    model_config = {"frozen": True}

    components: Tuple[int, ...]

    def physical(self, grid: Grid) -> Tuple[float, ...]:
        return tuple(2.0 * np.pi / length * j for j, length in zip(self.components, grid.lengths))

    def negated(self) -> "Wavevector":
        return Wavevector(components=tuple(-j for j in self.components))
