"""
Periodic grid descriptor.
"""
import math
from typing import Any, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator


class Grid(BaseModel):
    """
    Periodic collocation grid on a box of the given extents.

    Attributes:
        dim: Number of spatial dimensions (2 or 3)
        lengths: Domain length along each axis
        modes: Collocation point count along each axis (even, at least 4)

    Scalar ``lengths`` or ``modes`` are broadcast over all axes, so a config
    section may simply say ``modes = 128``.
    """
    model_config = {"frozen": True, "extra": "forbid"}

    dim: int = Field(default=2, description="Number of spatial dimensions")
    lengths: Tuple[float, ...] = Field(default=(), description="Per-axis domain length")
    modes: Tuple[int, ...] = Field(default=(), description="Per-axis collocation point count")

    @model_validator(mode="before")
    @classmethod
    def broadcast_axes(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        dim = data.get("dim", 2)
        lengths = data.get("lengths", 2 * math.pi)
        modes = data.get("modes", 32)
        if isinstance(lengths, (int, float)):
            lengths = (float(lengths),) * dim
        if isinstance(modes, int):
            modes = (modes,) * dim
        data["lengths"] = tuple(lengths)
        data["modes"] = tuple(modes)
        return data

    @field_validator("dim")
    @classmethod
    def check_dim(cls, value: int) -> int:
        if value not in (2, 3):
            raise ValueError("dim must be 2 or 3")
        return value

    @field_validator("modes")
    @classmethod
    def check_modes(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        for count in value:
            if count < 4 or count % 2:
                raise ValueError(f"mode counts must be even and >= 4, got {count}")
        return value

    @field_validator("lengths")
    @classmethod
    def check_lengths(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if any(length <= 0 for length in value):
            raise ValueError("domain lengths must be positive")
        return value

    @model_validator(mode="after")
    def check_axis_counts(self) -> "Grid":
        if len(self.lengths) != self.dim or len(self.modes) != self.dim:
            raise ValueError("lengths and modes need one entry per axis")
        return self

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.modes)

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    @property
    def point_count(self) -> int:
        return int(np.prod(self.modes))

    def signed_indices(self, axis: int) -> np.ndarray:
        """Signed mode indices in FFT storage order: 0..n/2-1, -n/2..-1."""
        n = self.modes[axis]
        return np.fft.fftfreq(n, d=1.0 / n).astype(int)

    def wavenumbers(self, axis: int) -> np.ndarray:
        return 2.0 * np.pi / self.lengths[axis] * self.signed_indices(axis)

    def coordinates(self, axis: int) -> np.ndarray:
        n = self.modes[axis]
        return self.lengths[axis] * np.arange(n) / n

    def mesh(self) -> Tuple[np.ndarray, ...]:
        """Collocation coordinates as full arrays indexed [x, y(, z)]."""
        return tuple(np.meshgrid(*(self.coordinates(a) for a in range(self.dim)), indexing="ij"))

    def index_of(self, components: Tuple[int, ...]) -> Tuple[int, ...]:
        """Storage position of a wavevector given by signed indices."""
        return tuple(j % n for j, n in zip(components, self.modes))

    def contains(self, components: Tuple[int, ...]) -> bool:
        if len(components) != self.dim:
            return False
        return all(-n // 2 <= j <= n // 2 - 1 for j, n in zip(components, self.modes))
