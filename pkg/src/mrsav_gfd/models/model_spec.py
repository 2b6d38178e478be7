"""
Model and forcing descriptors.
"""
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class ModelKind(str, Enum):
    """Which PDE is integrated."""
    QG2D = "QG2D"
    CQG3D = "CQG3D"


class ModelSpec(BaseModel):
    """
    Physical parameters of the vorticity equation.

    QG2D with ``beta = 0`` is the 2D Navier-Stokes equation in vorticity /
    stream-function form. CQG3D adds the Froude-weighted elliptic operator
    and anisotropic dissipation; ``nu_h`` and ``nu_v`` default to ``1/Re``.

    Attributes:
        kind: QG2D or CQG3D
        reynolds: Reynolds number, viscosity defaults to its inverse
        nu_h: Horizontal viscosity (CQG3D)
        nu_v: Vertical viscosity (CQG3D)
        beta: Beta-plane coefficient
        froude: Froude number F weighting the vertical part of the elliptic operator (CQG3D)
        advection: Include the nonlinear term; False gives the linear N=0 model
    """
    model_config = {"frozen": True, "extra": "forbid"}

    kind: ModelKind = Field(default=ModelKind.QG2D, description="Model kind")
    reynolds: float = Field(default=100.0, gt=0, description="Reynolds number")
    nu_h: Optional[float] = Field(default=None, gt=0, description="Horizontal viscosity override")
    nu_v: Optional[float] = Field(default=None, gt=0, description="Vertical viscosity override")
    beta: float = Field(default=0.0, ge=0, description="Beta-plane coefficient")
    froude: float = Field(default=1.0, ge=0, description="Froude number (CQG3D only)")
    advection: bool = Field(default=True, description="Include the nonlinear term")

    @model_validator(mode="after")
    def check_kind_specific(self) -> "ModelSpec":
        if self.kind == ModelKind.QG2D and (self.nu_h is not None or self.nu_v is not None):
            raise ValueError("nu_h / nu_v apply to CQG3D only; QG2D uses 1/reynolds")
        return self

    @property
    def dim(self) -> int:
        return 2 if self.kind == ModelKind.QG2D else 3

    @property
    def viscosity(self) -> float:
        return 1.0 / self.reynolds

    @property
    def horizontal_viscosity(self) -> float:
        return self.nu_h if self.nu_h is not None else self.viscosity

    @property
    def vertical_viscosity(self) -> float:
        return self.nu_v if self.nu_v is not None else self.viscosity

    @property
    def effective_froude(self) -> float:
        return self.froude if self.kind == ModelKind.CQG3D else 0.0


class ForcingKind(str, Enum):
    KOLMOGOROV = "kolmogorov"
    MANUFACTURED = "manufactured"
    NONE = "none"
    CUSTOM = "custom"


class TimeProfile(str, Enum):
    COS = "cos"
    CONSTANT = "constant"


class ManufacturedSpec(BaseModel):
    """
    Separable trigonometric exact stream function.

    psi_e(t, x) = T(t) * prod_i cos(2 pi m x_i / L_i), with T = cos(t) or 1.
    """
    model_config = {"frozen": True, "extra": "forbid"}

    family: str = Field(default="cos_product", description="Built-in family name")
    m: int = Field(default=1, ge=1, description="Integer mode per axis")
    time_profile: TimeProfile = Field(default=TimeProfile.COS, description="Time factor T(t)")


class ForcingSpec(BaseModel):
    """
    External forcing of the vorticity equation.

    Attributes:
        kind: kolmogorov, manufactured, none or custom
        m: Kolmogorov wavenumber
        reynolds: Kolmogorov amplitude Reynolds number; defaults to the model's
        manufactured: Exact-solution descriptor for manufactured forcing
        field_path: Real-space ``.npy`` array for custom forcing
    """
    model_config = {"frozen": True, "extra": "forbid"}

    kind: ForcingKind = Field(default=ForcingKind.NONE, description="Forcing kind")
    m: int = Field(default=2, ge=1, description="Kolmogorov wavenumber")
    reynolds: Optional[float] = Field(default=None, gt=0, description="Kolmogorov Reynolds number")
    manufactured: ManufacturedSpec = Field(default_factory=ManufacturedSpec)
    field_path: Optional[Path] = Field(default=None, description="Custom forcing array file")

    @model_validator(mode="after")
    def check_custom_path(self) -> "ForcingSpec":
        if self.kind == ForcingKind.CUSTOM and self.field_path is None:
            raise ValueError("custom forcing needs field_path")
        return self

    @property
    def time_dependent(self) -> bool:
        return self.kind == ForcingKind.MANUFACTURED and self.manufactured.time_profile != TimeProfile.CONSTANT
