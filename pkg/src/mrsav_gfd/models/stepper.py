"""
Time-stepper parameters and solver history.
"""
import numpy as np
from pydantic import BaseModel, Field

from mrsav_gfd.models.spectral_field import SpectralField


class StepperParams(BaseModel):
    """
    Parameters of the mr-SAV-BDF2 step.

    Attributes:
        k: Time step
        gamma: Relaxation rate of the auxiliary variable (0 disables mean reversion)
        dealias: Apply the 2/3 rule to the nonlinear product
        freeze_auxiliary: Hold q at 1 and skip the q-equation (explicit BDF2 baseline)
        divergence_threshold: Largest admissible coefficient magnitude before a step counts as blown up
    """
    model_config = {"frozen": True, "extra": "forbid"}

    k: float = Field(..., gt=0, description="Time step")
    gamma: float = Field(default=1000.0, ge=0, description="SAV relaxation rate")
    dealias: bool = Field(default=False, description="2/3-rule dealiasing")
    freeze_auxiliary: bool = Field(default=False, description="Explicit baseline with q = 1")
    divergence_threshold: float = Field(default=1e8, gt=0, description="Blow-up coefficient bound")


class TwoLevelState(BaseModel):
    """
    Two time levels of vorticity and auxiliary variable, newest first.

    Attributes:
        u_curr: Vorticity at step n
        u_prev: Vorticity at step n-1
        q_curr: Auxiliary variable at step n
        q_prev: Auxiliary variable at step n-1
        step_index: n
        time: t^n
    """
    model_config = {"arbitrary_types_allowed": True, "frozen": True}

    u_curr: SpectralField
    u_prev: SpectralField
    q_curr: float
    q_prev: float
    step_index: int = Field(default=0, ge=0)
    time: float = 0.0

    @classmethod
    def from_initial(cls, u0: SpectralField, q0: float) -> "TwoLevelState":
        """Single-level data viewed as a state whose history repeats it."""
        return cls(u_curr=u0, u_prev=u0, q_curr=q0, q_prev=q0, step_index=0, time=0.0)

    def is_finite(self) -> bool:
        return self.u_curr.is_finite() and self.u_prev.is_finite() and bool(np.isfinite([self.q_curr, self.q_prev]).all())


