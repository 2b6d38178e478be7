"""
Run configuration schema.

Every section forbids unknown keys, so a typo in a config file is reported
with its full key path instead of being silently ignored.
"""
from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from mrsav_gfd.models.grid import Grid
from mrsav_gfd.models.model_spec import ForcingSpec, ModelSpec
from mrsav_gfd.models.stepper import StepperParams
from mrsav_gfd.models.time_series import TailBand


class RunMode(str, Enum):
    """Which variant of the scheme a run uses."""
    MRSAV = "mrsav"
    EXPLICIT_BASELINE = "explicit_baseline"
    GAMMA_ZERO = "gamma_zero"


class InitialConditionPreset(str, Enum):
    ZERO = "zero"
    KOLMOGOROV_PERTURBED_A = "kolmogorov_perturbed_a"
    KOLMOGOROV_PERTURBED_B = "kolmogorov_perturbed_b"
    CQG_KOLMOGOROV_PERTURBED = "cqg_kolmogorov_perturbed"
    MANUFACTURED = "manufactured"


class SpinUpSpec(BaseModel):
    """Spin-up phase run with the mr-SAV stepper before recording starts."""
    model_config = {"frozen": True, "extra": "forbid"}

    duration: float = Field(..., gt=0)
    gamma: float = Field(default=1000.0, ge=0)


class RunSection(BaseModel):
    model_config = {"frozen": True, "extra": "forbid"}

    duration: float = Field(..., gt=0, description="Integration time T")
    initial_condition: InitialConditionPreset = Field(default=InitialConditionPreset.ZERO)
    q0: float = Field(default=1.0, description="Initial auxiliary variable")
    mode: RunMode = Field(default=RunMode.MRSAV)
    sample_stride: int = Field(default=10, ge=1)
    checkpoint_stride: Optional[int] = Field(default=None, ge=1)
    spin_up: Optional[SpinUpSpec] = None
    monitor_energy: bool = False


class ConvergenceSection(BaseModel):
    model_config = {"frozen": True, "extra": "forbid"}

    k_values: List[float] = Field(..., min_length=1)
    seed_exact: bool = Field(default=False, description="Seed both history levels from the exact solution")
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def check_decreasing(self) -> "ConvergenceSection":
        if any(k <= 0 for k in self.k_values):
            raise ValueError("k_values must be positive")
        if any(b >= a for a, b in zip(self.k_values, self.k_values[1:])):
            raise ValueError("k_values must be strictly decreasing")
        return self


def _table3_bands() -> List[TailBand]:
    return [TailBand(lo=12.6), TailBand(lo=15.0), TailBand(lo=11.5, hi=12.4)]


class DiagnosticsSection(BaseModel):
    model_config = {"frozen": True, "extra": "forbid"}

    spin_up_time: float = Field(default=100.0, ge=0)
    burst_column: str = "palinstrophy"
    burst_threshold: Optional[float] = None
    burst_threshold_factor: float = Field(default=1.5, gt=0)
    burst_min_separation: float = Field(default=10.0, ge=0)
    psd_column: str = "max_abs_vorticity"
    psd_window: str = Field(default="hann", pattern="^(hann|none)$")
    tail_column: str = "vorticity_grad_l2"
    tail_bands: List[TailBand] = Field(default_factory=_table3_bands)
    histogram_bin_width: float = Field(default=0.1, gt=0)


class OutputSection(BaseModel):
    model_config = {"frozen": True, "extra": "forbid"}

    directory: Path = Path("runs/default")


class FullProfile(BaseModel):
    """Overrides applied by ``--full`` for paper-scale runs."""
    model_config = {"frozen": True, "extra": "forbid"}

    modes: Optional[int] = None
    duration: Optional[float] = Field(default=None, gt=0)
    k: Optional[float] = Field(default=None, gt=0)


class RunConfig(BaseModel):
    """
    Complete description of one run of the harness.

    Attributes:
        grid: Periodic grid
        model: Model and physical parameters
        forcing: Forcing descriptor
        stepper: Time-step parameters
        run: Duration, initial condition, mode and output cadence
        convergence: k-sweep for convergence studies
        diagnostics: Post-processing parameters
        output: Output directory
        full_profile: Overrides for ``--full``
    """
    model_config = {"frozen": True, "extra": "forbid"}

    grid: Grid = Field(default_factory=Grid)
    model: ModelSpec = Field(default_factory=ModelSpec)
    forcing: ForcingSpec = Field(default_factory=ForcingSpec)
    stepper: StepperParams
    run: RunSection
    convergence: Optional[ConvergenceSection] = None
    diagnostics: DiagnosticsSection = Field(default_factory=DiagnosticsSection)
    output: OutputSection = Field(default_factory=OutputSection)
    full_profile: Optional[FullProfile] = None

    @model_validator(mode="after")
    def check_consistency(self) -> "RunConfig":
        if self.grid.dim != self.model.dim:
            raise ValueError(f"grid.dim={self.grid.dim} does not match model.kind={self.model.kind.value}")
        if self.run.initial_condition == InitialConditionPreset.MANUFACTURED \
                and self.forcing.kind.value != "manufactured":
            raise ValueError("the manufactured initial condition needs manufactured forcing")
        return self

    def effective_stepper(self) -> StepperParams:
        """Stepper parameters with the run mode applied."""
        if self.run.mode == RunMode.GAMMA_ZERO:
            return self.stepper.model_copy(update={"gamma": 0.0, "freeze_auxiliary": False})
        if self.run.mode == RunMode.EXPLICIT_BASELINE:
            return self.stepper.model_copy(update={"freeze_auxiliary": True})
        return self.stepper
