"""
Pydantic data models for the mrsav-gfd solver suite.
"""
from .grid import Grid
from .model_spec import ForcingKind, ForcingSpec, ManufacturedSpec, ModelKind, ModelSpec, TimeProfile
from .run_config import InitialConditionPreset, RunConfig, RunMode
from .spectral_field import FieldRole, SpectralField, Wavevector
from .stepper import StepperParams, TwoLevelState
from .time_series import BurstEvent, FieldNorms, TailBand, TimeSeries

__all__ = [
    "Grid", "ForcingKind", "ForcingSpec", "ManufacturedSpec", "ModelKind", "ModelSpec", "TimeProfile",
    "InitialConditionPreset", "RunConfig", "RunMode", "FieldRole", "SpectralField", "Wavevector",
    "StepperParams", "TwoLevelState", "BurstEvent", "FieldNorms", "TailBand", "TimeSeries",
]
