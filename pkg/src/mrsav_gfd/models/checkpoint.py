"""
Checkpoint data model.
"""
from pydantic import BaseModel

from mrsav_gfd.models.grid import Grid
from mrsav_gfd.models.stepper import TwoLevelState


class Checkpoint(BaseModel):
    """Everything needed to continue a trajectory bit-exactly."""
    model_config = {"arbitrary_types_allowed": True, "frozen": True}

    grid: Grid
    k: float
    gamma: float
    state: TwoLevelState
