"""
Time-series and event data models used by the diagnostics.
"""
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator


class TimeSeries(BaseModel):
    """
    A labelled scalar series sampled at strictly increasing times.

    Attributes:
        times: Sample times
        values: Sample values, same length as times
        label: Column name the series came from
    """
    model_config = {"arbitrary_types_allowed": True, "frozen": True}

    times: np.ndarray
    values: np.ndarray
    label: str = ""

    @model_validator(mode="before")
    @classmethod
    def coerce_arrays(cls, data):
        if isinstance(data, dict):
            data = dict(data)
            data["times"] = np.asarray(data.get("times"), dtype=float)
            data["values"] = np.asarray(data.get("values"), dtype=float)
        return data

    @model_validator(mode="after")
    def check_sampling(self) -> "TimeSeries":
        if self.times.ndim != 1 or self.times.shape != self.values.shape:
            raise ValueError("times and values must be 1-D arrays of equal length")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        return self

    def __len__(self) -> int:
        return int(self.times.size)

    def after(self, t0: float) -> "TimeSeries":
        """Samples at times >= t0 (spin-up discard)."""
        keep = self.times >= t0
        return TimeSeries(times=self.times[keep], values=self.values[keep], label=self.label)

    def is_uniform(self, rtol: float = 1e-6) -> bool:
        if self.times.size < 2:
            return False
        steps = np.diff(self.times)
        return bool(np.allclose(steps, steps[0], rtol=rtol, atol=0.0))

    @property
    def sample_interval(self) -> float:
        return float(self.times[1] - self.times[0])


class BurstEvent(BaseModel):
    """A maximal excursion of a series above a threshold."""
    model_config = {"frozen": True}

    onset: float = Field(..., description="Time of the first sample above threshold")
    end: float = Field(..., description="Time the series returns below threshold")
    peak: float = Field(..., description="Largest value inside the excursion")


class BurstReport(BaseModel):
    model_config = {"frozen": True}

    threshold: float
    min_separation: float
    events: List[BurstEvent] = Field(default_factory=list)
    intervals: List[float] = Field(default_factory=list)


class TailBand(BaseModel):
    """Closed value band [lo, hi]; a missing bound is unbounded."""
    model_config = {"frozen": True, "extra": "forbid"}

    lo: Optional[float] = None
    hi: Optional[float] = None

    def label(self) -> str:
        lo = "-inf" if self.lo is None else f"{self.lo:g}"
        hi = "inf" if self.hi is None else f"{self.hi:g}"
        return f"[{lo},{hi}]"


class Periodogram(BaseModel):
    model_config = {"arbitrary_types_allowed": True, "frozen": True}

    frequencies: np.ndarray
    power: np.ndarray
    window: str
    sample_interval: float


class Histogram(BaseModel):
    model_config = {"arbitrary_types_allowed": True, "frozen": True}

    edges: np.ndarray
    counts: np.ndarray
    bin_width: float

    @property
    def density(self) -> np.ndarray:
        total = self.counts.sum()
        return self.counts / (total * self.bin_width) if total else np.zeros_like(self.counts, dtype=float)


class FieldNorms(BaseModel):
    """Squared L2 norm (enstrophy) and squared gradient norm (palinstrophy) of a vorticity field."""
    model_config = {"frozen": True}

    enstrophy: float
    palinstrophy: float

    @property
    def l2_norm(self) -> float:
        return float(np.sqrt(self.enstrophy))

    @property
    def gradient_norm(self) -> float:
        return float(np.sqrt(self.palinstrophy))
