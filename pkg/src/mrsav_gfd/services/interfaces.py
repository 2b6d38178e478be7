"""
Service interfaces for the mrsav-gfd solver suite.

This module defines the contracts between the time stepper, the models it
integrates, the observers that watch a trajectory, and the stateless
post-processing services handed out by the ServiceProvider.
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from mrsav_gfd.models.checkpoint import Checkpoint
from mrsav_gfd.models.grid import Grid
from mrsav_gfd.models.model_spec import ModelSpec
from mrsav_gfd.models.spectral_field import SpectralField, Wavevector
from mrsav_gfd.models.stepper import TwoLevelState
from mrsav_gfd.models.time_series import (
    BurstReport, FieldNorms, Histogram, Periodogram, TailBand, TimeSeries
)


class GfdModelInterface(ABC):
    """
    Interface for a vorticity-equation model on a periodic grid.

    A model knows its elliptic operator (vorticity from stream function and
    back), its dissipation operator A, and its nonlinear term N.
    """

    spec: ModelSpec

    @property
    @abstractmethod
    def spectral(self):
        """The SpectralService the model computes with."""
        pass

    @abstractmethod
    def streamfunction(self, omega: SpectralField) -> SpectralField:
        """
        Invert the elliptic operator.

        Args:
            omega: Vorticity

        Returns:
            Stream function with zero mean
        """
        pass

    @abstractmethod
    def vorticity(self, psi: SpectralField) -> SpectralField:
        """
        Apply the elliptic operator.

        Args:
            psi: Stream function

        Returns:
            Vorticity
        """
        pass

    @abstractmethod
    def nonlinear_term(self, psi_bar: SpectralField, omega_bar: SpectralField) -> SpectralField:
        """
        Evaluate N = J(psi_bar, omega_bar) + beta * d_x psi_bar.

        Args:
            psi_bar: Stream function consistent with omega_bar
            omega_bar: Vorticity

        Returns:
            The nonlinear term, the bracket multiplied by q in the scheme
        """
        pass

    @abstractmethod
    def helmholtz_solve(self, rhs: SpectralField, sigma: float) -> SpectralField:
        """
        Solve (sigma + A) u = rhs.

        Args:
            rhs: Right-hand side
            sigma: Positive shift

        Returns:
            The solution u
        """
        pass

    @abstractmethod
    def coercivity_constant(self) -> float:
        """
        Smallest eigenvalue of A on mean-zero fields.

        Returns:
            c0 such that (A u, u) >= c0 ||u||^2 for mean-zero u
        """
        pass


class ForcingInterface(ABC):
    """Interface for the external forcing of the vorticity equation."""

    time_dependent: bool = False

    @abstractmethod
    def at(self, t: float) -> SpectralField:
        """
        Evaluate the forcing.

        Args:
            t: Time level

        Returns:
            Forcing coefficients at time t
        """
        pass


class TrajectoryObserver(ABC):
    """
    Interface for callbacks invoked along a trajectory.

    Observers receive read-only states and must not mutate them.
    """

    stride: int = 1

    @abstractmethod
    def observe(self, step_index: int, time: float, state: TwoLevelState) -> None:
        """
        Record one state.

        Args:
            step_index: Step index n of the state
            time: Time t^n
            state: The two-level state at step n
        """
        pass

    def close(self) -> None:
        """Flush buffered output; called once when the trajectory stops, even on failure."""


class DiagnosticsServiceInterface(ABC):
    """
    Interface for time-series and spectral statistics.
    """

    @abstractmethod
    def field_norms(self, spectral, omega: SpectralField, froude: float = 0.0) -> FieldNorms:
        """
        Compute enstrophy and palinstrophy.

        Args:
            spectral: SpectralService of the field's grid
            omega: Vorticity
            froude: Froude weighting for CQG fields

        Returns:
            The squared L2 and H1 norms
        """
        pass

    @abstractmethod
    def mode_trace(self, omega: SpectralField, wavevector: Wavevector) -> complex:
        """
        Read a single Fourier coefficient.

        Args:
            omega: Field to read
            wavevector: Signed mode indices

        Returns:
            The coefficient omega_hat(kappa)
        """
        pass

    @abstractmethod
    def periodogram(self, series: TimeSeries, window: str = "hann") -> Periodogram:
        """
        Compute the one-sided power spectrum of the series fluctuation.

        Args:
            series: Uniformly sampled series
            window: "hann" or "none"

        Returns:
            Frequencies in cycles per time unit and power per bin
        """
        pass

    @abstractmethod
    def detect_bursts(
        self, series: TimeSeries, threshold: Optional[float] = None, min_separation: float = 10.0,
        threshold_factor: float = 1.5,
    ) -> BurstReport:
        """
        Find maximal excursions above a threshold.

        Args:
            series: Series to scan
            threshold: Threshold; defaults to threshold_factor times the median
            min_separation: Excursions closer than this merge into one event
            threshold_factor: Multiplier of the median when no threshold is given

        Returns:
            Events and onset-to-onset intervals
        """
        pass

    @abstractmethod
    def tail_probabilities(self, series: TimeSeries, bands: Sequence[TailBand], spin_up: float = 0.0) -> List[float]:
        """
        Fraction of samples inside each closed band.

        Args:
            series: Series to count
            bands: Value bands
            spin_up: Samples before this time are discarded

        Returns:
            One fraction per band
        """
        pass

    @abstractmethod
    def convergence_order(self, errors: Sequence[Tuple[float, float]]) -> List[Optional[float]]:
        """
        Observed orders between consecutive (k, error) rows.

        Args:
            errors: Rows with strictly decreasing k

        Returns:
            One order per consecutive pair, None where an error is zero
        """
        pass

    @abstractmethod
    def histogram(self, series: TimeSeries, bin_width: float = 0.1, spin_up: float = 0.0) -> Histogram:
        """
        Histogram of the series values with a fixed bin width.

        Args:
            series: Series to bin
            bin_width: Bin width
            spin_up: Samples before this time are discarded

        Returns:
            Bin edges and counts
        """
        pass

    @abstractmethod
    def linear_trend(self, series: TimeSeries) -> float:
        """
        Least-squares slope of the series.

        Args:
            series: Series to fit

        Returns:
            The slope per time unit
        """
        pass


class CheckpointServiceInterface(ABC):
    """
    Interface for binary checkpoint I/O.
    """

    @abstractmethod
    def write(self, path: Path, grid: Grid, k: float, gamma: float, state: TwoLevelState) -> Path:
        """
        Write a checkpoint.

        Args:
            path: Destination file
            grid: Grid of the state
            k: Time step
            gamma: SAV relaxation rate
            state: Two-level state to store

        Returns:
            The written path
        """
        pass

    @abstractmethod
    def read(self, path: Path, expected_grid: Optional[Grid] = None) -> Checkpoint:
        """
        Read and validate a checkpoint.

        Args:
            path: Source file
            expected_grid: Grid the caller requires, checked against the header

        Returns:
            The stored checkpoint
        """
        pass


class PlotServiceInterface(ABC):
    """
    Interface for static plot rendering from CSV outputs.
    """

    @abstractmethod
    def plot_run(self, run_dir: Path, output_dir: Optional[Path] = None) -> List:
        """
        Render every recognised CSV in a run directory.

        Args:
            run_dir: Directory holding series.csv / psd.csv / bursts.csv
            output_dir: Where to write the figures; defaults to run_dir/plots

        Returns:
            The written plot artifacts
        """
        pass

