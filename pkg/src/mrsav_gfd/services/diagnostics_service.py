"""
Time-series and spectral statistics over solver output.
"""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.signal
import structlog

from mrsav_gfd.errors import PreconditionError
from mrsav_gfd.models.spectral_field import SpectralField, Wavevector
from mrsav_gfd.models.time_series import (
    BurstEvent, BurstReport, FieldNorms, Histogram, Periodogram, TailBand, TimeSeries
)
from mrsav_gfd.services.interfaces import DiagnosticsServiceInterface
from mrsav_gfd.services.spectral_service import SpectralService

logger = structlog.get_logger(__name__)

PSD_MIN_SAMPLES = 8
WINDOWS = {"none": "boxcar", "hann": "hann"}


class DiagnosticsService(DiagnosticsServiceInterface):
    """
    Stateless implementation of the diagnostics used by the harness.
    """

    def field_norms(self, spectral: SpectralService, omega: SpectralField, froude: float = 0.0) -> FieldNorms:
        return FieldNorms(
            enstrophy=spectral.sobolev_norm_sq(omega, 0),
            palinstrophy=spectral.sobolev_norm_sq(omega, 1, froude),
        )

    def mode_trace(self, omega: SpectralField, wavevector: Wavevector) -> complex:
        if not omega.grid.contains(wavevector.components):
            raise PreconditionError(f"wavevector {wavevector.components} outside grid modes {omega.grid.modes}")
        return complex(omega.coeffs[omega.grid.index_of(wavevector.components)])

    def periodogram(self, series: TimeSeries, window: str = "hann") -> Periodogram:
        """
        One-sided power spectrum of the mean-removed series.

        Power is per bin ("spectrum" scaling), so without a window the bins
        sum to the variance of the series.

        Args:
            series: Uniformly sampled series with at least 8 samples
            window: "hann" or "none"

        Returns:
            Frequencies in cycles per time unit and power per bin
        """
        if window not in WINDOWS:
            raise PreconditionError(f"unknown window {window!r}, expected one of {sorted(WINDOWS)}")
        if len(series) < PSD_MIN_SAMPLES:
            raise PreconditionError(f"periodogram needs at least {PSD_MIN_SAMPLES} samples, got {len(series)}")
        if not series.is_uniform():
            raise PreconditionError(f"periodogram needs uniform sampling ({series.label or 'series'})")
        dt = series.sample_interval
        frequencies, power = scipy.signal.periodogram(
            series.values, fs=1.0 / dt, window=WINDOWS[window], detrend="constant", scaling="spectrum"
        )
        return Periodogram(frequencies=frequencies, power=power, window=window, sample_interval=dt)

    def detect_bursts(
        self, series: TimeSeries, threshold: Optional[float] = None, min_separation: float = 10.0,
        threshold_factor: float = 1.5,
    ) -> BurstReport:
        """
        Find maximal runs of samples at or above a threshold.

        A run starting at sample i and stopping before sample j has onset
        t_i and end t_j; a run reaching the last sample ends one sample
        interval after it. Runs whose gap (next onset minus previous end) is
        below min_separation merge into one event.

        Args:
            series: Series to scan
            threshold: Threshold; defaults to threshold_factor times the median, giving an
                empty report when that default does not exceed the series minimum
            min_separation: Merge distance in time units
            threshold_factor: Multiplier of the median for the default threshold

        Returns:
            The events and their onset-to-onset intervals
        """
        values, times = series.values, series.times
        if values.size == 0:
            raise PreconditionError("burst detection needs a nonempty series")
        if threshold is None:
            threshold = threshold_factor * float(np.median(values))
            if threshold <= float(values.min()):
                logger.debug("no excursions above the median multiple", label=series.label, threshold=threshold)
                return BurstReport(threshold=threshold, min_separation=min_separation)
        elif threshold <= float(values.min()):
            raise PreconditionError(f"threshold {threshold:g} must exceed the series minimum {values.min():g}")

        above = np.concatenate(([0], (values >= threshold).astype(np.int8), [0]))
        edges = np.diff(above)
        starts = np.flatnonzero(edges == 1)
        stops = np.flatnonzero(edges == -1)
        tail_step = float(times[-1] - times[-2]) if times.size > 1 else 0.0

        events: List[BurstEvent] = []
        for start, stop in zip(starts, stops):
            end = float(times[stop]) if stop < times.size else float(times[-1]) + tail_step
            peak = float(values[start:stop].max())
            onset = float(times[start])
            if events and onset - events[-1].end < min_separation:
                last = events.pop()
                events.append(BurstEvent(onset=last.onset, end=end, peak=max(last.peak, peak)))
            else:
                events.append(BurstEvent(onset=onset, end=end, peak=peak))

        intervals = [b.onset - a.onset for a, b in zip(events, events[1:])]
        logger.debug("bursts detected", label=series.label, events=len(events), threshold=threshold)
        return BurstReport(threshold=threshold, min_separation=min_separation, events=events, intervals=intervals)

    def tail_probabilities(self, series: TimeSeries, bands: Sequence[TailBand], spin_up: float = 0.0) -> List[float]:
        values = series.after(spin_up).values
        if values.size == 0:
            raise PreconditionError(f"no samples left after discarding t < {spin_up:g}")
        fractions = []
        for band in bands:
            if band.lo is not None and band.hi is not None and band.lo > band.hi:
                raise PreconditionError(f"band {band.label()} is not well ordered")
            inside = np.ones(values.shape, dtype=bool)
            if band.lo is not None:
                inside &= values >= band.lo
            if band.hi is not None:
                inside &= values <= band.hi
            fractions.append(float(inside.mean()))
        return fractions

    def convergence_order(self, errors: Sequence[Tuple[float, float]]) -> List[Optional[float]]:
        orders: List[Optional[float]] = []
        for (k_coarse, e_coarse), (k_fine, e_fine) in zip(errors, errors[1:]):
            if k_fine >= k_coarse:
                raise PreconditionError("time steps must be strictly decreasing")
            if e_coarse > 0 and e_fine > 0 and math.isfinite(e_coarse) and math.isfinite(e_fine):
                orders.append(math.log(e_coarse / e_fine) / math.log(k_coarse / k_fine))
            else:
                orders.append(None)
        return orders

    def histogram(self, series: TimeSeries, bin_width: float = 0.1, spin_up: float = 0.0) -> Histogram:
        """Counts in bins of fixed width aligned to integer multiples of the width."""
        if bin_width <= 0:
            raise PreconditionError(f"bin width must be positive, got {bin_width}")
        values = series.after(spin_up).values
        if values.size == 0:
            raise PreconditionError(f"no samples left after discarding t < {spin_up:g}")
        first = math.floor(values.min() / bin_width)
        last = max(math.floor(values.max() / bin_width) + 1, first + 1)
        edges = np.arange(first, last + 1) * bin_width
        if edges[0] > values.min():
            edges = np.concatenate(([edges[0] - bin_width], edges))
        if edges[-1] < values.max():
            edges = np.append(edges, edges[-1] + bin_width)
        counts, _ = np.histogram(values, bins=edges)
        return Histogram(edges=edges, counts=counts, bin_width=bin_width)

    def linear_trend(self, series: TimeSeries) -> float:
        if len(series) < 2:
            raise PreconditionError("a trend needs at least two samples")
        slope, _ = np.polyfit(series.times, series.values, 1)
        return float(slope)
