"""
Post-processing of a finished run: PSD, bursts, tail probabilities and histogram tables.
"""
from pathlib import Path
from typing import List, Optional

import numpy as np
import structlog
from pydantic import BaseModel

from mrsav_gfd.errors import PreconditionError
from mrsav_gfd.models.run_config import DiagnosticsSection
from mrsav_gfd.models.time_series import BurstReport, Histogram, Periodogram
from mrsav_gfd.services.diagnostics_service import DiagnosticsService
from mrsav_gfd.services.interfaces import DiagnosticsServiceInterface
from mrsav_gfd.services.series_io import read_series, write_table
from mrsav_gfd.services.simulation_service import SERIES_FILE

logger = structlog.get_logger(__name__)


class DiagnosticsReport(BaseModel):
    model_config = {"arbitrary_types_allowed": True, "frozen": True}

    periodogram: Periodogram
    bursts: BurstReport
    tail_fractions: List[float]
    histogram: Histogram
    q_trend: Optional[float] = None
    written: List[Path]


def run_diagnostics(
    run_dir: Path, section: DiagnosticsSection, diagnostics: Optional[DiagnosticsServiceInterface] = None
) -> DiagnosticsReport:
    """
    Compute the statistics of a run's series.csv and write them next to it.

    Samples before ``section.spin_up_time`` are discarded for every
    statistic. The default burst threshold is the configured factor times
    the median of the retained samples.

    Args:
        run_dir: Directory holding series.csv
        section: Diagnostics parameters
        diagnostics: Diagnostics service

    Returns:
        The computed statistics and the written files
    """
    diagnostics = diagnostics or DiagnosticsService()
    run_dir = Path(run_dir)
    series_path = run_dir / SERIES_FILE
    spin_up = section.spin_up_time
    written: List[Path] = []

    def after_spin_up(column: str):
        series = read_series(series_path, column).after(spin_up)
        if len(series) == 0:
            raise PreconditionError(f"{series_path}: no {column} samples after t = {spin_up:g}")
        return series

    psd_series = after_spin_up(section.psd_column)
    periodogram = diagnostics.periodogram(psd_series, section.psd_window)
    written.append(write_table(
        run_dir / "psd.csv", ["frequency", "power"], np.column_stack([periodogram.frequencies, periodogram.power]),
        metadata={
            "column": section.psd_column,
            "window": section.psd_window,
            "sample_interval": format(periodogram.sample_interval, ".17g"),
            "spin_up_time": format(spin_up, ".17g"),
        },
    ))

    burst_series = after_spin_up(section.burst_column)
    bursts = diagnostics.detect_bursts(
        burst_series, section.burst_threshold, section.burst_min_separation, section.burst_threshold_factor
    )
    next_intervals = bursts.intervals + [float("nan")] if bursts.events else []
    written.append(write_table(
        run_dir / "bursts.csv", ["onset", "end", "peak", "interval_to_next"],
        [[e.onset, e.end, e.peak, gap] for e, gap in zip(bursts.events, next_intervals)],
        metadata={
            "column": section.burst_column,
            "threshold": format(bursts.threshold, ".17g"),
            "min_separation": format(bursts.min_separation, ".17g"),
        },
    ))

    tail_series = read_series(series_path, section.tail_column)
    fractions = diagnostics.tail_probabilities(tail_series, section.tail_bands, spin_up)
    q_series = after_spin_up("q_deviation")
    q_trend = diagnostics.linear_trend(q_series) if len(q_series) > 1 else None
    metadata = {"column": section.tail_column, "spin_up_time": format(spin_up, ".17g")}
    if q_trend is not None:
        metadata["q_trend"] = format(q_trend, ".17g")
    written.append(write_table(
        run_dir / "tails.csv", ["lo", "hi", "probability"],
        [
            [-np.inf if band.lo is None else band.lo, np.inf if band.hi is None else band.hi, fraction]
            for band, fraction in zip(section.tail_bands, fractions)
        ],
        metadata=metadata,
    ))

    histogram = diagnostics.histogram(tail_series, section.histogram_bin_width, spin_up)
    written.append(write_table(
        run_dir / "histogram.csv", ["bin_lo", "bin_hi", "count", "density"],
        [
            [lo, hi, int(count), density]
            for lo, hi, count, density in zip(histogram.edges[:-1], histogram.edges[1:], histogram.counts, histogram.density)
        ],
        metadata={"column": section.tail_column, "bin_width": format(histogram.bin_width, ".17g")},
    ))

    logger.info(
        "diagnostics written", run_dir=str(run_dir), bursts=len(bursts.events),
        tail_fractions=fractions, q_trend=q_trend,
    )
    return DiagnosticsReport(
        periodogram=periodogram, bursts=bursts, tail_fractions=fractions, histogram=histogram,
        q_trend=q_trend, written=written,
    )
