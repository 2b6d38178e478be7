"""
Static SVG plots rendered from the CSV tables of a run directory.
"""
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import matplotlib
import numpy as np
import structlog
from matplotlib.figure import Figure
from pydantic import BaseModel

from mrsav_gfd.errors import SchemaError
from mrsav_gfd.services.interfaces import PlotServiceInterface
from mrsav_gfd.services.series_io import read_table

matplotlib.use("Agg")

logger = structlog.get_logger(__name__)

SQUARED_NORM_COLUMNS = {"enstrophy", "palinstrophy"}


class PlotArtifact(BaseModel):
    """A written figure and the axis ranges it shows."""
    model_config = {"frozen": True}

    path: Path
    x_range: Tuple[float, float]
    y_range: Tuple[float, float]


def _column(path: Path, header: List[str], rows: np.ndarray, name: str) -> np.ndarray:
    if name not in header:
        raise SchemaError(f"{path}: missing column {name!r}")
    return rows[:, header.index(name)]


def _save(fig: Figure, path: Path) -> PlotArtifact:
    ax = fig.axes[0]
    artifact = PlotArtifact(path=path, x_range=tuple(ax.get_xlim()), y_range=tuple(ax.get_ylim()))
    fig.savefig(path, format="svg")
    logger.debug("plot written", path=str(path))
    return artifact


class PlotService(PlotServiceInterface):
    """
    Renders line plots for series, PSD and convergence tables and bar charts
    for burst intervals and histograms. Purely derived from the CSV files.
    """

    def __init__(self):
        self._renderers: Dict[str, Callable[[Path, Path], List[PlotArtifact]]] = {
            "series.csv": self.plot_series,
            "psd.csv": self.plot_psd,
            "bursts.csv": self.plot_bursts,
            "histogram.csv": self.plot_histogram,
            "convergence.csv": self.plot_convergence,
        }

    def plot_run(self, run_dir: Path, output_dir: Optional[Path] = None) -> List[PlotArtifact]:
        """
        Render every recognised CSV in a run directory.

        Args:
            run_dir: Directory with the tables
            output_dir: Figure directory, run_dir/plots by default

        Returns:
            The written artifacts
        """
        run_dir = Path(run_dir)
        output_dir = Path(output_dir) if output_dir is not None else run_dir / "plots"
        found = [name for name in self._renderers if (run_dir / name).exists()]
        if not found:
            raise SchemaError(f"{run_dir}: no recognised CSV files ({', '.join(self._renderers)})")
        output_dir.mkdir(parents=True, exist_ok=True)
        artifacts: List[PlotArtifact] = []
        for name in found:
            artifacts.extend(self._renderers[name](run_dir / name, output_dir))
        logger.info("plots written", run_dir=str(run_dir), count=len(artifacts))
        return artifacts

    def plot_series(self, csv_path: Path, output_dir: Path) -> List[PlotArtifact]:
        _, header, rows = read_table(csv_path)
        t = _column(csv_path, header, rows, "t")
        artifacts = []
        for name in header:
            if name in ("step", "t"):
                continue
            fig = Figure(figsize=(8, 4))
            ax = fig.add_subplot()
            ax.plot(t, rows[:, header.index(name)], linewidth=0.8)
            ax.set_xlabel("t")
            ax.set_ylabel(f"{name} (squared norm)" if name in SQUARED_NORM_COLUMNS else name)
            artifacts.append(_save(fig, output_dir / f"series_{name}.svg"))
        return artifacts

    def plot_psd(self, csv_path: Path, output_dir: Path) -> List[PlotArtifact]:
        metadata, header, rows = read_table(csv_path)
        fig = Figure(figsize=(8, 4))
        ax = fig.add_subplot()
        ax.plot(_column(csv_path, header, rows, "frequency"), _column(csv_path, header, rows, "power"))
        ax.set_xlabel("frequency (cycles per time unit)")
        ax.set_ylabel("power")
        ax.set_title(f"{metadata.get('column', '')} window={metadata.get('window', '')}")
        return [_save(fig, output_dir / "psd.svg")]

    def plot_bursts(self, csv_path: Path, output_dir: Path) -> List[PlotArtifact]:
        _, header, rows = read_table(csv_path, allow_empty=True)
        intervals = _column(csv_path, header, rows, "interval_to_next")
        intervals = intervals[np.isfinite(intervals)]
        fig = Figure(figsize=(8, 4))
        ax = fig.add_subplot()
        ax.bar(np.arange(1, intervals.size + 1), intervals)
        ax.set_xlabel("burst")
        ax.set_ylabel("time to next burst")
        return [_save(fig, output_dir / "burst_intervals.svg")]

    def plot_histogram(self, csv_path: Path, output_dir: Path) -> List[PlotArtifact]:
        metadata, header, rows = read_table(csv_path)
        lo = _column(csv_path, header, rows, "bin_lo")
        hi = _column(csv_path, header, rows, "bin_hi")
        fig = Figure(figsize=(8, 4))
        ax = fig.add_subplot()
        ax.bar(lo, _column(csv_path, header, rows, "density"), width=hi - lo, align="edge")
        ax.set_xlabel(metadata.get("column", "value"))
        ax.set_ylabel("density")
        return [_save(fig, output_dir / "histogram.svg")]

    def plot_convergence(self, csv_path: Path, output_dir: Path) -> List[PlotArtifact]:
        _, header, rows = read_table(csv_path)
        k = _column(csv_path, header, rows, "k")
        fig = Figure(figsize=(6, 5))
        ax = fig.add_subplot()
        for name in ("error_omega", "error_psi"):
            errors = _column(csv_path, header, rows, name)
            ok = np.isfinite(errors) & (errors > 0)
            ax.loglog(k[ok], errors[ok], marker="o", label=name)
        ax.set_xlabel("k")
        ax.set_ylabel("relative l-infinity error")
        ax.legend()
        return [_save(fig, output_dir / "convergence.svg")]
