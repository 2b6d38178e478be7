"""
Long-run simulation driver: time series, periodic checkpoints, restart and divergence reporting.
"""
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, Field

from mrsav_gfd.config import dump_config
from mrsav_gfd.errors import ConfigurationError, DivergenceError
from mrsav_gfd.models.model_spec import ForcingKind
from mrsav_gfd.models.run_config import RunConfig
from mrsav_gfd.models.spectral_field import Wavevector
from mrsav_gfd.models.stepper import StepperParams, TwoLevelState
from mrsav_gfd.services.checkpoint_service import CheckpointService
from mrsav_gfd.services.diagnostics_service import DiagnosticsService
from mrsav_gfd.services.forcing_service import ManufacturedSolution, create_forcing
from mrsav_gfd.services.gfd_model_service import SpectralGfdModel, create_model
from mrsav_gfd.services.initial_condition_service import initial_condition
from mrsav_gfd.services.interfaces import (
    CheckpointServiceInterface, DiagnosticsServiceInterface, TrajectoryObserver
)
from mrsav_gfd.services.series_io import SERIES_COLUMNS, CsvTableWriter, truncate_rows
from mrsav_gfd.services.stability_service import EnergyBudgetObserver
from mrsav_gfd.services.stepper_service import MrSavStepper

logger = structlog.get_logger(__name__)

SERIES_FILE = "series.csv"
CONFIG_FILE = "config.json"
FINAL_CHECKPOINT = "final.ckpt"
DIVERGENCE_MARKER = "DIVERGED"


def checkpoint_name(step_index: int) -> str:
    return f"checkpoint_{step_index:08d}.ckpt"


class SeriesObserver(TrajectoryObserver):
    """Appends one row of scalar diagnostics per sampled state to the series CSV."""

    def __init__(
        self,
        model: SpectralGfdModel,
        writer: CsvTableWriter,
        stride: int,
        diagnostics: Optional[DiagnosticsServiceInterface] = None,
    ):
        self.model = model
        self.writer = writer
        self.stride = stride
        self.diagnostics = diagnostics or DiagnosticsService()
        self._trace_mode = Wavevector(components=(0, 1) + (0,) * (model.grid.dim - 2))

    def row(self, step_index: int, time: float, state: TwoLevelState) -> list:
        omega = state.u_curr
        norms = self.diagnostics.field_norms(self.model.spectral, omega, self.model.froude)
        peak = float(np.abs(self.model.spectral.inverse(omega)).max())
        trace = self.diagnostics.mode_trace(omega, self._trace_mode)
        return [
            step_index,
            time,
            norms.enstrophy,
            norms.palinstrophy,
            norms.l2_norm,
            norms.gradient_norm,
            state.q_curr,
            abs(state.q_curr - 1.0),
            peak,
            trace.real,
        ]

    def observe(self, step_index: int, time: float, state: TwoLevelState) -> None:
        self.writer.write_row(self.row(step_index, time, state))

    def close(self) -> None:
        self.writer.close()


class CheckpointObserver(TrajectoryObserver):
    """Writes a checkpoint every ``stride`` steps."""

    def __init__(
        self, directory: Path, grid, params: StepperParams, stride: int,
        checkpoints: Optional[CheckpointServiceInterface] = None,
    ):
        self.directory = Path(directory)
        self.grid = grid
        self.params = params
        self.stride = stride
        self.checkpoints = checkpoints or CheckpointService()
        self.written: List[Path] = []

    def observe(self, step_index: int, time: float, state: TwoLevelState) -> None:
        if step_index == 0:
            return
        path = self.directory / checkpoint_name(step_index)
        self.written.append(self.checkpoints.write(path, self.grid, self.params.k, self.params.gamma, state))


class SimulationResult(BaseModel):
    """
    Outcome of one simulate run.

    Attributes:
        run_dir: Output directory
        final_state: State after the last completed step
        diverged: Whether the run stopped on divergence
        divergence_step: Step index of the failed step
        energy_violations: Steps where the energy inequality failed, when monitored
    """
    model_config = {"arbitrary_types_allowed": True, "frozen": True}

    run_dir: Path
    final_state: Optional[TwoLevelState] = None
    diverged: bool = False
    divergence_step: Optional[int] = None
    divergence_reason: Optional[str] = None
    checkpoints: List[Path] = Field(default_factory=list)
    energy_violations: List[Tuple[int, float]] = Field(default_factory=list)

    @property
    def series_path(self) -> Path:
        return self.run_dir / SERIES_FILE


def step_count(duration: float, k: float) -> int:
    """Steps needed to reach ``duration`` with step ``k``; t^n = n k."""
    return max(1, int(round(duration / k)))


def series_metadata(config: RunConfig, params: StepperParams) -> dict:
    metadata = {
        "model": config.model.kind.value,
        "mode": config.run.mode.value,
        "k": format(params.k, ".17g"),
        "gamma": format(params.gamma, ".17g"),
        "dealias": str(params.dealias).lower(),
        "sample_interval": format(config.run.sample_stride * params.k, ".17g"),
        "norms": "enstrophy and palinstrophy are squared norms; vorticity_l2 and vorticity_grad_l2 are norms",
    }
    if config.run.spin_up is not None:
        metadata["spin_up"] = (
            f"mr-SAV stepper with k={params.k:g} and gamma={config.run.spin_up.gamma:g} "
            f"up to t={config.run.spin_up.duration:g} (deviation from a first-order spin-up at tiny k)"
        )
    return metadata


def initial_state(config: RunConfig, model: SpectralGfdModel) -> TwoLevelState:
    manufactured = None
    if config.forcing.kind == ForcingKind.MANUFACTURED:
        manufactured = ManufacturedSolution(config.forcing.manufactured, model)
    omega0 = initial_condition(config.run.initial_condition, model, manufactured)
    return TwoLevelState.from_initial(omega0, config.run.q0)


def _write_marker(run_dir: Path, error: DivergenceError) -> Path:
    marker = run_dir / DIVERGENCE_MARKER
    marker.write_text(f"step={error.step_index}\ntime={error.time!r}\nreason={error.reason}\n")
    return marker


def run_simulation(
    config: RunConfig,
    restart: Optional[Path] = None,
    checkpoints: Optional[CheckpointServiceInterface] = None,
) -> SimulationResult:
    """
    Run one simulation described by a RunConfig.

    A fresh run starts from the configured initial condition, optionally
    after a spin-up phase; a restart continues a checkpoint to the same end
    time and appends to the existing series. A divergence leaves the partial
    series, a DIVERGED marker with the failed step and a result with
    ``diverged`` set.

    Args:
        config: Validated configuration
        restart: Checkpoint to continue from
        checkpoints: Checkpoint service; defaults to the binary implementation

    Returns:
        What happened and where the output went
    """
    checkpoints = checkpoints or CheckpointService()
    run_dir = Path(config.output.directory)
    run_dir.mkdir(parents=True, exist_ok=True)
    dump_config(config, run_dir / CONFIG_FILE)
    (run_dir / DIVERGENCE_MARKER).unlink(missing_ok=True)

    params = config.effective_stepper()
    model = create_model(config.model, config.grid, params.dealias)
    forcing = create_forcing(config.forcing, model)
    spin_up = config.run.spin_up
    spin_duration = spin_up.duration if spin_up is not None else 0.0
    total_steps = step_count(spin_duration + config.run.duration, params.k)
    log = logger.bind(run_dir=str(run_dir), mode=config.run.mode.value, k=params.k, gamma=params.gamma)

    if restart is not None:
        stored = checkpoints.read(restart, expected_grid=config.grid)
        if stored.k != params.k:
            raise ConfigurationError(
                f"checkpoint {restart} was written with k={stored.k:g}, config has k={params.k:g}",
                key_path="stepper.k",
            )
        if stored.gamma != params.gamma:
            raise ConfigurationError(
                f"checkpoint {restart} was written with gamma={stored.gamma:g}, config has gamma={params.gamma:g}",
                key_path="stepper.gamma",
            )
        state = stored.state
        log.info("restarting", checkpoint=str(restart), step=state.step_index)
        series_path = run_dir / SERIES_FILE
        if series_path.exists():
            dropped = truncate_rows(series_path, "step", state.step_index)
            if dropped:
                log.info("dropped series rows past the checkpoint", rows=dropped)
    else:
        state = initial_state(config, model)
        if spin_up is not None:
            spin_params = params.model_copy(update={"gamma": spin_up.gamma, "freeze_auxiliary": False})
            spin_steps = step_count(spin_up.duration, params.k)
            log.info("spin-up", steps=spin_steps, gamma=spin_up.gamma)
            try:
                state = MrSavStepper(model, forcing, spin_params).run_trajectory(state, spin_steps, observe_initial=False)
            except DivergenceError as error:
                _write_marker(run_dir, error)
                return SimulationResult(
                    run_dir=run_dir, diverged=True, divergence_step=error.step_index, divergence_reason=error.reason
                )

    remaining = total_steps - state.step_index
    writer = CsvTableWriter(
        run_dir / SERIES_FILE, SERIES_COLUMNS, series_metadata(config, params), append=restart is not None
    )
    observers: List[TrajectoryObserver] = [SeriesObserver(model, writer, config.run.sample_stride)]
    checkpoint_observer = None
    if config.run.checkpoint_stride is not None:
        checkpoint_observer = CheckpointObserver(run_dir, config.grid, params, config.run.checkpoint_stride, checkpoints)
        observers.append(checkpoint_observer)
    energy_observer = None
    if config.run.monitor_energy:
        energy_observer = EnergyBudgetObserver(model, forcing, params)
        observers.append(energy_observer)

    if remaining < 1:
        writer.close()
        log.info("nothing to do", step=state.step_index, total_steps=total_steps)
        return SimulationResult(run_dir=run_dir, final_state=state)

    log.info("simulating", steps=remaining, start_step=state.step_index)
    stepper = MrSavStepper(model, forcing, params)
    written = checkpoint_observer.written if checkpoint_observer is not None else []
    violations = energy_observer.violations if energy_observer is not None else []
    try:
        final = stepper.run_trajectory(state, remaining, observers, observe_initial=restart is None)
    except DivergenceError as error:
        _write_marker(run_dir, error)
        log.warning("run diverged", step=error.step_index, t=error.time)
        return SimulationResult(
            run_dir=run_dir,
            diverged=True,
            divergence_step=error.step_index,
            divergence_reason=error.reason,
            checkpoints=written,
            energy_violations=violations,
        )

    final_path = checkpoints.write(run_dir / FINAL_CHECKPOINT, config.grid, params.k, params.gamma, final)
    log.info("run finished", step=final.step_index, t=final.time, q=final.q_curr)
    return SimulationResult(
        run_dir=run_dir,
        final_state=final,
        checkpoints=written + [final_path],
        energy_violations=violations,
    )
