"""
Temporal convergence studies against manufactured solutions.
"""
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional

import numpy as np
import structlog
from pydantic import BaseModel

from mrsav_gfd.config import dump_config
from mrsav_gfd.errors import ConfigurationError, DivergenceError, SingularScalarSolveError
from mrsav_gfd.models.model_spec import ForcingKind
from mrsav_gfd.models.run_config import RunConfig
from mrsav_gfd.models.spectral_field import SpectralField
from mrsav_gfd.models.stepper import TwoLevelState
from mrsav_gfd.services.diagnostics_service import DiagnosticsService
from mrsav_gfd.services.forcing_service import ManufacturedForcing, ManufacturedSolution
from mrsav_gfd.services.gfd_model_service import SpectralGfdModel, create_model
from mrsav_gfd.services.interfaces import DiagnosticsServiceInterface
from mrsav_gfd.services.series_io import write_table
from mrsav_gfd.services.simulation_service import step_count
from mrsav_gfd.services.stepper_service import MrSavStepper

logger = structlog.get_logger(__name__)

CONVERGENCE_FILE = "convergence.csv"
CONVERGENCE_COLUMNS = ["k", "steps", "error_omega", "order_omega", "error_psi", "order_psi", "diverged"]


class ConvergenceRow(BaseModel):
    """One time step of a convergence study; errors are relative l-infinity at the final time."""
    model_config = {"frozen": True}

    k: float
    steps: int
    error_omega: float = float("nan")
    error_psi: float = float("nan")
    order_omega: Optional[float] = None
    order_psi: Optional[float] = None
    diverged: bool = False

    def values(self) -> list:
        def opt(value: Optional[float]) -> float:
            return float("nan") if value is None else value
        return [
            self.k, self.steps, self.error_omega, opt(self.order_omega),
            self.error_psi, opt(self.order_psi), int(self.diverged),
        ]


def relative_max_error(model: SpectralGfdModel, numerical: SpectralField, exact: SpectralField) -> float:
    """max |numerical - exact| over collocation points divided by max |exact|."""
    exact_values = model.spectral.inverse(exact)
    difference = np.abs(model.spectral.inverse(numerical) - exact_values).max()
    scale = np.abs(exact_values).max()
    return float(difference / scale) if scale > 0 else float(difference)


def _solution_for(config: RunConfig, model: SpectralGfdModel) -> ManufacturedSolution:
    if config.forcing.kind != ForcingKind.MANUFACTURED:
        raise ConfigurationError("a convergence study needs manufactured forcing", key_path="forcing.kind")
    return ManufacturedSolution(config.forcing.manufactured, model)


def run_convergence_row(config: RunConfig, k: float) -> ConvergenceRow:
    """
    Integrate the manufactured problem to T with one time step and measure the error.

    Args:
        config: Study configuration
        k: Time step of this row

    Returns:
        The row without orders; a divergence is recorded instead of raised
    """
    params = config.effective_stepper().model_copy(update={"k": k})
    model = create_model(config.model, config.grid, params.dealias)
    solution = _solution_for(config, model)
    stepper = MrSavStepper(model, ManufacturedForcing(solution), params)
    steps = step_count(config.run.duration, k)
    seed_exact = config.convergence is not None and config.convergence.seed_exact

    if seed_exact:
        state = TwoLevelState(
            u_curr=solution.omega(k), u_prev=solution.omega(0.0), q_curr=1.0, q_prev=1.0, step_index=1, time=k
        )
    else:
        state = TwoLevelState.from_initial(solution.omega(0.0), config.run.q0)

    try:
        remaining = steps - state.step_index
        final = stepper.run_trajectory(state, remaining, observe_initial=False) if remaining > 0 else state
    except (DivergenceError, SingularScalarSolveError) as error:
        logger.warning("convergence row failed", k=k, error=str(error))
        return ConvergenceRow(k=k, steps=steps, diverged=True)

    t_final = steps * k
    exact_omega = solution.omega(t_final)
    row = ConvergenceRow(
        k=k,
        steps=steps,
        error_omega=relative_max_error(model, final.u_curr, exact_omega),
        error_psi=relative_max_error(model, model.streamfunction(final.u_curr), model.streamfunction(exact_omega)),
    )
    logger.info("convergence row", k=k, steps=steps, error_omega=row.error_omega, error_psi=row.error_psi)
    return row


def attach_orders(rows: List[ConvergenceRow], diagnostics: DiagnosticsServiceInterface) -> List[ConvergenceRow]:
    """Orders between each successful row and the previous successful one."""
    result = []
    previous: Optional[ConvergenceRow] = None
    for row in rows:
        if row.diverged:
            result.append(row)
            continue
        if previous is not None:
            (order_omega,) = diagnostics.convergence_order([(previous.k, previous.error_omega), (row.k, row.error_omega)])
            (order_psi,) = diagnostics.convergence_order([(previous.k, previous.error_psi), (row.k, row.error_psi)])
            row = row.model_copy(update={"order_omega": order_omega, "order_psi": order_psi})
        result.append(row)
        previous = row
    return result


def run_convergence_study(
    config: RunConfig, diagnostics: Optional[DiagnosticsServiceInterface] = None, write: bool = True
) -> List[ConvergenceRow]:
    """
    Run every k of the study, attach observed orders and write convergence.csv.

    Rows run concurrently when ``convergence.workers`` > 1; each row owns its
    model, forcing and state.

    Args:
        config: Configuration with a convergence section and manufactured forcing
        diagnostics: Diagnostics service for the orders
        write: Write config.json and convergence.csv to the output directory

    Returns:
        One row per k, in the configured order
    """
    if config.convergence is None:
        raise ConfigurationError("missing [convergence] section", key_path="convergence")
    if config.forcing.kind != ForcingKind.MANUFACTURED:
        raise ConfigurationError("a convergence study needs manufactured forcing", key_path="forcing.kind")
    diagnostics = diagnostics or DiagnosticsService()
    k_values = config.convergence.k_values
    workers = min(config.convergence.workers, len(k_values))
    logger.info("convergence study", k_values=k_values, duration=config.run.duration, workers=workers)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda k: run_convergence_row(config, k), k_values))
    else:
        rows = [run_convergence_row(config, k) for k in k_values]
    rows = attach_orders(rows, diagnostics)

    if write:
        run_dir = Path(config.output.directory)
        dump_config(config, run_dir / "config.json")
        write_table(
            run_dir / CONVERGENCE_FILE,
            CONVERGENCE_COLUMNS,
            [row.values() for row in rows],
            metadata={
                "duration": format(config.run.duration, ".17g"),
                "errors": "relative l-infinity over collocation points at the final time",
                "seed_exact": str(config.convergence.seed_exact).lower(),
            },
        )
    return rows
