"""
Step-by-step check of the discrete energy inequality of the mr-SAV-BDF2 scheme.
"""
from typing import List, Optional, Tuple

import structlog

from mrsav_gfd.models.stepper import StepperParams, TwoLevelState
from mrsav_gfd.services.gfd_model_service import SpectralGfdModel
from mrsav_gfd.services.interfaces import ForcingInterface, TrajectoryObserver
from mrsav_gfd.services.stepper_service import g_norm_sq

logger = structlog.get_logger(__name__)


class EnergyBudgetObserver(TrajectoryObserver):
    """
    Checks, for every consecutive pair of BDF2 states,

        E(n+1) + (c0/2) k ||u^{n+1}||^2 + (gamma/2) k (q^{n+1})^2
            <= E(n) + k / (2 c0) ||F^{n+1}||^2 + k gamma / 2

    where E(n) = |[u^n, u^{n-1}]|_G^2 + |[q^n, q^{n-1}]|_G^2 and c0 is the
    coercivity constant of A. The bound assumes mean-zero vorticity.
    """

    stride = 1

    def __init__(
        self, model: SpectralGfdModel, forcing: ForcingInterface, params: StepperParams, rtol: float = 1e-9
    ):
        self.model = model
        self.forcing = forcing
        self.params = params
        self.rtol = rtol
        self.c0 = model.coercivity_constant()
        self.violations: List[Tuple[int, float]] = []
        self.checked = 0
        self._previous: Optional[Tuple[int, float]] = None

    def energy(self, state: TwoLevelState) -> float:
        spectral = self.model.spectral
        return g_norm_sq(state.u_curr, state.u_prev, spectral) + g_norm_sq(state.q_curr, state.q_prev)

    def observe(self, step_index: int, time: float, state: TwoLevelState) -> None:
        if step_index < 1:
            return
        energy = self.energy(state)
        previous, self._previous = self._previous, (step_index, energy)
        if previous is None or previous[0] != step_index - 1:
            return
        k, gamma, c0 = self.params.k, self.params.gamma, self.c0
        spectral = self.model.spectral
        forcing = self.forcing.at(time)
        lhs = (
            energy
            + 0.5 * c0 * k * spectral.sobolev_norm_sq(state.u_curr, 0)
            + 0.5 * gamma * k * state.q_curr ** 2
        )
        rhs = previous[1] + k / (2.0 * c0) * spectral.sobolev_norm_sq(forcing, 0) + 0.5 * k * gamma
        self.checked += 1
        excess = lhs - rhs
        if excess > self.rtol * max(1.0, abs(rhs)):
            self.violations.append((step_index, excess))
            logger.warning("energy inequality violated", step=step_index, t=time, excess=excess)

    def close(self) -> None:
        logger.info("energy budget checked", steps=self.checked, violations=len(self.violations))
