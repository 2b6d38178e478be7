"""
The mr-SAV-BDF2 time step and its first-order bootstrap.

Each step extrapolates the vorticity, evaluates the nonlinear term once,
performs two constant-coefficient Helmholtz solves, solves the scalar
auxiliary equation in closed form and superposes u = u1 + q u2.
"""
from typing import Optional, Sequence, Union

import numpy as np
import structlog

from mrsav_gfd.errors import ConfigurationError, DivergenceError, PreconditionError, SingularScalarSolveError
from mrsav_gfd.models.spectral_field import FieldRole, SpectralField
from mrsav_gfd.models.stepper import StepperParams, TwoLevelState
from mrsav_gfd.services.gfd_model_service import SpectralGfdModel
from mrsav_gfd.services.interfaces import ForcingInterface, TrajectoryObserver
from mrsav_gfd.services.spectral_service import SpectralService

logger = structlog.get_logger(__name__)

SINGULAR_TOLERANCE = 1e-12


def gear_extrapolate(u_curr: SpectralField, u_prev: SpectralField) -> SpectralField:
    """Second-order extrapolation 2 u^n - u^{n-1} to t^{n+1}."""
    if u_curr.grid != u_prev.grid:
        raise ConfigurationError("history levels live on different grids")
    return u_curr.with_coeffs(2.0 * u_curr.coeffs - u_prev.coeffs)


def g_norm_sq(
    newest: Union[float, SpectralField],
    older: Union[float, SpectralField],
    spectral: Optional[SpectralService] = None,
) -> float:
    """
    Squared G-norm of the pair [newest, older], G = 1/4 [[5, -2], [-2, 1]].

    Args:
        newest: Scalar or field at the newer level
        older: Scalar or field at the older level
        spectral: Spectral service supplying the L2 inner product for fields

    Returns:
        (5 |a|^2 - 4 (a, b) + |b|^2) / 4
    """
    if isinstance(newest, SpectralField):
        if spectral is None:
            raise PreconditionError("field G-norm needs a spectral service")
        aa = spectral.inner_product_l2(newest, newest)
        ab = spectral.inner_product_l2(newest, older)
        bb = spectral.inner_product_l2(older, older)
    else:
        aa, ab, bb = newest * newest, newest * older, older * older
    return 0.25 * (5.0 * aa - 4.0 * ab + bb)


def _scalar_solve(history: float, sigma: float, b1: float, b2: float, gamma: float) -> float:
    reference = sigma + gamma
    denominator = reference - b2
    if abs(denominator) < SINGULAR_TOLERANCE * reference:
        raise SingularScalarSolveError(denominator, reference, b2)
    return (gamma + history + b1) / denominator


def solve_auxiliary_scalar(q_curr: float, q_prev: float, b1: float, b2: float, params: StepperParams) -> float:
    """
    Closed-form q^{n+1} of the BDF2 auxiliary equation.

    Args:
        q_curr: q^n
        q_prev: q^{n-1}
        b1: <N(u_bar), u1>
        b2: <N(u_bar), u2>
        params: Stepper parameters (k, gamma)

    Returns:
        [gamma + (4 q^n - q^{n-1}) / 2k + b1] / [3 / 2k + gamma - b2]

    Raises:
        SingularScalarSolveError: The denominator vanishes relative to 3/(2k) + gamma
    """
    k = params.k
    return _scalar_solve((4.0 * q_curr - q_prev) / (2.0 * k), 1.5 / k, b1, b2, params.gamma)


class MrSavStepper:
    """
    Advances a TwoLevelState of one model under one forcing.

    The stepper holds no trajectory state; everything needed to continue a
    run lives in the TwoLevelState it returns.
    """

    def __init__(self, model: SpectralGfdModel, forcing: ForcingInterface, params: StepperParams):
        self.model = model
        self.forcing = forcing
        self.params = params

    def step_first_order(self, state: TwoLevelState) -> TwoLevelState:
        """
        Backward-Euler analogue used to produce u^1 from single-level data.

        Args:
            state: State whose current level holds (u^0, q^0)

        Returns:
            The two-level state (u^1, u^0, q^1, q^0)
        """
        k = self.params.k
        u0, q0 = state.u_curr, state.q_curr
        return self._superpose(state, u0, u0 / k, q0 / k, 1.0 / k)

    def step_bdf2(self, state: TwoLevelState) -> TwoLevelState:
        """
        One mr-SAV-BDF2 step.

        Args:
            state: Two-level state at step n

        Returns:
            The state at step n + 1
        """
        k = self.params.k
        u_bar = gear_extrapolate(state.u_curr, state.u_prev)
        history = (4.0 * state.u_curr - state.u_prev) / (2.0 * k)
        q_history = (4.0 * state.q_curr - state.q_prev) / (2.0 * k)
        return self._superpose(state, u_bar, history, q_history, 1.5 / k)

    def advance(self, state: TwoLevelState) -> TwoLevelState:
        """Bootstrap from step 0, BDF2 afterwards."""
        if state.step_index == 0:
            return self.step_first_order(state)
        return self.step_bdf2(state)

    def run_trajectory(
        self,
        initial: TwoLevelState,
        n_steps: int,
        observers: Sequence[TrajectoryObserver] = (),
        observe_initial: bool = True,
    ) -> TwoLevelState:
        """
        Integrate n_steps steps from an initial state.

        Observers see every state whose index is a multiple of their stride.
        They are closed when the loop stops, including on divergence, so
        partial output is flushed.

        Args:
            initial: Starting state; step index 0 triggers the first-order bootstrap
            n_steps: Number of steps to take
            observers: Trajectory observers
            observe_initial: Offer the initial state to the observers

        Returns:
            The final state
        """
        if n_steps < 1:
            raise PreconditionError(f"n_steps must be >= 1, got {n_steps}")
        state = initial
        log_every = max(1, n_steps // 10)
        try:
            if observe_initial:
                self._notify(observers, state)
            for i in range(n_steps):
                state = self.advance(state)
                self._notify(observers, state)
                if (i + 1) % log_every == 0:
                    logger.debug("step", step=state.step_index, t=state.time, q=state.q_curr)
        except DivergenceError as error:
            logger.warning("trajectory diverged", step=error.step_index, t=error.time, reason=error.reason)
            raise
        finally:
            for observer in observers:
                observer.close()
        return state

    def _notify(self, observers: Sequence[TrajectoryObserver], state: TwoLevelState) -> None:
        for observer in observers:
            if state.step_index % observer.stride == 0:
                observer.observe(state.step_index, state.time, state)

    def _superpose(
        self, state: TwoLevelState, u_bar: SpectralField, history: SpectralField, q_history: float, sigma: float
    ) -> TwoLevelState:
        model = self.model
        step_index = state.step_index + 1
        time = step_index * self.params.k
        psi_bar = model.streamfunction(u_bar)
        n_bar = model.nonlinear_term(psi_bar, u_bar)
        u1 = model.helmholtz_solve(self.forcing.at(time) + history, sigma)
        u2 = model.helmholtz_solve(-n_bar, sigma)
        if self.params.freeze_auxiliary:
            q_next = 1.0
        else:
            inner = model.spectral.inner_product_l2
            q_next = _scalar_solve(q_history, sigma, inner(n_bar, u1), inner(n_bar, u2), self.params.gamma)
        u_next = (u1 + q_next * u2).as_role(FieldRole.VORTICITY)
        self._check_divergence(u_next, q_next, step_index, time)
        return TwoLevelState.model_construct(
            u_curr=u_next,
            u_prev=state.u_curr,
            q_curr=q_next,
            q_prev=state.q_curr,
            step_index=step_index,
            time=time,
        )

    def _check_divergence(self, u_next: SpectralField, q_next: float, step_index: int, time: float) -> None:
        if not (u_next.is_finite() and np.isfinite(q_next)):
            raise DivergenceError(step_index, time)
        peak = u_next.max_abs()
        if peak > self.params.divergence_threshold:
            raise DivergenceError(step_index, time, reason=f"coefficient magnitude {peak:.3e} above threshold")
