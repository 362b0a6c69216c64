# =============================================================================
# EulerPoisson - Time Stepper Module
# =============================================================================
#
# CFL control and the forward Euler, RK2 and SSP-RK3 schemes. Every stage
# is written as an increment of the step's starting state,
#
#     u_new = u^n + tau * sum_i w_i L(u_i),
#
# which is what the energy-conserving source needs: the flux, momentum and
# potential combinations of the stage all use the same weights w_i, the
# density window is (rho_new - rho^n) / tau and the potential is the
# average of Phi^n and Phi_new.
#
# Within a stage the order is density and momentum, gravity of the new
# density, energy, then the limiter and its energy correction.
#
# =============================================================================

"""
Time-step control and the stage-wise energy-conserving RK schemes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from eulerpoisson.diagnostics import BoundaryRecord
from eulerpoisson.dg_field import DGField, StateField
from eulerpoisson.eos.base import BaseEos
from eulerpoisson.errors import SolverAbortError
from eulerpoisson.limiter import LimiterConfig, detect_and_limit, energy_correction
from eulerpoisson.poisson import GravityField
from eulerpoisson.spatial import (
    SpatialOperator,
    StageEvaluation,
    apply_inverse_mass,
    check_state,
    source_energy_tec,
)

logger = logging.getLogger("eulerpoisson.stepper")

DEFAULT_CFL = 0.16


# -----------------------------------------------------------------------------
# Stage Recipes
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class StageRecipe:
    """
    How one stage combines the evaluations made so far.

    Attributes:
        weights: Weight of each earlier stage evaluation (sum to 1)
        dt_fraction: tau / dt; also the time of the produced state
                     relative to the step start, in units of dt
    """

    weights: tuple[float, ...]
    dt_fraction: float

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValueError("a stage needs at least one weight")
        if abs(sum(self.weights) - 1.0) > 1.0e-14:
            raise ValueError(f"stage weights {self.weights} do not sum to 1")
        if not self.dt_fraction > 0.0:
            raise ValueError("dt_fraction must be positive")


FORWARD_EULER: tuple[StageRecipe, ...] = (StageRecipe((1.0,), 1.0),)
RK2: tuple[StageRecipe, ...] = (
    StageRecipe((1.0,), 1.0),
    StageRecipe((0.5, 0.5), 1.0),
)
RK3: tuple[StageRecipe, ...] = (
    StageRecipe((1.0,), 1.0),
    StageRecipe((0.5, 0.5), 0.5),
    StageRecipe((1.0 / 6.0, 1.0 / 6.0, 4.0 / 6.0), 1.0),
)

SCHEMES: dict[int, tuple[StageRecipe, ...]] = {1: FORWARD_EULER, 2: RK2, 3: RK3}


def recipes_for_order(order: int) -> tuple[StageRecipe, ...]:
    """
    Raises:
        ValueError: If order is not 1, 2 or 3
    """
    try:
        return SCHEMES[order]
    except KeyError:
        raise ValueError(f"RK order must be 1, 2 or 3, got {order}") from None


# -----------------------------------------------------------------------------
# Time Step
# -----------------------------------------------------------------------------


def cfl_dt(state: StateField, eos: BaseEos, cfl: float = DEFAULT_CFL) -> float:
    """
    dt = cfl * min dr / max(|u| + c) over the volume nodes.

    Raises:
        ValueError: If cfl <= 0
        SolverAbortError: If the largest wave speed is not finite and positive
    """
    if not cfl > 0.0:
        raise ValueError("cfl must be positive")
    space = state.space
    rho, mom, ene = space.nodes(state.coeffs)
    e = eos.specific_energy(rho, mom, ene)
    speed = np.abs(mom / rho) + eos.sound_speed(rho, e)
    fastest = float(np.max(speed))
    if not np.isfinite(fastest) or fastest <= 0.0:
        raise SolverAbortError(f"invalid maximum wave speed {fastest!r}")
    return cfl * float(np.min(space.mesh.widths)) / fastest


# -----------------------------------------------------------------------------
# Stepper
# -----------------------------------------------------------------------------


@dataclass(eq=False)
class StepResult:
    """
    Output of one step.

    Attributes:
        state: State at t + dt
        gravity: Gravity of its density
        record: Boundary data for the energy ledger
        troubled: Troubled-cell count summed over the stages
    """

    state: StateField
    gravity: GravityField
    record: BoundaryRecord
    troubled: int = 0


class Stepper:
    """
    Advances a state by one step of a chosen RK scheme.

    Example:
        >>> stepper = Stepper(operator, order=3, limiter=LimiterConfig())
        >>> result = stepper.step(state, gravity, t=0.0, dt=1e-3)
    """

    def __init__(
        self,
        operator: SpatialOperator,
        order: int = 3,
        limiter: LimiterConfig | None = None,
    ) -> None:
        self.operator = operator
        self.order = order
        self.recipes = recipes_for_order(order)
        self.limiter = limiter or LimiterConfig()

    def __repr__(self) -> str:
        return f"Stepper(order={self.order}, {self.operator!r})"

    def step(self, state: StateField, gravity: GravityField, t: float, dt: float) -> StepResult:
        """
        One full step from (state, gravity) at time t.

        Raises:
            SolverAbortError: If a stage produces an unusable state
        """
        if not dt > 0.0:
            raise ValueError("dt must be positive")
        evaluations: list[StageEvaluation] = []
        current, current_gravity, time = state, gravity, t
        troubled = 0
        for recipe in self.recipes:
            evaluations.append(self.operator.evaluate(current, time, current_gravity))
            current, current_gravity, count, combined = self._advance(
                state, gravity, evaluations, recipe, t, dt
            )
            troubled += count
            time = t + recipe.dt_fraction * dt
        faces, phi_bar = combined
        record = BoundaryRecord(
            dt=dt,
            energy_flux=(float(faces[2, 0]), float(faces[2, -1])),
            mass_flux=(float(faces[0, 0]), float(faces[0, -1])),
            phi_bar=(float(phi_bar[0]), float(phi_bar[-1])),
            dphi_old=(float(gravity.dphi_faces[0]), float(gravity.dphi_faces[-1])),
            phi_old=(float(gravity.phi_faces[0]), float(gravity.phi_faces[-1])),
            dphi_new=(float(current_gravity.dphi_faces[0]), float(current_gravity.dphi_faces[-1])),
            phi_new=(float(current_gravity.phi_faces[0]), float(current_gravity.phi_faces[-1])),
        )
        return StepResult(state=current, gravity=current_gravity, record=record, troubled=troubled)

    def _advance(
        self,
        base: StateField,
        base_gravity: GravityField,
        evaluations: list[StageEvaluation],
        recipe: StageRecipe,
        t: float,
        dt: float,
    ) -> tuple[StateField, GravityField, int, tuple[np.ndarray, np.ndarray]]:
        op = self.operator
        space = base.space
        tau = recipe.dt_fraction * dt
        t_new = t + tau
        weights = recipe.weights

        residual = _combine(weights, [ev.residual for ev in evaluations])
        flux = _combine(weights, [ev.faces.flux for ev in evaluations])

        coeffs = np.empty_like(base.coeffs)
        coeffs[:2] = base.coeffs[:2] + tau * apply_inverse_mass(space, residual[:2])
        gravity_new = op.gravity(coeffs[0], t_new)
        phi_bar = base_gravity.blend(gravity_new, 0.5)

        energy_residual = residual[2]
        if op.variant.energy_conserving:
            mom_bar = _combine(weights, [ev.state.coeffs for ev in evaluations])
            drho_dt = DGField(space, (coeffs[0] - base.coeffs[0]) / tau)
            energy_residual = energy_residual + source_energy_tec(
                StateField(space, mom_bar), flux[0], drho_dt, phi_bar
            )
        coeffs[2] = base.coeffs[2] + tau * apply_inverse_mass(space, energy_residual)

        unlimited = StateField(space, coeffs)
        limited, gravity_out, count = self._limit(unlimited, gravity_new, t_new)
        check_state(limited, op.eos)
        return limited, gravity_out, count, (flux, phi_bar.phi_faces)

    def _limit(
        self, state: StateField, gravity: GravityField, t: float
    ) -> tuple[StateField, GravityField, int]:
        if not self.limiter.enabled or state.space.k == 0:
            return state, gravity, 0
        decomp = self.operator.decompose(state)
        limited, troubled = detect_and_limit(state, decomp, self.limiter)
        count = int(troubled.sum())
        if count == 0:
            return state, gravity, 0
        gravity_limited = self.operator.gravity(limited.coeffs[0], t)
        if self.operator.variant.limiter_correction:
            limited.coeffs[2] = energy_correction(
                limited.coeffs[2],
                state.coeffs[0],
                gravity,
                limited.coeffs[0],
                gravity_limited,
            )
        return limited, gravity_limited, count


def _combine(weights: tuple[float, ...], arrays: list[np.ndarray]) -> np.ndarray:
    return np.tensordot(np.asarray(weights), np.stack(arrays), axes=1)


# -----------------------------------------------------------------------------
# Single-step helpers
# -----------------------------------------------------------------------------


def _one_step(
    operator: SpatialOperator,
    order: int,
    state: StateField,
    dt: float,
    t: float,
    limiter: LimiterConfig | None,
) -> StepResult:
    gravity = operator.gravity(state.coeffs[0], t)
    return Stepper(operator, order, limiter).step(state, gravity, t, dt)


def step_forward_euler(
    operator: SpatialOperator,
    state: StateField,
    dt: float,
    t: float = 0.0,
    limiter: LimiterConfig | None = None,
) -> StepResult:
    """One forward Euler step."""
    return _one_step(operator, 1, state, dt, t, limiter)


def step_rk2(
    operator: SpatialOperator,
    state: StateField,
    dt: float,
    t: float = 0.0,
    limiter: LimiterConfig | None = None,
) -> StepResult:
    """One step of the two-stage scheme."""
    return _one_step(operator, 2, state, dt, t, limiter)


def step_rk3(
    operator: SpatialOperator,
    state: StateField,
    dt: float,
    t: float = 0.0,
    limiter: LimiterConfig | None = None,
) -> StepResult:
    """One step of the three-stage SSP scheme."""
    return _one_step(operator, 3, state, dt, t, limiter)


__all__ = [
    "DEFAULT_CFL",
    "StageRecipe",
    "FORWARD_EULER",
    "RK2",
    "RK3",
    "recipes_for_order",
    "cfl_dt",
    "StepResult",
    "Stepper",
    "step_forward_euler",
    "step_rk2",
    "step_rk3",
]
