# =============================================================================
# EulerPoisson - TVB Limiter Module
# =============================================================================
#
# Minmod slope limiter for spherical geometry:
#
#   slope      = (u^-_{j+1/2} - u^+_{j-1/2}) / dr_j
#   forward    = (ubar_{j+1} - ubar_j) / (r_{j+1} - r_j)
#   backward   = (ubar_j - ubar_{j-1}) / (r_j - r_{j-1})
#   limited    = minmod(slope, beta * forward, beta * backward)
#
# Troubled cells are detected on u - u^e so equilibria pass untouched, and
# are rebuilt as linear polynomials keeping the r^2-weighted average. The
# energy correction restores E + rho Phi / 2 cell by cell afterwards.
#
# =============================================================================

"""
Troubled-cell detection, minmod limiting and the total-energy correction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from eulerpoisson.dg_field import DGSpace, StateField
from eulerpoisson.poisson import GravityField
from eulerpoisson.well_balanced import EquilibriumDecomposition

logger = logging.getLogger("eulerpoisson.limiter")

DEFAULT_BETA = 1.75

# Relative size below which an indicator slope is treated as round-off
DEFAULT_NOISE_FLOOR = 1.0e-10


# -----------------------------------------------------------------------------
# Configuration
# -----------------------------------------------------------------------------


@dataclass
class LimiterConfig:
    """
    Limiter settings.

    Attributes:
        enabled: Run the limiter after every stage
        beta: Factor on the neighbour slopes, beta > 0
        M: TVB threshold; cells with |slope| <= M dr^2 are left alone
        noise_floor: Indicator slopes smaller than this fraction of the
                     variable's scale (per unit cell width) count as zero.
                     The default departs from the plain TVB minmod test so
                     round-off slopes on flat states are left alone; 0.0
                     restores the plain test
    """

    enabled: bool = True
    beta: float = DEFAULT_BETA
    M: float = 0.0  # noqa: N815
    noise_floor: float = DEFAULT_NOISE_FLOOR

    def __post_init__(self) -> None:
        if not self.beta > 0.0:
            raise ValueError("limiter beta must be positive")
        if self.M < 0.0:
            raise ValueError("limiter M must be non-negative")
        if self.noise_floor < 0.0:
            raise ValueError("limiter noise_floor must be non-negative")

    def copy(self, **changes: Any) -> LimiterConfig:
        return replace(self, **changes)


# -----------------------------------------------------------------------------
# Averages and Slopes
# -----------------------------------------------------------------------------


def minmod(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Elementwise minmod: the smallest magnitude if all signs agree, else 0."""
    a, b, c = np.broadcast_arrays(
        np.asarray(a, dtype=float), np.asarray(b, dtype=float), np.asarray(c, dtype=float)
    )
    s = np.sign(a)
    agree = (s == np.sign(b)) & (s == np.sign(c))
    smallest = np.minimum(np.abs(a), np.minimum(np.abs(b), np.abs(c)))
    return np.where(agree, s * smallest, 0.0)


def averages(space: DGSpace, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Standard and r^2-weighted cell averages.

    Args:
        space: Discretization
        coeffs: Coefficients (..., N, k+1)

    Returns:
        (plain, weighted), each of shape (..., N)
    """
    plain = coeffs[..., 0]
    volume = space.cell_integrals_r2(np.ones_like(space.r_nodes))
    weighted = space.cell_integrals_r2(space.nodes(coeffs)) / volume
    return plain, weighted


def _slopes(space: DGSpace, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Interior, forward and backward slopes of (..., N, k+1) coefficients."""
    mesh = space.mesh
    interior = (space.right_traces(coeffs) - space.left_traces(coeffs)) / mesh.widths
    plain = coeffs[..., 0]
    forward = interior.copy()
    backward = interior.copy()
    if mesh.N > 1:
        gaps = np.diff(mesh.midpoints)
        steps = np.diff(plain, axis=-1) / gaps
        forward[..., :-1] = steps
        backward[..., 1:] = steps
    return interior, forward, backward


def _scales(space: DGSpace, coeffs: np.ndarray) -> np.ndarray:
    """Magnitude of each conserved variable, used for the noise floor."""
    plain = np.abs(coeffs[:, :, 0])
    rho = float(np.max(plain[0])) if plain.size else 0.0
    ene = float(np.max(plain[2])) if plain.size else 0.0
    mom = max(float(np.max(plain[1])), float(np.sqrt(rho * ene)))
    return np.array([rho, mom, ene])


# -----------------------------------------------------------------------------
# Limiting
# -----------------------------------------------------------------------------


def detect_troubled(
    state: StateField, decomp: EquilibriumDecomposition, config: LimiterConfig
) -> np.ndarray:
    """
    Per-cell mask of troubled cells.

    The indicator runs component-wise on u - u^e; a cell is troubled when
    minmod changes the interior slope of any component.
    """
    space = state.space
    if space.k == 0:
        return np.zeros(space.N, dtype=bool)
    indicator = state.coeffs - decomp.ue
    interior, forward, backward = _slopes(space, indicator)
    limited = minmod(interior, config.beta * forward, config.beta * backward)
    changed = limited != interior

    widths = space.mesh.widths
    floor = config.noise_floor * _scales(space, state.coeffs)[:, None] / widths
    quiet = np.abs(interior) <= np.maximum(config.M * widths**2, floor)
    return np.any(changed & ~quiet, axis=0)


def detect_and_limit(
    state: StateField, decomp: EquilibriumDecomposition, config: LimiterConfig
) -> tuple[StateField, np.ndarray]:
    """
    Limit every troubled cell of a state.

    In a troubled cell each variable is replaced by the linear polynomial
    with the minmod slope of the full variable, keeping its r^2-weighted
    average.

    Returns:
        (limited state, troubled mask of shape (N,))
    """
    space = state.space
    troubled = detect_troubled(state, decomp, config)
    if not np.any(troubled):
        return state.copy(), troubled

    coeffs = state.coeffs
    interior, forward, backward = _slopes(space, coeffs)
    slope = minmod(interior, config.beta * forward, config.beta * backward)
    _, weighted = averages(space, coeffs)

    # weighted average of (r - r_j) over each cell
    volume = space.cell_integrals_r2(np.ones_like(space.r_nodes))
    offset = space.cell_integrals_r2(space.r_nodes - space.mesh.midpoints[:, None]) / volume

    limited = coeffs.copy()
    rebuilt = np.zeros_like(coeffs[:, troubled])
    rebuilt[..., 0] = weighted[:, troubled] - slope[:, troubled] * offset[troubled]
    if space.k >= 1:
        rebuilt[..., 1] = slope[:, troubled] * space.jac[troubled]
    limited[:, troubled] = rebuilt

    logger.debug(f"limiter: {int(troubled.sum())} troubled cells of {space.N}")
    return StateField(space, limited), troubled


def energy_correction(
    ene_limited: np.ndarray,
    rho_pre: np.ndarray,
    gravity_pre: GravityField,
    rho_post: np.ndarray,
    gravity_post: GravityField,
) -> np.ndarray:
    """
    Shift the limited energy so E + rho Phi / 2 keeps its integral per cell.

    Every cell receives int (rho Phi - rho~ Phi~) / 2 r^2 dr / int r^2 dr on
    its mean, troubled or not.

    Args:
        ene_limited: Energy coefficients after limiting, shape (N, k+1)
        rho_pre: Density coefficients before limiting
        gravity_pre: Gravity of rho_pre
        rho_post: Density coefficients after limiting
        gravity_post: Gravity of rho_post

    Returns:
        Corrected energy coefficients
    """
    space = gravity_pre.space
    before = space.nodes(rho_pre) * gravity_pre.phi_nodes
    after = space.nodes(rho_post) * gravity_post.phi_nodes
    volume = space.cell_integrals_r2(np.ones_like(space.r_nodes))
    shift = 0.5 * space.cell_integrals_r2(before - after) / volume
    corrected = np.array(ene_limited, dtype=float, copy=True)
    corrected[:, 0] += shift
    return corrected


__all__ = [
    "DEFAULT_BETA",
    "LimiterConfig",
    "minmod",
    "averages",
    "detect_troubled",
    "detect_and_limit",
    "energy_correction",
]
