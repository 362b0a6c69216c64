# =============================================================================
# EulerPoisson - Riemann Solver Module
# =============================================================================
#
# Physical Euler flux and the HLLC approximate Riemann solver. Everything is
# vectorized over faces: conserved states are arrays of shape (3, M).
#
#   S-  = min(u- - c-, u+ - c+)      S+ = max(u- + c-, u+ + c+)
#   S*  = (p+ - p- + rho- u- (S- - u-) - rho+ u+ (S+ - u+))
#         / (rho- (S- - u-) - rho+ (S+ - u+))
#
# =============================================================================

"""
Physical flux and HLLC numerical flux for the 1D radial Euler equations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from eulerpoisson.eos.base import BaseEos

# Below this |denominator| the contact speed is not formed and HLL is used
DEGENERATE_DENOMINATOR = 1.0e-300


@dataclass(frozen=True)
class PrimState:
    """
    Primitive view of one face side.

    Attributes:
        rho: Density
        u: Velocity
        p: Pressure
        E: Total energy density
    """

    rho: float
    u: float
    p: float
    E: float  # noqa: N815

    def conserved(self) -> np.ndarray:
        return np.array([self.rho, self.rho * self.u, self.E])


def physical_flux(state: np.ndarray, p: np.ndarray) -> np.ndarray:
    """
    Euler flux (rho u, rho u^2 + p, (E + p) u) of conserved states.

    Args:
        state: Conserved variables, shape (3, ...)
        p: Pressure, shape (...)
    """
    rho, mom, ene = state
    u = mom / rho
    return np.stack([mom, mom * u + p, (ene + p) * u])


@dataclass(frozen=True, eq=False)
class StarRegion:
    """Wave speeds and intermediate states of one HLLC solve."""

    s_left: np.ndarray
    s_star: np.ndarray
    s_right: np.ndarray
    u_star_left: np.ndarray
    u_star_right: np.ndarray
    p_left: np.ndarray
    p_right: np.ndarray
    degenerate: np.ndarray


def _star_state(
    state: np.ndarray, u: np.ndarray, p: np.ndarray, s: np.ndarray, s_star: np.ndarray
) -> np.ndarray:
    rho, _, ene = state
    gap = s - u
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = gap / (s - s_star)
        energy = ene + (s_star - u) * (rho * s_star + p / gap)
    return np.stack([rho * factor, rho * factor * s_star, factor * energy])


def star_region(left: np.ndarray, right: np.ndarray, eos: BaseEos) -> StarRegion:
    """
    Signal speeds and HLLC intermediate states for face state pairs.

    Args:
        left: Conserved states on the minus side, shape (3, M)
        right: Conserved states on the plus side, shape (3, M)
        eos: Equation of state
    """
    rho_l, mom_l, ene_l = left
    rho_r, mom_r, ene_r = right
    u_l = mom_l / rho_l
    u_r = mom_r / rho_r
    e_l = eos.specific_energy(rho_l, mom_l, ene_l)
    e_r = eos.specific_energy(rho_r, mom_r, ene_r)
    p_l = eos.pressure(rho_l, e_l)
    p_r = eos.pressure(rho_r, e_r)
    c_l = eos.sound_speed(rho_l, e_l)
    c_r = eos.sound_speed(rho_r, e_r)

    s_l = np.minimum(u_l - c_l, u_r - c_r)
    s_r = np.maximum(u_l + c_l, u_r + c_r)
    denom = rho_l * (s_l - u_l) - rho_r * (s_r - u_r)
    degenerate = np.abs(denom) < DEGENERATE_DENOMINATOR
    safe = np.where(degenerate, 1.0, denom)
    s_star = (p_r - p_l + rho_l * u_l * (s_l - u_l) - rho_r * u_r * (s_r - u_r)) / safe
    s_star = np.where(degenerate, 0.5 * (s_l + s_r), s_star)

    return StarRegion(
        s_left=s_l,
        s_star=s_star,
        s_right=s_r,
        u_star_left=_star_state(left, u_l, p_l, s_l, s_star),
        u_star_right=_star_state(right, u_r, p_r, s_r, s_star),
        p_left=p_l,
        p_right=p_r,
        degenerate=degenerate,
    )


def hll(
    left: np.ndarray,
    right: np.ndarray,
    f_left: np.ndarray,
    f_right: np.ndarray,
    s_left: np.ndarray,
    s_right: np.ndarray,
) -> np.ndarray:
    """Two-wave HLL flux (central average when the fan collapses)."""
    width = s_right - s_left
    collapsed = width <= 0.0
    safe = np.where(collapsed, 1.0, width)
    flux = (s_right * f_left - s_left * f_right + s_left * s_right * (right - left)) / safe
    return np.where(collapsed, 0.5 * (f_left + f_right), flux)


def hllc(left: np.ndarray, right: np.ndarray, eos: BaseEos) -> np.ndarray:
    """
    HLLC numerical flux.

    Args:
        left: Conserved states on the minus side, shape (3, M)
        right: Conserved states on the plus side, shape (3, M)
        eos: Equation of state

    Returns:
        Fluxes, shape (3, M)
    """
    left = np.asarray(left, dtype=float)
    right = np.asarray(right, dtype=float)
    star = star_region(left, right, eos)
    f_l = physical_flux(left, star.p_left)
    f_r = physical_flux(right, star.p_right)

    fs_l = f_l + star.s_left * (star.u_star_left - left)
    fs_r = f_r + star.s_right * (star.u_star_right - right)

    flux = np.where(
        0.0 <= star.s_left,
        f_l,
        np.where(0.0 <= star.s_star, fs_l, np.where(0.0 <= star.s_right, fs_r, f_r)),
    )

    fallback = star.degenerate | ~np.all(np.isfinite(flux), axis=0)
    if np.any(fallback):
        flux = np.where(fallback, hll(left, right, f_l, f_r, star.s_left, star.s_right), flux)

    identical = np.all(left == right, axis=0)
    return np.where(identical, f_l, flux)


__all__ = [
    "PrimState",
    "StarRegion",
    "physical_flux",
    "star_region",
    "hll",
    "hllc",
]
