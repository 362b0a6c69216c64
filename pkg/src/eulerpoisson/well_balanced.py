# =============================================================================
# EulerPoisson - Well-Balanced Decomposition Module
# =============================================================================
#
# Splits the current state into a projected target equilibrium and a
# fluctuation, u = u^e + u^f with u^e = P u^d. The target u^d is either
# recovered from the central density and pressure through the Lane-Emden
# profile, or supplied explicitly by a scenario.
#
# The decomposition feeds three places:
# - modified interface states u* = u^d(face) + u^f(face) for the flux
# - the momentum source correction
# - the limiter's troubled-cell indicator (applied to u - u^e)
#
# =============================================================================

"""
Equilibrium recovery, decomposition and the well-balanced momentum source.
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from eulerpoisson.dg_field import DGSpace, StateField
from eulerpoisson.eos.base import BaseEos
from eulerpoisson.lane_emden import (
    DEFAULT_STEP,
    DEFAULT_XI_MAX,
    PolytropeProfile,
    eval_theta,
    get_profile,
)
from eulerpoisson.poisson import FOUR_PI, GravityField, solve_gravity_coeffs

logger = logging.getLogger("eulerpoisson.well_balanced")

RadialFunction = Callable[[np.ndarray], np.ndarray]

# Cells whose target exceeds the numerical trace by this factor are masked
SAFEGUARD_FACTOR = 2.0


# -----------------------------------------------------------------------------
# Decomposition
# -----------------------------------------------------------------------------


@dataclass(eq=False)
class EquilibriumDecomposition:
    """
    Target equilibrium of one state and its projection.

    Attributes:
        space: Discretization
        valid: Per-cell mask; u^d is zero where it is False
        ue: Coefficients of u^e = P u^d, shape (3, N, k+1)
        uf: Coefficients of u^f = u - u^e
        ud_left: u^d of each cell at its left face, shape (3, N)
        ud_right: u^d of each cell at its right face, shape (3, N)
        pd_left: Pressure of u^d at each cell's left face, shape (N,)
        pd_right: Pressure of u^d at each cell's right face
        pe_nodes: Pressure of u^e at the volume nodes, shape (N, q)
        gravity_e: Gravity of rho^e
        target: Callable r -> (rho^d, 0, E^d) on valid cells (None if disabled)
        kappa, alpha, rho0, p0, gamma: Recovered constants (nan if not recovered)
    """

    space: DGSpace
    valid: np.ndarray
    ue: np.ndarray = field(repr=False)
    uf: np.ndarray = field(repr=False)
    ud_left: np.ndarray = field(repr=False)
    ud_right: np.ndarray = field(repr=False)
    pd_left: np.ndarray = field(repr=False)
    pd_right: np.ndarray = field(repr=False)
    pe_nodes: np.ndarray = field(repr=False)
    gravity_e: GravityField | None = field(default=None, repr=False)
    target: RadialFunction | None = field(default=None, repr=False)
    kappa: float = math.nan
    alpha: float = math.nan
    rho0: float = math.nan
    p0: float = math.nan
    gamma: float = math.nan

    @property
    def enabled(self) -> bool:
        return bool(np.any(self.valid))

    @property
    def ue_state(self) -> StateField:
        return StateField(self.space, self.ue)

    @property
    def uf_state(self) -> StateField:
        return StateField(self.space, self.uf)

    @classmethod
    def disabled(cls, state: StateField) -> EquilibriumDecomposition:
        """Decomposition with u^d = 0 everywhere (standard DG behaviour)."""
        space = state.space
        n = space.N
        return cls(
            space=space,
            valid=np.zeros(n, dtype=bool),
            ue=np.zeros_like(state.coeffs),
            uf=state.coeffs.copy(),
            ud_left=np.zeros((3, n)),
            ud_right=np.zeros((3, n)),
            pd_left=np.zeros(n),
            pd_right=np.zeros(n),
            pe_nodes=np.zeros((n, space.quad.q)),
        )


def _decompose(
    state: StateField,
    eos: BaseEos,
    G: float,  # noqa: N803
    rho_d: RadialFunction,
    p_d: RadialFunction,
    valid: np.ndarray,
    inner_dphi: float | None,
) -> EquilibriumDecomposition:
    """Project a target (rho_d, 0, E_d) on the valid cells and split the state."""
    space = state.space
    faces = space.mesh.faces
    mask = valid.astype(float)

    def ene_d(r: np.ndarray) -> np.ndarray:
        return eos.internal_energy_density(rho_d(r), p_d(r))

    ue = np.zeros_like(state.coeffs)
    ue[0] = space.project_coeffs(rho_d) * mask[:, None]
    ue[2] = space.project_coeffs(ene_d) * mask[:, None]

    ud_left = np.zeros((3, space.N))
    ud_right = np.zeros((3, space.N))
    ud_left[0] = rho_d(faces[:-1]) * mask
    ud_left[2] = ene_d(faces[:-1]) * mask
    ud_right[0] = rho_d(faces[1:]) * mask
    ud_right[2] = ene_d(faces[1:]) * mask

    pd_left = np.zeros(space.N)
    pd_right = np.zeros(space.N)
    pe_nodes = np.zeros((space.N, space.quad.q))
    if np.any(valid):
        zeros = np.zeros(int(valid.sum()))
        pd_left[valid] = eos.pressure_from_conserved(
            ud_left[0, valid], zeros, ud_left[2, valid]
        )
        pd_right[valid] = eos.pressure_from_conserved(
            ud_right[0, valid], zeros, ud_right[2, valid]
        )
        ue_nodes = space.nodes(ue[:, valid])
        pe_nodes[valid] = eos.pressure_from_conserved(ue_nodes[0], ue_nodes[1], ue_nodes[2])

    gravity_e = solve_gravity_coeffs(space, ue[0], G, inner_dphi=inner_dphi)

    def target(r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        inside = valid[space.mesh.locate(r)]
        rho = np.where(inside, rho_d(r), 0.0)
        ene = np.where(inside, ene_d(r), 0.0)
        return np.stack([rho, np.zeros_like(rho), ene])

    return EquilibriumDecomposition(
        space=space,
        valid=valid,
        ue=ue,
        uf=state.coeffs - ue,
        ud_left=ud_left,
        ud_right=ud_right,
        pd_left=pd_left,
        pd_right=pd_right,
        pe_nodes=pe_nodes,
        gravity_e=gravity_e,
        target=target,
    )


def recover_equilibrium(
    state: StateField,
    profile: PolytropeProfile,
    gamma: float,
    G: float,  # noqa: N803
    eos: BaseEos,
) -> EquilibriumDecomposition:
    """
    Recover the polytropic equilibrium matching the central state.

    The central density and pressure are the right traces at the first
    face. A cell is masked when the profile is not positive across it, or
    when the target exceeds twice the numerical density or pressure at the
    cell's left face.

    Returns:
        The decomposition; a disabled one if the central trace is not positive
    """
    space = state.space
    left = space.left_traces(state.coeffs)
    rho0 = float(left[0, 0])
    if not rho0 > 0.0:
        logger.warning("central density trace not positive; equilibrium recovery disabled")
        return EquilibriumDecomposition.disabled(state)
    p0 = float(eos.pressure_from_conserved(rho0, left[1, 0], left[2, 0]))
    if not p0 > 0.0:
        logger.warning("central pressure trace not positive; equilibrium recovery disabled")
        return EquilibriumDecomposition.disabled(state)

    n = 1.0 / (gamma - 1.0)
    kappa = p0 / rho0**gamma
    alpha = math.sqrt(gamma / (gamma - 1.0) * kappa * rho0 ** (gamma - 2.0) / (FOUR_PI * G))

    def theta(r: np.ndarray) -> np.ndarray:
        return eval_theta(profile, np.asarray(r, dtype=float) / alpha)[0]

    def rho_d(r: np.ndarray) -> np.ndarray:
        return rho0 * np.maximum(theta(r), 0.0) ** n

    def p_d(r: np.ndarray) -> np.ndarray:
        return kappa * rho0**gamma * np.maximum(theta(r), 0.0) ** (n + 1.0)

    faces = space.mesh.faces
    valid = faces[1:] / alpha < profile.xi_surface
    valid &= np.all(theta(space.r_nodes) > 0.0, axis=1)
    valid &= theta(faces[1:]) > 0.0

    rho_plus = left[0]
    positive = rho_plus > 0.0
    p_plus = np.zeros_like(rho_plus)
    if np.any(positive):
        p_plus[positive] = eos.pressure_from_conserved(
            rho_plus[positive], left[1, positive], left[2, positive]
        )
    valid &= positive
    valid &= rho_d(faces[:-1]) <= SAFEGUARD_FACTOR * rho_plus
    valid &= p_d(faces[:-1]) <= SAFEGUARD_FACTOR * p_plus

    decomposition = _decompose(state, eos, G, rho_d, p_d, valid, inner_dphi=None)
    decomposition.kappa = kappa
    decomposition.alpha = alpha
    decomposition.rho0 = rho0
    decomposition.p0 = p0
    decomposition.gamma = gamma
    logger.debug(
        f"recovered equilibrium rho0={rho0:.9g} p0={p0:.9g} kappa={kappa:.9g} "
        f"alpha={alpha:.9g} masked={int((~valid).sum())}/{space.N}"
    )
    return decomposition


# -----------------------------------------------------------------------------
# Equilibrium targets
# -----------------------------------------------------------------------------


class EquilibriumTarget(ABC):
    """Strategy producing the decomposition of a state."""

    @property
    @abstractmethod
    def mode(self) -> str:
        """One of "recover", "explicit", "disabled"."""
        ...

    @abstractmethod
    def decompose(self, state: StateField) -> EquilibriumDecomposition:
        ...


class RecoveredPolytrope(EquilibriumTarget):
    """
    Recover a polytrope from the central state at every call.

    The adiabatic index is taken from the EoS at the central density, and
    the Lane-Emden profile for that index comes from the shared cache.
    """

    def __init__(
        self,
        eos: BaseEos,
        G: float,  # noqa: N803
        h: float = DEFAULT_STEP,
        xi_max: float = DEFAULT_XI_MAX,
    ) -> None:
        self.eos = eos
        self.G = G
        self.h = h
        self.xi_max = xi_max

    @property
    def mode(self) -> str:
        return "recover"

    def decompose(self, state: StateField) -> EquilibriumDecomposition:
        rho0 = float(state.space.left_traces(state.coeffs[0])[0])
        if not rho0 > 0.0:
            logger.warning("central density trace not positive; equilibrium recovery disabled")
            return EquilibriumDecomposition.disabled(state)
        gamma = self.eos.polytropic_gamma(rho0)
        profile = get_profile(1.0 / (gamma - 1.0), self.h, self.xi_max)
        return recover_equilibrium(state, profile, gamma, self.G, self.eos)


class ExplicitEquilibrium(EquilibriumTarget):
    """
    Fixed target equilibrium supplied as closed-form density and pressure.

    Attributes:
        inner_dphi: dPhi^e/dr at r_min when the mesh does not start at 0
    """

    def __init__(
        self,
        eos: BaseEos,
        G: float,  # noqa: N803
        rho: RadialFunction,
        pressure: RadialFunction,
        inner_dphi: float | None = None,
    ) -> None:
        self.eos = eos
        self.G = G
        self.rho = rho
        self.pressure = pressure
        self.inner_dphi = inner_dphi

    @property
    def mode(self) -> str:
        return "explicit"

    def decompose(self, state: StateField) -> EquilibriumDecomposition:
        valid = np.ones(state.space.N, dtype=bool)
        return _decompose(
            state, self.eos, self.G, self.rho, self.pressure, valid, inner_dphi=self.inner_dphi
        )


class NoEquilibrium(EquilibriumTarget):
    """No target: the scheme reduces to standard DG."""

    @property
    def mode(self) -> str:
        return "disabled"

    def decompose(self, state: StateField) -> EquilibriumDecomposition:
        return EquilibriumDecomposition.disabled(state)


# -----------------------------------------------------------------------------
# Interface states and momentum source
# -----------------------------------------------------------------------------


def modified_interface_states(
    decomp: EquilibriumDecomposition,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Modified traces u* = u^d + u^f on both sides of every cell.

    Returns:
        (u_minus, u_plus): u_minus[:, j] is the value at the right face of
        cell j seen from inside, u_plus[:, j] the value at its left face;
        both shape (3, N). Masked cells give the plain traces.
    """
    space = decomp.space
    u_minus = decomp.ud_right + space.right_traces(decomp.uf)
    u_plus = decomp.ud_left + space.left_traces(decomp.uf)
    return u_minus, u_plus


def source_momentum_standard(
    space: DGSpace, rho_nodes: np.ndarray, p_nodes: np.ndarray, gravity: GravityField
) -> np.ndarray:
    """
    Standard momentum source, integral of (2p/r - rho dPhi/dr) psi r^2 dr.

    The 1/r is absorbed by the weight: the integrand used is 2 p r psi.
    """
    r = space.r_nodes
    return space.test_dr(2.0 * p_nodes * r - rho_nodes * gravity.dphi_nodes * r**2)


def momentum_correction(decomp: EquilibriumDecomposition) -> np.ndarray:
    """
    Correction added to the standard momentum source, shape (N, k+1).

    It is the momentum residual of u^e with the face pressure of u^d, so
    the full momentum residual vanishes when u = u^e.
    """
    space = decomp.space
    if not decomp.enabled or decomp.gravity_e is None:
        return np.zeros((space.N, space.nbasis))
    faces = space.mesh.faces
    r = space.r_nodes
    rho_e = space.nodes(decomp.ue[0])
    face_terms = (faces[1:] ** 2 * decomp.pd_right)[:, None] * space.right[None, :] - (
        faces[:-1] ** 2 * decomp.pd_left
    )[:, None] * space.left[None, :]
    volume_flux = space.test_deriv_r2(decomp.pe_nodes)
    volume_source = space.test_dr(
        2.0 * decomp.pe_nodes * r - rho_e * decomp.gravity_e.dphi_nodes * r**2
    )
    return face_terms - volume_flux - volume_source


def source_momentum_wb(
    decomp: EquilibriumDecomposition,
    state: StateField,
    gravity: GravityField,
    eos: BaseEos,
) -> np.ndarray:
    """
    Well-balanced momentum source: standard source plus the correction.

    Returns:
        Values for every cell and test function, shape (N, k+1)
    """
    space = state.space
    nodes = space.nodes(state.coeffs)
    p = eos.pressure_from_conserved(nodes[0], nodes[1], nodes[2])
    return source_momentum_standard(space, nodes[0], p, gravity) + momentum_correction(decomp)


__all__ = [
    "EquilibriumDecomposition",
    "EquilibriumTarget",
    "RecoveredPolytrope",
    "ExplicitEquilibrium",
    "NoEquilibrium",
    "recover_equilibrium",
    "modified_interface_states",
    "source_momentum_standard",
    "momentum_correction",
    "source_momentum_wb",
]
