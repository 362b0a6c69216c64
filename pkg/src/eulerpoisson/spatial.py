# =============================================================================
# EulerPoisson - Spatial Operator Module
# =============================================================================
#
# Semi-discrete right-hand side of the radial Euler-Poisson system. One
# evaluation produces, for a stage state:
#
#   - the face flux set (HLLC of the modified or plain traces)
#   - the flux terms  -r^2 f* psi |_{j+1/2} + r^2 f* psi |_{j-1/2} + int f dpsi r^2
#   - the momentum source (standard or well-balanced)
#   - the standard energy source (standard scheme variants only)
#   - the scenario's extra source
#
# The total-energy-conserving energy source needs data from several stages
# and is assembled by the stepper through source_energy_tec().
#
# =============================================================================

"""
Face fluxes, volume terms and source terms of the DG discretization.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Literal

import numpy as np

from eulerpoisson.dg_field import DGField, DGSpace, StateField
from eulerpoisson.eos.base import BaseEos
from eulerpoisson.errors import SolverAbortError
from eulerpoisson.poisson import GravityField, solve_gravity_coeffs
from eulerpoisson.riemann import hllc, physical_flux
from eulerpoisson.well_balanced import (
    EquilibriumDecomposition,
    EquilibriumTarget,
    NoEquilibrium,
    modified_interface_states,
    momentum_correction,
    source_momentum_standard,
)

if TYPE_CHECKING:
    from eulerpoisson.problems.base import Scenario

logger = logging.getLogger("eulerpoisson.spatial")

SchemeName = Literal["wb", "standard", "standard_corrected"]
SCHEME_NAMES: tuple[str, ...] = ("wb", "standard", "standard_corrected")


# -----------------------------------------------------------------------------
# Scheme Variants
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class SchemeVariant:
    """
    Which terms of the discretization are switched on.

    Attributes:
        name: Variant name
        well_balanced: Modified interface states and corrected momentum source
        energy_conserving: Energy source in its total-energy-conserving form
        limiter_correction: Total-energy correction after limiting
    """

    name: str
    well_balanced: bool
    energy_conserving: bool
    limiter_correction: bool

    @classmethod
    def from_name(cls, name: str) -> SchemeVariant:
        """
        Raises:
            ValueError: If the name is not a known variant
        """
        if name == "wb":
            return cls(name, well_balanced=True, energy_conserving=True, limiter_correction=True)
        if name == "standard":
            return cls(name, well_balanced=False, energy_conserving=False, limiter_correction=False)
        if name == "standard_corrected":
            return cls(name, well_balanced=False, energy_conserving=False, limiter_correction=True)
        raise ValueError(f"unknown scheme {name!r}; choose one of {', '.join(SCHEME_NAMES)}")


# -----------------------------------------------------------------------------
# Result Types
# -----------------------------------------------------------------------------


@dataclass(eq=False)
class FaceFluxSet:
    """
    Numerical fluxes at the N+1 faces.

    Attributes:
        flux: f* per face, shape (3, N+1)
        minus: State on the inner side of each face, shape (3, N+1)
        plus: State on the outer side of each face, shape (3, N+1)
        phi: Single-valued potential at each face, shape (N+1,)
    """

    flux: np.ndarray
    minus: np.ndarray = field(repr=False)
    plus: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)

    @property
    def mass_flux(self) -> np.ndarray:
        return self.flux[0]

    @property
    def energy_flux(self) -> np.ndarray:
        return self.flux[2]


@dataclass(eq=False)
class StageEvaluation:
    """
    Everything one stage state contributes to an update.

    Attributes:
        state: The stage state
        time: Stage time
        gravity: Gravity of the stage density
        decomp: Equilibrium decomposition of the stage state
        faces: Face flux set
        residual: Right-hand side before the mass solve, shape (3, N, k+1);
                  the energy row lacks the source when the scheme is
                  energy conserving
    """

    state: StateField
    time: float
    gravity: GravityField
    decomp: EquilibriumDecomposition
    faces: FaceFluxSet
    residual: np.ndarray = field(repr=False)


# -----------------------------------------------------------------------------
# Term Assembly
# -----------------------------------------------------------------------------


def assemble_flux_terms(
    state: StateField,
    decomp: EquilibriumDecomposition,
    eos: BaseEos,
    inner_ghost: np.ndarray | None = None,
    outer_ghost: np.ndarray | None = None,
    phi_faces: np.ndarray | None = None,
) -> tuple[FaceFluxSet, np.ndarray]:
    """
    Face fluxes and flux terms for every cell and test function.

    Interface traces are the modified states u* = u^d + u^f (the plain
    traces wherever u^d vanishes). The ghost states on the outer side of
    the two boundary faces default to a copy of the interior trace.

    Args:
        state: Stage state
        decomp: Its equilibrium decomposition
        eos: Equation of state
        inner_ghost: State beyond r_min, shape (3,)
        outer_ghost: State beyond R, shape (3,)
        phi_faces: Potential at the faces, stored on the flux set

    Returns:
        (faces, terms) with terms of shape (3, N, k+1)

    Raises:
        SolverAbortError: If a face flux is not finite
    """
    space = state.space
    n = space.N
    u_minus, u_plus = modified_interface_states(decomp)

    minus = np.empty((3, n + 1))
    plus = np.empty((3, n + 1))
    minus[:, 1:] = u_minus
    plus[:, :-1] = u_plus
    minus[:, 0] = u_plus[:, 0] if inner_ghost is None else inner_ghost
    plus[:, -1] = u_minus[:, -1] if outer_ghost is None else outer_ghost

    _check_face_states(minus, plus)
    flux = hllc(minus, plus, eos)
    bad = ~np.all(np.isfinite(flux), axis=0)
    if np.any(bad):
        face = int(np.argmax(bad))
        raise SolverAbortError("non-finite numerical flux", cell=min(face, n - 1))

    faces = space.mesh.faces
    face_terms = -(faces[1:] ** 2 * flux[:, 1:])[..., None] * space.right + (
        faces[:-1] ** 2 * flux[:, :-1]
    )[..., None] * space.left

    nodes = space.nodes(state.coeffs)
    p = eos.pressure_from_conserved(nodes[0], nodes[1], nodes[2])
    volume = space.test_deriv_r2(physical_flux(nodes, p))

    phi = np.zeros(n + 1) if phi_faces is None else np.asarray(phi_faces, dtype=float)
    return FaceFluxSet(flux=flux, minus=minus, plus=plus, phi=phi), face_terms + volume


def _check_face_states(minus: np.ndarray, plus: np.ndarray) -> None:
    for side in (minus, plus):
        bad = ~(side[0] > 0.0) | ~np.all(np.isfinite(side), axis=0)
        if np.any(bad):
            face = int(np.argmax(bad))
            raise SolverAbortError(
                "non-positive or non-finite density at a face", cell=min(face, side.shape[1] - 2)
            )


def source_energy_standard(state: StateField, gravity: GravityField) -> np.ndarray:
    """Energy source -int (rho u) dPhi/dr psi r^2 dr, shape (N, k+1)."""
    space = state.space
    mom = space.nodes(state.coeffs[1])
    return space.test_r2(-mom * gravity.dphi_nodes)


def source_energy_tec(
    state_bar: StateField,
    mass_flux_bar: np.ndarray,
    drho_dt: DGField,
    phi_bar: GravityField,
) -> np.ndarray:
    """
    Total-energy-conserving energy source, shape (N, k+1).

        -[f*_1 Phi psi r^2]_{j-1/2}^{j+1/2} - int drho/dt Phi psi r^2 dr
                                            + int (rho u) Phi dpsi/dr r^2 dr

    Args:
        state_bar: State whose momentum enters the volume term
        mass_flux_bar: Mass flux at the N+1 faces
        drho_dt: Density increment of the stage divided by its time step
        phi_bar: Potential entering all three terms

    Raises:
        ValueError: If the inputs do not share one discretization
    """
    space = state_bar.space
    if drho_dt.space is not space or phi_bar.space is not space:
        raise ValueError("tec source inputs live on different spaces")
    mass_flux_bar = np.asarray(mass_flux_bar, dtype=float)
    if mass_flux_bar.shape != (space.N + 1,):
        raise ValueError(f"mass flux shape {mass_flux_bar.shape} != ({space.N + 1},)")

    faces = space.mesh.faces
    weighted = faces**2 * mass_flux_bar * phi_bar.phi_faces
    face_terms = -weighted[1:, None] * space.right + weighted[:-1, None] * space.left

    phi = phi_bar.phi_nodes
    increment = space.test_r2(space.nodes(drho_dt.coeffs) * phi)
    mom = space.nodes(state_bar.coeffs[1])
    volume = space.test_deriv_r2(mom * phi)
    return face_terms - increment + volume


def apply_inverse_mass(space: DGSpace, residual: np.ndarray) -> np.ndarray:
    """Coefficient rates M^-1 residual for (..., N, k+1) residuals."""
    return space.solve_mass(residual)


def check_state(state: StateField, eos: BaseEos) -> None:
    """
    Abort on NaN, non-positive density or negative pressure.

    Values are checked at the volume nodes and at both cell traces.

    Raises:
        SolverAbortError: Naming the first offending cell
    """
    space = state.space
    samples = np.concatenate(
        [
            space.nodes(state.coeffs),
            space.left_traces(state.coeffs)[..., None],
            space.right_traces(state.coeffs)[..., None],
        ],
        axis=-1,
    )
    finite = np.all(np.isfinite(samples), axis=(0, 2))
    if not np.all(finite):
        raise SolverAbortError("non-finite state", cell=int(np.argmin(finite)))
    positive = np.all(samples[0] > 0.0, axis=1)
    if not np.all(positive):
        raise SolverAbortError("non-positive density", cell=int(np.argmin(positive)))
    p = eos.pressure_from_conserved(samples[0], samples[1], samples[2])
    admissible = np.all(p >= 0.0, axis=1)
    if not np.all(admissible):
        raise SolverAbortError("negative pressure", cell=int(np.argmin(admissible)))


# -----------------------------------------------------------------------------
# Operator
# -----------------------------------------------------------------------------


class SpatialOperator:
    """
    Semi-discrete operator of one scenario on one discretization.

    Example:
        >>> op = SpatialOperator(space, scenario, SchemeVariant.from_name("wb"))
        >>> stage = op.evaluate(state, t=0.0)
        >>> rates = apply_inverse_mass(space, stage.residual)
    """

    def __init__(self, space: DGSpace, scenario: Scenario, variant: SchemeVariant) -> None:
        self.space = space
        self.scenario = scenario
        self.variant = variant
        self.eos = scenario.eos
        self.G = scenario.G
        self.target: EquilibriumTarget = (
            scenario.equilibrium_target() if variant.well_balanced else NoEquilibrium()
        )

    def __repr__(self) -> str:
        return (
            f"SpatialOperator(scenario={self.scenario.name!r}, scheme={self.variant.name!r}, "
            f"{self.space!r})"
        )

    def gravity(self, rho_coeffs: np.ndarray, t: float) -> GravityField:
        """Gravity of a density with the scenario's boundary data at time t."""
        return solve_gravity_coeffs(
            self.space,
            rho_coeffs,
            self.G,
            self.scenario.phi_outer,
            inner_dphi=self.scenario.inner_dphi(t),
            inner_phi=self.scenario.inner_phi(t),
        )

    def decompose(self, state: StateField) -> EquilibriumDecomposition:
        return self.target.decompose(state)

    def evaluate(
        self, state: StateField, t: float, gravity: GravityField | None = None
    ) -> StageEvaluation:
        """
        Assemble every stage-local term for a state.

        Args:
            state: Stage state
            t: Stage time (boundary data and extra source)
            gravity: Gravity of the state if already solved

        Raises:
            SolverAbortError: On non-finite fluxes or non-positive face density
        """
        space = self.space
        if gravity is None:
            gravity = self.gravity(state.coeffs[0], t)
        decomp = self.decompose(state)

        u_minus, u_plus = modified_interface_states(decomp)
        inner_ghost = self.scenario.ghost_state("inner", u_plus[:, 0], t)
        outer_ghost = self.scenario.ghost_state("outer", u_minus[:, -1], t)
        faces, residual = assemble_flux_terms(
            state, decomp, self.eos, inner_ghost, outer_ghost, gravity.phi_faces
        )

        nodes = space.nodes(state.coeffs)
        p = self.eos.pressure_from_conserved(nodes[0], nodes[1], nodes[2])
        residual[1] += source_momentum_standard(space, nodes[0], p, gravity)
        if self.variant.well_balanced:
            residual[1] += momentum_correction(decomp)
        if not self.variant.energy_conserving:
            residual[2] += source_energy_standard(state, gravity)

        if self.scenario.has_extra_source:
            residual += space.test_r2(self.scenario.extra_source(space.r_nodes, t))

        return StageEvaluation(
            state=state,
            time=t,
            gravity=gravity,
            decomp=decomp,
            faces=faces,
            residual=residual,
        )


__all__ = [
    "SCHEME_NAMES",
    "SchemeVariant",
    "FaceFluxSet",
    "StageEvaluation",
    "SpatialOperator",
    "assemble_flux_terms",
    "source_energy_standard",
    "source_energy_tec",
    "apply_inverse_mass",
    "check_state",
]
