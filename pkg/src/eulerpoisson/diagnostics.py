# =============================================================================
# EulerPoisson - Diagnostics Module
# =============================================================================
#
# Energy budget, central density and L1 errors.
#
# The total energy is the integral of E + rho Phi / 2 against r^2 dr. Its
# change over a step is balanced by the boundary fluxes of the step:
#
#   dE = E_tot^{n+1} - E_tot^n
#        + dt [r^2 (f*_3 + f*_1 Phi)]_{r_min}^{R}
#        + [r^2 (dPhi^{n+1} Phi^n - dPhi^n Phi^{n+1})]_{r_min}^{R} / (8 pi G)
#
# with the stage-combined fluxes of the step. The last line vanishes when
# Phi(R) = 0 and the mesh starts at the origin. Energies optionally carry
# the 4 pi solid-angle factor.
#
# =============================================================================

"""
Energies, the step-wise energy ledger, central density and error norms.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from eulerpoisson.dg_field import DGSpace, StateField
from eulerpoisson.eos.hybrid import HybridEos
from eulerpoisson.errors import InvalidStateError
from eulerpoisson.poisson import FOUR_PI, GravityField

logger = logging.getLogger("eulerpoisson.diagnostics")

ReferenceSampler = Callable[[np.ndarray], np.ndarray]

LEDGER_COLUMNS = ("t", "E_int", "E_kin", "E_grav", "E_tot", "dE_step", "dE_cum", "rho_c")


# -----------------------------------------------------------------------------
# Energies
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Energies:
    """Energy integrals of one state."""

    internal: float
    kinetic: float
    gravitational: float
    total: float


def energies(state: StateField, gravity: GravityField, four_pi: bool = False) -> Energies:
    """
    Internal, kinetic, gravitational and total energy.

    E_int uses rho e = E - rho u^2 / 2 and E_grav = int rho Phi / 2.

    Args:
        state: Conserved state
        gravity: Gravity of the state's density
        four_pi: Multiply every integral by 4 pi
    """
    space = state.space
    rho, mom, ene = space.nodes(state.coeffs)
    kinetic_density = np.zeros_like(rho)
    np.divide(0.5 * mom * mom, rho, out=kinetic_density, where=rho != 0.0)

    factor = FOUR_PI if four_pi else 1.0
    e_kin = factor * float(np.sum(space.cell_integrals_r2(kinetic_density)))
    e_fluid = factor * float(np.sum(space.cell_integrals_r2(ene)))
    e_grav = factor * 0.5 * float(np.sum(space.cell_integrals_r2(rho * gravity.phi_nodes)))
    return Energies(
        internal=e_fluid - e_kin,
        kinetic=e_kin,
        gravitational=e_grav,
        total=e_fluid + e_grav,
    )


def thermal_energy_ratio(state: StateField, eos: HybridEos) -> float:
    """
    E_th / E_int for the hybrid equation of state.

    E_th integrates rho e - (rho e)_p; 0 when the internal energy is 0.
    """
    space = state.space
    rho, mom, ene = space.nodes(state.coeffs)
    internal = ene - 0.5 * mom * mom / rho
    _, polytropic = eos.polytropic_parts(rho)
    e_int = float(np.sum(space.cell_integrals_r2(internal)))
    if e_int == 0.0:
        return 0.0
    return float(np.sum(space.cell_integrals_r2(internal - polytropic))) / e_int


# -----------------------------------------------------------------------------
# Energy Ledger
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryRecord:
    """
    Boundary data of one completed step.

    Fluxes and potentials are the stage combinations the final update used.

    Attributes:
        dt: Step size
        energy_flux: f*_3 at (r_min, R)
        mass_flux: f*_1 at (r_min, R)
        phi_bar: Potential entering the energy source at (r_min, R)
        dphi_old, phi_old: dPhi/dr and Phi at (r_min, R) at the step start
        dphi_new, phi_new: The same at the step end
    """

    dt: float
    energy_flux: tuple[float, float]
    mass_flux: tuple[float, float]
    phi_bar: tuple[float, float]
    dphi_old: tuple[float, float]
    phi_old: tuple[float, float]
    dphi_new: tuple[float, float]
    phi_new: tuple[float, float]


def boundary_correction(record: BoundaryRecord, r_min: float, R: float, G: float) -> float:  # noqa: N803
    """Energy leaving through the boundaries during one step (no 4 pi)."""
    areas = (r_min * r_min, R * R)
    signs = (-1.0, 1.0)
    total = 0.0
    for side in (0, 1):
        flux = record.energy_flux[side] + record.mass_flux[side] * record.phi_bar[side]
        total += signs[side] * areas[side] * record.dt * flux
        if G != 0.0:
            swap = (
                record.dphi_new[side] * record.phi_old[side]
                - record.dphi_old[side] * record.phi_new[side]
            )
            total += signs[side] * areas[side] * swap / (2.0 * FOUR_PI * G)
    return total


@dataclass
class LedgerRow:
    t: float
    E_int: float  # noqa: N815
    E_kin: float  # noqa: N815
    E_grav: float  # noqa: N815
    E_tot: float  # noqa: N815
    dE_step: float  # noqa: N815
    dE_cum: float  # noqa: N815
    rho_c: float

    def as_tuple(self) -> tuple[float, ...]:
        return (
            self.t,
            self.E_int,
            self.E_kin,
            self.E_grav,
            self.E_tot,
            self.dE_step,
            self.dE_cum,
            self.rho_c,
        )


@dataclass
class EnergyLedger:
    """
    Energy history of a run.

    Attributes:
        r_min, R: Domain ends (for the boundary terms)
        G: Gravitational constant
        four_pi: Whether energies carry the 4 pi factor
        rows: One row per recorded time, starting with the initial state
    """

    r_min: float
    R: float  # noqa: N815
    G: float  # noqa: N815
    four_pi: bool = False
    rows: list[LedgerRow] = field(default_factory=list)

    @property
    def cumulative(self) -> float:
        return self.rows[-1].dE_cum if self.rows else 0.0

    @property
    def last(self) -> LedgerRow:
        if not self.rows:
            raise InvalidStateError("energy ledger is empty")
        return self.rows[-1]

    def start(self, t: float, e: Energies, rho_c: float) -> None:
        """Record the initial state."""
        self.rows = [
            LedgerRow(t, e.internal, e.kinetic, e.gravitational, e.total, 0.0, 0.0, rho_c)
        ]

    def max_abs_step(self) -> float:
        return max((abs(row.dE_step) for row in self.rows), default=0.0)


def delta_E_step(  # noqa: N802
    ledger: EnergyLedger,
    t: float,
    e_new: Energies,
    record: BoundaryRecord | None,
    rho_c: float = math.nan,
) -> EnergyLedger:
    """
    Append one step to the ledger.

    Args:
        ledger: Ledger holding at least the initial row
        t: Time at the end of the step
        e_new: Energies at the end of the step
        record: Boundary data of the step
        rho_c: Central density at the end of the step

    Returns:
        The same ledger, updated

    Raises:
        InvalidStateError: If the ledger is empty or the record is missing
    """
    if not ledger.rows:
        raise InvalidStateError("energy ledger has no initial row")
    if record is None:
        raise InvalidStateError("step has no boundary record")
    factor = FOUR_PI if ledger.four_pi else 1.0
    outflow = factor * boundary_correction(record, ledger.r_min, ledger.R, ledger.G)
    step = e_new.total - ledger.rows[-1].E_tot + outflow
    ledger.rows.append(
        LedgerRow(
            t,
            e_new.internal,
            e_new.kinetic,
            e_new.gravitational,
            e_new.total,
            step,
            ledger.rows[-1].dE_cum + step,
            rho_c,
        )
    )
    return ledger


# -----------------------------------------------------------------------------
# Central Density and Errors
# -----------------------------------------------------------------------------


def central_density(state: StateField, window: float | None = None) -> float:
    """
    Volume-weighted mean density within r < window (from r_min).

    A window inside the first cell, or None, gives the first cell's
    weighted average.
    """
    space = state.space
    faces = space.mesh.faces
    rho_nodes = space.nodes(state.coeffs[0])
    if window is None or window <= faces[1]:
        return float(
            space.cell_integrals_r2(rho_nodes[:1])[0]
            / space.cell_integrals_r2(np.ones_like(rho_nodes[:1]))[0]
        )

    window = min(float(window), float(faces[-1]))
    full = int(np.searchsorted(faces, window, side="right") - 1)
    mass = float(np.sum(space.cell_integrals_r2(rho_nodes)[:full]))
    r_start = float(faces[full])
    if full < space.N and window > r_start:
        # partial cell [r_start, window] with the cell's own quadrature points
        half = 0.5 * (window - r_start)
        r = r_start + half * (space.quad.points + 1.0)
        values = space.eval_at(state.coeffs[0], np.minimum(r, faces[-1]))
        mass += float(half * np.sum(space.quad.weights * values * r * r))
    r0 = float(faces[0])
    volume = (window**3 - r0**3) / 3.0
    return mass / volume


def l1_error(state: StateField, reference: ReferenceSampler) -> np.ndarray:
    """
    Plain-dr L1 error of each conserved variable.

    Args:
        state: Numerical state
        reference: Callable r -> (3, ...) conserved values

    Returns:
        Array of three errors (rho, mom, E)
    """
    space = state.space
    values = space.nodes(state.coeffs)
    exact = np.asarray(reference(space.r_nodes), dtype=float)
    return np.sum(space.cell_integrals_dr(np.abs(values - exact)), axis=-1)


def state_sampler(state: StateField) -> ReferenceSampler:
    """Reference sampler evaluating a (finer) numerical state."""
    space: DGSpace = state.space
    coeffs = state.coeffs.copy()

    def sample(r: np.ndarray) -> np.ndarray:
        return space.eval_at(coeffs, r)

    return sample


# -----------------------------------------------------------------------------
# Convergence Rates
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceTable:
    """
    L1 errors over a mesh sequence and the observed orders between them.

    Attributes:
        meshes: Cell counts, increasing
        errors: Shape (len(meshes), 3), one row per mesh
        rates: Shape (len(meshes) - 1, 3); rates[i] compares meshes i and i + 1
    """

    meshes: tuple[int, ...]
    errors: np.ndarray
    rates: np.ndarray


def convergence_rates(meshes: list[int] | tuple[int, ...], errors: np.ndarray) -> ConvergenceTable:
    """
    Observed orders log(e_i / e_{i+1}) / log(N_{i+1} / N_i).

    Zero errors give NaN rates.

    Raises:
        ValueError: If fewer than two meshes are given or shapes disagree
    """
    errors = np.asarray(errors, dtype=float)
    if len(meshes) < 2:
        raise ValueError("need at least two meshes for convergence rates")
    if errors.shape != (len(meshes), 3):
        raise ValueError(f"errors must have shape ({len(meshes)}, 3), got {errors.shape}")
    ratios = np.log(np.asarray(meshes[1:], dtype=float) / np.asarray(meshes[:-1], dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        rates = np.log(errors[:-1] / errors[1:]) / ratios[:, None]
    rates = np.where(np.isfinite(rates), rates, np.nan)
    return ConvergenceTable(meshes=tuple(int(n) for n in meshes), errors=errors, rates=rates)


__all__ = [
    "LEDGER_COLUMNS",
    "Energies",
    "energies",
    "thermal_energy_ratio",
    "BoundaryRecord",
    "boundary_correction",
    "LedgerRow",
    "EnergyLedger",
    "delta_E_step",
    "central_density",
    "l1_error",
    "state_sampler",
    "ConvergenceTable",
    "convergence_rates",
]
