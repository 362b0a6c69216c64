# =============================================================================
# EulerPoisson - Self-Gravitating Gas Dynamics in Spherical Symmetry
# =============================================================================
#
# Runge-Kutta discontinuous Galerkin solver for the Euler-Poisson system in
# spherical symmetry that keeps polytropic hydrostatic equilibria to
# round-off and conserves fluid plus gravitational energy to round-off.
#
# The package works by:
# 1. Projecting a scenario's initial fields onto a radial DG space
# 2. Solving the Poisson equation exactly for the piecewise density
# 3. Splitting the state into a recovered polytrope and its fluctuation
# 4. Advancing with HLLC fluxes, balanced sources and a TVB limiter
# 5. Booking every step's energy change in a ledger
#
# Example usage:
#     import eulerpoisson
#
#     config = eulerpoisson.RunConfig(scenario="explosion", N=200)
#     report = eulerpoisson.run(config)
#     print(report.ledger.cumulative)
#
# =============================================================================

"""
EulerPoisson - well-balanced, energy-conserving RKDG for self-gravitating gas.
"""

from __future__ import annotations

# -----------------------------------------------------------------------------
# Version Information
# -----------------------------------------------------------------------------
__version__ = "0.1.0"
__author__ = "EulerPoisson Contributors"
__license__ = "MIT"

# -----------------------------------------------------------------------------
# Public API
# -----------------------------------------------------------------------------
from eulerpoisson.config import RunConfig, load_config, parse_config
from eulerpoisson.dg_field import DGField, DGSpace, StateField
from eulerpoisson.diagnostics import (
    ConvergenceTable,
    EnergyLedger,
    central_density,
    delta_E_step,
    energies,
    l1_error,
)
from eulerpoisson.driver import RunReport, convergence_sweep, run
from eulerpoisson.eos import HybridEos, IdealGas
from eulerpoisson.errors import (
    ConfigError,
    EulerPoissonError,
    InvalidStateError,
    ProfileFileError,
    SolverAbortError,
)
from eulerpoisson.lane_emden import PolytropeProfile, eval_theta, get_profile, solve_lane_emden
from eulerpoisson.limiter import LimiterConfig
from eulerpoisson.mesh import Mesh, build_geometric, build_uniform
from eulerpoisson.poisson import GravityField, solve_gravity
from eulerpoisson.problems import Scenario, available_scenarios, make_scenario
from eulerpoisson.spatial import SchemeVariant, SpatialOperator
from eulerpoisson.stepper import Stepper, cfl_dt

__all__ = [
    "__version__",
    "RunConfig",
    "load_config",
    "parse_config",
    "DGField",
    "DGSpace",
    "StateField",
    "ConvergenceTable",
    "EnergyLedger",
    "central_density",
    "delta_E_step",
    "energies",
    "l1_error",
    "RunReport",
    "convergence_sweep",
    "run",
    "HybridEos",
    "IdealGas",
    "ConfigError",
    "EulerPoissonError",
    "InvalidStateError",
    "ProfileFileError",
    "SolverAbortError",
    "PolytropeProfile",
    "eval_theta",
    "get_profile",
    "solve_lane_emden",
    "LimiterConfig",
    "Mesh",
    "build_geometric",
    "build_uniform",
    "GravityField",
    "solve_gravity",
    "Scenario",
    "available_scenarios",
    "make_scenario",
    "SchemeVariant",
    "SpatialOperator",
    "Stepper",
    "cfl_dt",
]
