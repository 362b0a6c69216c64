# =============================================================================
# EulerPoisson - Explosion Scenario
# =============================================================================
#
# A gamma = 2 polytrope whose pressure is raised by a factor alpha inside
# r < r1. Both ends are walls, so the total energy of the box is conserved
# exactly and the ledger should stay at round-off for the wb scheme.
#
# Usage:
#     from eulerpoisson.problems import make_scenario
#
#     scenario = make_scenario("explosion", {"alpha": 5.0})
#
# =============================================================================

"""
Pressure-explosion inside a polytrope with closed boundaries.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import ClassVar

import numpy as np

from eulerpoisson.problems.base import BoundaryPolicy
from eulerpoisson.problems.equilibrium import PolytropeEquilibrium


class ExplosionScenario(PolytropeEquilibrium):
    """
    rho = sin(lambda r) / (lambda r), p = kappa rho^2 times alpha for r < r1.

    Parameters: gamma, kappa, rho0, G, R, N, t_end, alpha, r1.
    """

    name: ClassVar[str] = "explosion"
    defaults = MappingProxyType(
        {
            **PolytropeEquilibrium.defaults,
            "G": 1.0,
            "R": 0.5,
            "N": 200,
            "t_end": 0.15,
            "alpha": 10.0,
            "r1": 0.1,
        }
    )
    outer_boundary: ClassVar[BoundaryPolicy] = "reflecting"

    def validate(self) -> None:
        super().validate()
        if not self.param("alpha") > 0.0:
            raise ValueError("alpha must be positive")
        if not 0.0 < self.param("r1") <= self.param("R"):
            raise ValueError("r1 must lie in (0, R]")

    def pressure(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        factor = np.where(r < self.param("r1"), self.param("alpha"), 1.0)
        return factor * self.equilibrium_pressure(r)


__all__ = ["ExplosionScenario"]
