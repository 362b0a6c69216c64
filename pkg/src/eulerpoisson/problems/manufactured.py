# =============================================================================
# EulerPoisson - Manufactured Solution Scenario
# =============================================================================
#
# Smooth solution far from equilibrium, used for convergence studies:
#
#     rho = exp(t - r) / r^2,   u = 1,   p = 1 / r^2,   gamma = 2
#
# on [0.5, 1] with G = 1 / (4 pi). An extra source w(r, t) makes it an exact
# solution of the Euler-Poisson system. Both ends take the exact solution;
# gravity is anchored at r = 0.5 with dPhi/dr = -4 exp(t - 0.5), Phi = 0.
#
# The mesh does not contain the origin, so the wb scheme uses the fixed
# gamma = 2 polytrope sqrt(2) sin(r / sqrt(2)) / r as its target.
#
# =============================================================================

"""
Manufactured exact solution with an additional source term.
"""

from __future__ import annotations

import math
from functools import cached_property
from types import MappingProxyType
from typing import ClassVar

import numpy as np

from eulerpoisson.eos.base import BaseEos
from eulerpoisson.eos.ideal import IdealGas
from eulerpoisson.mesh import Mesh, build_uniform
from eulerpoisson.poisson import FOUR_PI
from eulerpoisson.problems.base import BoundaryPolicy, Scenario
from eulerpoisson.well_balanced import EquilibriumTarget, ExplicitEquilibrium

SQRT2 = math.sqrt(2.0)


def target_density(r: np.ndarray) -> np.ndarray:
    return SQRT2 * np.sin(np.asarray(r, dtype=float) / SQRT2) / r


def target_pressure(r: np.ndarray) -> np.ndarray:
    return target_density(r) ** 2


def target_inner_dphi(r_min: float, G: float = 1.0 / FOUR_PI) -> float:  # noqa: N803
    """dPhi/dr at r_min of the gravity of target_density."""
    x = r_min / SQRT2
    return FOUR_PI * G * 2.0 * SQRT2 * (math.sin(x) - x * math.cos(x)) / (r_min * r_min)


class ManufacturedScenario(Scenario):
    """Manufactured solution on [r_min, R] with Dirichlet data at both ends."""

    name: ClassVar[str] = "manufactured"
    defaults = MappingProxyType(
        {
            "gamma": 2.0,
            "G": 1.0 / FOUR_PI,
            "r_min": 0.5,
            "R": 1.0,
            "N": 50,
            "t_end": 0.1,
        }
    )
    inner_boundary: ClassVar[BoundaryPolicy] = "dirichlet"
    outer_boundary: ClassVar[BoundaryPolicy] = "dirichlet"
    has_extra_source: ClassVar[bool] = True

    def validate(self) -> None:
        super().validate()
        if not 0.0 < self.param("r_min") < self.param("R"):
            raise ValueError("need 0 < r_min < R")

    @property
    def eos(self) -> BaseEos:
        return IdealGas(self.param("gamma"))

    @cached_property
    def domain(self) -> tuple[float, float]:
        return self.param("r_min"), self.param("R")

    def build_mesh(self, N: int) -> Mesh:  # noqa: N803
        return build_uniform(self.param("r_min"), self.param("R"), N)

    def exact(self, r: np.ndarray, t: float) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        rho = np.exp(t - r) / (r * r)
        p = 1.0 / (r * r)
        ene = p / (self.param("gamma") - 1.0) + 0.5 * rho
        return np.stack([rho, rho, ene])

    def initial_conserved(self, r: np.ndarray) -> np.ndarray:
        return self.exact(r, 0.0)

    def extra_source(self, r: np.ndarray, t: float = 0.0) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        r4 = r**4
        growth = np.exp(2.0 * (t - r))
        return np.stack([np.zeros_like(r), -(growth + 2.0 * r) / r4, -growth / r4])

    def inner_dphi(self, t: float) -> float:
        r_min = self.param("r_min")
        return -math.exp(t - r_min) / (r_min * r_min)

    def inner_phi(self, t: float) -> float:
        return 0.0

    def equilibrium_target(self) -> EquilibriumTarget:
        return ExplicitEquilibrium(
            self.eos,
            self.G,
            target_density,
            target_pressure,
            inner_dphi=target_inner_dphi(self.param("r_min"), self.G),
        )


__all__ = ["ManufacturedScenario", "target_density", "target_pressure", "target_inner_dphi"]
