# =============================================================================
# EulerPoisson - Polytrope Equilibrium Scenarios
# =============================================================================
#
# Hydrostatic polytropes rho = rho0 theta_n(r / alpha), p = kappa rho^gamma
# at rest, with a reflecting centre and a copy condition at R:
#
#   wb_gamma2     gamma = 2,   rho = sqrt(2) sin(r / sqrt(2)) / r
#   wb_gamma12    gamma = 1.2, rho = (1 + r^2 / 18)^(-5/2)
#   perturbation  gamma = 2 on [0, 0.5] with p += A exp(-100 r^2)
#
# =============================================================================

"""
Equilibrium and near-equilibrium polytrope scenarios.
"""

from __future__ import annotations

import math
from types import MappingProxyType
from typing import ClassVar

import numpy as np

from eulerpoisson.eos.base import BaseEos
from eulerpoisson.eos.ideal import IdealGas
from eulerpoisson.lane_emden import eval_theta, get_profile
from eulerpoisson.mesh import Mesh, build_uniform
from eulerpoisson.poisson import FOUR_PI
from eulerpoisson.problems.base import BoundaryPolicy, Scenario


class PolytropeEquilibrium(Scenario):
    """
    Polytrope at rest on a uniform mesh over [0, R].

    Parameters: gamma, kappa, rho0, G, R, N, t_end.
    """

    name: ClassVar[str] = "wb_gamma2"
    defaults = MappingProxyType(
        {
            "gamma": 2.0,
            "kappa": 1.0,
            "rho0": 1.0,
            "G": 1.0 / FOUR_PI,
            "R": 1.0,
            "N": 200,
            "t_end": 4.0,
        }
    )
    outer_boundary: ClassVar[BoundaryPolicy] = "symmetric_copy"

    def validate(self) -> None:
        super().validate()
        if not self.param("gamma") > 1.0:
            raise ValueError("gamma must exceed 1")
        for key in ("kappa", "rho0", "G", "R"):
            if not self.param(key) > 0.0:
                raise ValueError(f"{key} must be positive")

    @property
    def eos(self) -> BaseEos:
        return IdealGas(self.param("gamma"))

    @property
    def polytropic_index(self) -> float:
        return 1.0 / (self.param("gamma") - 1.0)

    @property
    def length_scale(self) -> float:
        """Length scale of the polytrope."""
        gamma = self.param("gamma")
        kappa = self.param("kappa")
        rho0 = self.param("rho0")
        return math.sqrt(
            gamma / (gamma - 1.0) * kappa * rho0 ** (gamma - 2.0) / (FOUR_PI * self.G)
        )

    def build_mesh(self, N: int) -> Mesh:  # noqa: N803
        return build_uniform(0.0, self.param("R"), N)

    def density(self, r: np.ndarray) -> np.ndarray:
        profile = get_profile(self.polytropic_index)
        theta, _ = eval_theta(profile, np.asarray(r, dtype=float) / self.length_scale)
        return self.param("rho0") * np.maximum(theta, 0.0) ** self.polytropic_index

    def equilibrium_pressure(self, r: np.ndarray) -> np.ndarray:
        return self.param("kappa") * self.density(r) ** self.param("gamma")

    def pressure(self, r: np.ndarray) -> np.ndarray:
        return self.equilibrium_pressure(r)

    def initial_conserved(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        rho = self.density(r)
        ene = self.eos.internal_energy_density(rho, self.pressure(r))
        return np.stack([rho, np.zeros_like(rho), ene])

    def exact(self, r: np.ndarray, t: float) -> np.ndarray | None:
        """The equilibrium itself (only exact while unperturbed)."""
        if type(self).pressure is not PolytropeEquilibrium.pressure:
            return None
        return self.initial_conserved(r)


class Gamma12Equilibrium(PolytropeEquilibrium):
    """The gamma = 1.2 (n = 5) polytrope."""

    name: ClassVar[str] = "wb_gamma12"
    defaults = MappingProxyType({**PolytropeEquilibrium.defaults, "gamma": 1.2})


class PerturbedEquilibrium(PolytropeEquilibrium):
    """
    gamma = 2 polytrope with a Gaussian pressure bump of amplitude A.

    The outer end at R = 0.5 is a wall.
    """

    name: ClassVar[str] = "perturbation"
    defaults = MappingProxyType(
        {**PolytropeEquilibrium.defaults, "R": 0.5, "N": 100, "t_end": 0.2, "A": 1.0e-6}
    )
    outer_boundary: ClassVar[BoundaryPolicy] = "reflecting"

    def pressure(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return self.equilibrium_pressure(r) + self.param("A") * np.exp(-100.0 * r * r)


__all__ = ["PolytropeEquilibrium", "Gamma12Equilibrium", "PerturbedEquilibrium"]
