# =============================================================================
# EulerPoisson - Test Configuration
# =============================================================================

"""Pytest configuration and fixtures for EulerPoisson tests."""

from __future__ import annotations

from types import MappingProxyType
from typing import ClassVar

import numpy as np
import pytest

from eulerpoisson.dg_field import DGSpace, StateField
from eulerpoisson.eos.base import BaseEos
from eulerpoisson.eos.ideal import IdealGas
from eulerpoisson.mesh import Mesh, build_uniform
from eulerpoisson.problems import Scenario, make_scenario
from eulerpoisson.problems.base import BoundaryPolicy
from eulerpoisson.well_balanced import EquilibriumTarget, NoEquilibrium


class UniformFlow(Scenario):
    """Constant state rho = 1, u = 0.5, p = 1 on [1, 2] without gravity."""

    name: ClassVar[str] = "uniform_flow"
    defaults = MappingProxyType({"G": 0.0, "N": 8, "t_end": 1.0})
    inner_boundary: ClassVar[BoundaryPolicy] = "extrapolate"
    outer_boundary: ClassVar[BoundaryPolicy] = "extrapolate"

    @property
    def eos(self) -> BaseEos:
        return IdealGas(1.4)

    def build_mesh(self, N: int) -> Mesh:  # noqa: N803
        return build_uniform(1.0, 2.0, N)

    def initial_conserved(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        rho = np.ones_like(r)
        u = 0.5 * rho
        return np.stack([rho, rho * u, self.eos.total_energy(rho, u, rho)])

    def inner_dphi(self, t: float) -> float:
        return 0.0

    def equilibrium_target(self) -> EquilibriumTarget:
        return NoEquilibrium()


@pytest.fixture
def unit_mesh() -> Mesh:
    """Ten uniform cells on [0, 1]."""
    return build_uniform(0.0, 1.0, 10)


@pytest.fixture
def space(unit_mesh: Mesh) -> DGSpace:
    """Quadratic space on the unit mesh."""
    return DGSpace(unit_mesh, 2)


@pytest.fixture
def uniform_flow() -> UniformFlow:
    return UniformFlow()


@pytest.fixture
def gamma2() -> Scenario:
    """gamma = 2 polytrope on a coarse mesh."""
    return make_scenario("wb_gamma2", {"N": 20})


@pytest.fixture
def gamma2_state(gamma2: Scenario) -> StateField:
    """Projected gamma = 2 equilibrium with k = 2."""
    return gamma2.initial_state(gamma2.build_mesh(gamma2.N), 2)


@pytest.fixture
def explosion() -> Scenario:
    """Explosion setup on a coarse mesh."""
    return make_scenario("explosion", {"N": 40})
