# =============================================================================
# EulerPoisson - Collapse Scenarios
# =============================================================================
#
# Two cgs-unit collapse runs on geometrically stretched meshes, with a
# reflecting centre, zeroth-order extrapolation at R and energies carrying
# the 4 pi factor:
#
#   yahil         gamma = 1.3 self-similar collapse, started 150 ms before
#                 the singularity from a profile file (or a power-law
#                 stand-in), stopped when the central density reaches
#                 stop_density
#   toy_collapse  n = 3 polytrope with rho_c = 1e10 whose internal energy is
#                 reset to the gamma1 = 1.325 branch of the hybrid EoS;
#                 collapses, stiffens at nuclear density and bounces
#
# =============================================================================

"""
Self-similar and toy core-collapse scenarios.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping
from types import MappingProxyType
from typing import ClassVar

import numpy as np
from scipy.optimize import brentq

from eulerpoisson.eos.base import BaseEos
from eulerpoisson.eos.hybrid import HybridEos
from eulerpoisson.eos.ideal import IdealGas
from eulerpoisson.lane_emden import eval_theta, get_profile
from eulerpoisson.mesh import Mesh, build_geometric
from eulerpoisson.output import load_profile
from eulerpoisson.poisson import FOUR_PI
from eulerpoisson.problems.base import ParamValue, Scenario

logger = logging.getLogger("eulerpoisson.problems")

G_CGS = 6.67430e-8


def geometric_rate(dr1: float, N: int, R: float) -> float:  # noqa: N803
    """
    Growth rate a with dr1 (a^N - 1) / (a - 1) = R.

    Raises:
        ValueError: If N * dr1 > R (no rate a >= 1 exists)
    """
    if N * dr1 > R:
        raise ValueError(f"N * dr1 = {N * dr1:g} exceeds R = {R:g}")
    if math.isclose(N * dr1, R, rel_tol=1e-14):
        return 1.0

    def excess(a: float) -> float:
        return dr1 * math.expm1(N * math.log(a)) / (a - 1.0) - R

    lower = 1.0 + 1e-12
    upper = 2.0
    while excess(upper) < 0.0:
        upper = 1.0 + 2.0 * (upper - 1.0)
    return float(brentq(excess, lower, upper, xtol=1e-15, rtol=4.0 * np.finfo(float).eps))


# -----------------------------------------------------------------------------
# Yahil Collapse
# -----------------------------------------------------------------------------


class YahilCollapse(Scenario):
    """
    gamma = 1.3 polytropic collapse on a geometric mesh.

    The initial (r, rho, u) come from the file named by the ``profile``
    parameter. With no file a power-law profile of the same asymptotics
    is used:

        rho = rho_c / (1 + x^2)^(1 / (2 - gamma)),
        u   = -u_s x / (1 + x)^(1 + (gamma - 1) / (2 - gamma)),   x = r / r_c
    """

    name: ClassVar[str] = "yahil"
    defaults = MappingProxyType(
        {
            "gamma": 1.3,
            "kappa": 9.54e14,
            "G": G_CGS,
            "dr1": 1.0e5,
            "a": 1.03203,
            "N": 256,
            "t_end": 0.1495,
            "stop_density": 1.0e14,
            "rho_c": 1.0e9,
            "r_c": 3.0e7,
            "u_s": 1.0e7,
            "profile": "",
        }
    )
    four_pi: ClassVar[bool] = True

    def __init__(self, overrides: Mapping[str, ParamValue] | None = None) -> None:
        super().__init__(overrides)
        self._table: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None
        path = str(self.params["profile"])
        if path:
            self._table = load_profile(path)
        else:
            logger.warning(f"{self.name}: no profile file given, using the power-law profile")

    def validate(self) -> None:
        super().validate()
        if not 1.0 < self.param("gamma") < 2.0:
            raise ValueError("yahil gamma must lie in (1, 2)")
        for key in ("kappa", "G", "dr1", "rho_c", "r_c", "stop_density"):
            if not self.param(key) > 0.0:
                raise ValueError(f"{key} must be positive")

    @property
    def eos(self) -> BaseEos:
        return IdealGas(self.param("gamma"))

    @property
    def stop_density(self) -> float:
        return self.param("stop_density")

    def build_mesh(self, N: int) -> Mesh:  # noqa: N803
        return build_geometric(0.0, self.param("dr1"), self.param("a"), N)

    def density_velocity(self, r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        r = np.asarray(r, dtype=float)
        if self._table is not None:
            radii, rho, u = self._table
            return np.interp(r, radii, rho), np.interp(r, radii, u)
        gamma = self.param("gamma")
        x = r / self.param("r_c")
        rho = self.param("rho_c") / (1.0 + x * x) ** (1.0 / (2.0 - gamma))
        u = -self.param("u_s") * x / (1.0 + x) ** (1.0 + (gamma - 1.0) / (2.0 - gamma))
        return rho, u

    def initial_conserved(self, r: np.ndarray) -> np.ndarray:
        rho, u = self.density_velocity(r)
        p = self.param("kappa") * rho ** self.param("gamma")
        return np.stack([rho, rho * u, self.eos.total_energy(rho, u, p)])


# -----------------------------------------------------------------------------
# Toy Core Collapse
# -----------------------------------------------------------------------------

# (dr1, a) for the standard resolutions; other N stretch to the same R
TOY_MESHES: dict[int, tuple[float, float]] = {
    128: (2.0e5, 1.02292),
    256: (1.0e5, 1.01136),
    512: (0.5e5, 1.005659),
    1024: (0.25e5, 1.002823),
    2048: (0.125e5, 1.001410),
}
TOY_RADIUS = 1.5e8


class ToyCollapse(Scenario):
    """
    Core-collapse toy model with the hybrid EoS.

    The initial density is the gamma = 4/3 (n = 3) polytrope with central
    density rho_c; the velocity is zero and the internal energy is that of
    the gamma1 branch, so the thermal part starts at zero.
    """

    name: ClassVar[str] = "toy_collapse"
    defaults = MappingProxyType(
        {
            "rho_c": 1.0e10,
            "kappa": 4.897e14,
            "gamma1": 1.325,
            "gamma2": 2.5,
            "gamma_th": 1.5,
            "rho_nuc": 2.0e14,
            "G": G_CGS,
            "R": TOY_RADIUS,
            "N": 128,
            "t_end": 0.11,
            "window": 2.0e5,
        }
    )
    four_pi: ClassVar[bool] = True

    def validate(self) -> None:
        super().validate()
        for key in ("rho_c", "kappa", "G", "R", "window"):
            if not self.param(key) > 0.0:
                raise ValueError(f"{key} must be positive")

    @property
    def eos(self) -> HybridEos:
        return HybridEos(
            kappa=self.param("kappa"),
            gamma1=self.param("gamma1"),
            gamma2=self.param("gamma2"),
            gamma_th=self.param("gamma_th"),
            rho_nuc=self.param("rho_nuc"),
        )

    @property
    def central_window(self) -> float:
        return self.param("window")

    @property
    def length_scale(self) -> float:
        """Radius unit of the n = 3 equilibrium."""
        rho_c = self.param("rho_c")
        return math.sqrt(4.0 * self.param("kappa") * rho_c ** (-2.0 / 3.0) / (FOUR_PI * self.G))

    def build_mesh(self, N: int) -> Mesh:  # noqa: N803
        R = self.param("R")  # noqa: N806
        if N in TOY_MESHES and R == TOY_RADIUS:
            dr1, a = TOY_MESHES[N]
        else:
            dr1 = TOY_MESHES[128][0] * 128 / N * R / TOY_RADIUS
            a = geometric_rate(dr1, N, R)
        return build_geometric(0.0, dr1, a, N)

    def initial_conserved(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        theta, _ = eval_theta(get_profile(3.0), r / self.length_scale)
        rho = self.param("rho_c") * np.maximum(theta, 0.0) ** 3
        _, internal = self.eos.polytropic_parts(rho)
        return np.stack([rho, np.zeros_like(rho), internal])


__all__ = ["G_CGS", "geometric_rate", "YahilCollapse", "ToyCollapse", "TOY_MESHES"]
