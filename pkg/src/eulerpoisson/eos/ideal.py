# =============================================================================
# EulerPoisson - Ideal Gas Equation of State
# =============================================================================

"""
Ideal gas, p = (gamma - 1) * rho * e.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from eulerpoisson.eos.base import BaseEos
from eulerpoisson.errors import InvalidStateError


@dataclass(frozen=True)
class IdealGas(BaseEos):
    """
    Ideal gas with a constant ratio of specific heats.

    Attributes:
        gamma: Ratio of specific heats, gamma > 1
    """

    gamma: float

    def __post_init__(self) -> None:
        if not self.gamma > 1.0:
            raise ValueError("gamma must be greater than 1")

    @property
    def name(self) -> str:
        return "ideal"

    def pressure(self, rho: np.ndarray, e: np.ndarray) -> np.ndarray:
        rho = self._checked_density(rho)
        return (self.gamma - 1.0) * rho * np.asarray(e, dtype=float)

    def sound_speed(self, rho: np.ndarray, e: np.ndarray) -> np.ndarray:
        rho = self._checked_density(rho)
        radicand = self.gamma * self.pressure(rho, e) / rho
        if np.any(radicand < 0.0):
            raise InvalidStateError("negative pressure in sound speed")
        return np.sqrt(radicand)

    def internal_energy_density(self, rho: np.ndarray, p: np.ndarray) -> np.ndarray:
        return np.asarray(p, dtype=float) / (self.gamma - 1.0)

    def polytropic_gamma(self, rho: float) -> float:
        return self.gamma
