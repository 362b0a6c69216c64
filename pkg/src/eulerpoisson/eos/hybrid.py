# =============================================================================
# EulerPoisson - Hybrid Equation of State
# =============================================================================
#
# Polytropic + thermal closure used by the core-collapse toy model. The
# polytropic part switches index at the nuclear density; the thermal part
# is a gamma-law on whatever internal energy exceeds the polytropic part.
#
#   rho < rho_nuc:   p_p = kappa1 rho^gamma1,  (rho e)_p = E1 rho^gamma1
#   rho >= rho_nuc:  p_p = kappa2 rho^gamma2,  (rho e)_p = E2 rho^gamma2 + E3 rho
#   p = p_p + (gamma_th - 1) * (rho e - (rho e)_p)
#
# =============================================================================

"""
Hybrid polytropic/thermal equation of state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from eulerpoisson.eos.base import BaseEos
from eulerpoisson.errors import InvalidStateError


@dataclass(frozen=True)
class HybridEos(BaseEos):
    """
    Hybrid EoS with a stiffening at nuclear density.

    Attributes:
        kappa: Polytropic constant of the sub-nuclear branch (cgs)
        gamma1: Sub-nuclear index
        gamma2: Super-nuclear index
        gamma_th: Thermal index
        rho_nuc: Nuclear density (g/cm^3)
    """

    kappa: float = 4.897e14
    gamma1: float = 1.325
    gamma2: float = 2.5
    gamma_th: float = 1.5
    rho_nuc: float = 2.0e14

    E1: float = field(init=False)
    E2: float = field(init=False)
    E3: float = field(init=False)
    kappa1: float = field(init=False)
    kappa2: float = field(init=False)

    def __post_init__(self) -> None:
        if self.kappa <= 0.0 or self.rho_nuc <= 0.0:
            raise ValueError("kappa and rho_nuc must be positive")
        if min(self.gamma1, self.gamma2, self.gamma_th) <= 1.0:
            raise ValueError("all indices must be greater than 1")

        e1 = self.kappa / (self.gamma1 - 1.0)
        e2 = self.kappa / (self.gamma2 - 1.0) * self.rho_nuc ** (self.gamma1 - self.gamma2)
        e3 = (self.gamma2 - self.gamma1) / (self.gamma2 - 1.0) * e1 * self.rho_nuc ** (
            self.gamma1 - 1.0
        )
        object.__setattr__(self, "E1", e1)
        object.__setattr__(self, "E2", e2)
        object.__setattr__(self, "E3", e3)
        object.__setattr__(self, "kappa1", self.kappa)
        object.__setattr__(self, "kappa2", (self.gamma2 - 1.0) * e2)

    @property
    def name(self) -> str:
        return "hybrid"

    # -------------------------------------------------------------------------
    # Polytropic and thermal parts
    # -------------------------------------------------------------------------

    def polytropic_parts(self, rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """
        Polytropic pressure and internal energy density at density rho.

        Returns:
            (p_p, (rho e)_p)
        """
        rho = np.asarray(rho, dtype=float)
        if np.any(rho < 0.0):
            raise InvalidStateError("negative density in polytropic part")
        low = rho < self.rho_nuc
        p_low = self.kappa1 * rho**self.gamma1
        p_high = self.kappa2 * rho**self.gamma2
        ue_low = self.E1 * rho**self.gamma1
        ue_high = self.E2 * rho**self.gamma2 + self.E3 * rho
        return np.where(low, p_low, p_high), np.where(low, ue_low, ue_high)

    def polytropic_gamma(self, rho: float) -> float:
        return self.gamma1 if rho < self.rho_nuc else self.gamma2

    def _active_gamma(self, rho: np.ndarray) -> np.ndarray:
        return np.where(rho < self.rho_nuc, self.gamma1, self.gamma2)

    def thermal_pressure(self, rho: np.ndarray, e: np.ndarray) -> np.ndarray:
        """Thermal part (gamma_th - 1) * (rho e - (rho e)_p)."""
        rho = self._checked_density(rho)
        _, ue_p = self.polytropic_parts(rho)
        return (self.gamma_th - 1.0) * (rho * np.asarray(e, dtype=float) - ue_p)

    # -------------------------------------------------------------------------
    # BaseEos interface
    # -------------------------------------------------------------------------

    def pressure(self, rho: np.ndarray, e: np.ndarray) -> np.ndarray:
        rho = self._checked_density(rho)
        p_p, ue_p = self.polytropic_parts(rho)
        return p_p + (self.gamma_th - 1.0) * (rho * np.asarray(e, dtype=float) - ue_p)

    def sound_speed(self, rho: np.ndarray, e: np.ndarray) -> np.ndarray:
        rho = self._checked_density(rho)
        p_p, ue_p = self.polytropic_parts(rho)
        p_th = (self.gamma_th - 1.0) * (rho * np.asarray(e, dtype=float) - ue_p)
        radicand = (self._active_gamma(rho) * p_p + self.gamma_th * p_th) / rho
        if np.any(radicand < 0.0):
            raise InvalidStateError("negative sound speed radicand in hybrid EoS")
        return np.sqrt(radicand)

    def internal_energy_density(self, rho: np.ndarray, p: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=float)
        p_p, ue_p = self.polytropic_parts(rho)
        return ue_p + (np.asarray(p, dtype=float) - p_p) / (self.gamma_th - 1.0)
