# =============================================================================
# EulerPoisson - Base Equation of State
# =============================================================================
#
# Abstract interface every equation of state implements. The solver only
# talks to this interface; IdealGas and HybridEos are the two concrete
# closures.
#
# All methods are vectorized: they accept scalars or numpy arrays and
# broadcast them.
#
# =============================================================================

"""
Abstract base class for equations of state.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from eulerpoisson.errors import InvalidStateError


class BaseEos(ABC):
    """
    Abstract equation of state p(rho, e).

    Subclasses MUST implement:
    - name property
    - pressure(rho, e)
    - sound_speed(rho, e)
    - internal_energy_density(rho, p): the inverse of pressure in e, as rho*e
    - polytropic_gamma(rho): the index used to pick a Lane-Emden profile
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Short lowercase identifier, e.g. "ideal"."""
        ...

    @abstractmethod
    def pressure(self, rho: np.ndarray, e: np.ndarray) -> np.ndarray:
        """Pressure from density and specific internal energy."""
        ...

    @abstractmethod
    def sound_speed(self, rho: np.ndarray, e: np.ndarray) -> np.ndarray:
        """Adiabatic sound speed from density and specific internal energy."""
        ...

    @abstractmethod
    def internal_energy_density(self, rho: np.ndarray, p: np.ndarray) -> np.ndarray:
        """Internal energy per unit volume rho*e giving pressure p at density rho."""
        ...

    @abstractmethod
    def polytropic_gamma(self, rho: float) -> float:
        """Adiabatic index of the polytrope matching the state at density rho."""
        ...

    # -------------------------------------------------------------------------
    # Conserved-variable helpers
    # -------------------------------------------------------------------------

    def specific_energy(self, rho: np.ndarray, mom: np.ndarray, ene: np.ndarray) -> np.ndarray:
        """Specific internal energy e from the conserved triple."""
        rho = self._checked_density(rho)
        return (np.asarray(ene) - 0.5 * np.asarray(mom) ** 2 / rho) / rho

    def pressure_from_conserved(
        self, rho: np.ndarray, mom: np.ndarray, ene: np.ndarray
    ) -> np.ndarray:
        """Pressure from (rho, rho*u, E)."""
        return self.pressure(rho, self.specific_energy(rho, mom, ene))

    def total_energy(self, rho: np.ndarray, u: np.ndarray, p: np.ndarray) -> np.ndarray:
        """Total energy density E from primitive variables."""
        rho = np.asarray(rho, dtype=float)
        u = np.asarray(u, dtype=float)
        return self.internal_energy_density(rho, p) + 0.5 * rho * u * u

    @staticmethod
    def _checked_density(rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=float)
        if np.any(rho <= 0.0):
            raise InvalidStateError("equation of state called with non-positive density")
        return rho

    def __repr__(self) -> str:
        """Return string representation."""
        return f"{self.__class__.__name__}(name={self.name!r})"
