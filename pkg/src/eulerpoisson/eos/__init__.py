# =============================================================================
# EulerPoisson - Equations of State Package
# =============================================================================
#
# The solver is closed by exactly two equations of state:
# - IdealGas: p = (gamma - 1) rho e
# - HybridEos: polytropic + thermal closure of the core-collapse toy model
#
# =============================================================================

"""
Equations of state.
"""

from __future__ import annotations

from eulerpoisson.eos.base import BaseEos
from eulerpoisson.eos.hybrid import HybridEos
from eulerpoisson.eos.ideal import IdealGas

__all__ = [
    "BaseEos",
    "IdealGas",
    "HybridEos",
]
