# =============================================================================
# EulerPoisson - Equation of State Tests
# =============================================================================
#
# Tests cover:
# - Ideal gas pressure, sound speed and inverse
# - Hybrid EoS continuity at nuclear density
# - Zero thermal pressure on the polytropic branch
# - Density guards
#
# =============================================================================
"""Tests for the equation-of-state package."""

from __future__ import annotations

import math

import numpy as np
import pytest

from eulerpoisson.eos import HybridEos, IdealGas
from eulerpoisson.errors import InvalidStateError


class TestIdealGas:
    """Test IdealGas."""

    def test_pressure_and_sound_speed(self) -> None:
        """p = (gamma - 1) rho e and c = sqrt(gamma p / rho)."""
        eos = IdealGas(2.0)

        assert eos.pressure(1.0, 1.5) == pytest.approx(1.5)
        assert eos.sound_speed(1.0, 1.5) == pytest.approx(math.sqrt(3.0))

    def test_internal_energy_inverts_pressure(self) -> None:
        """internal_energy_density undoes pressure."""
        eos = IdealGas(1.4)
        rho = np.array([0.5, 1.0, 2.0])
        p = np.array([0.1, 1.0, 3.0])

        e = eos.internal_energy_density(rho, p) / rho
        np.testing.assert_allclose(eos.pressure(rho, e), p, rtol=1e-14)

    def test_total_energy(self) -> None:
        """E = p / (gamma - 1) + rho u^2 / 2."""
        eos = IdealGas(2.0)

        assert eos.total_energy(1.0, 2.0, 1.0) == pytest.approx(3.0)

    def test_pressure_from_conserved(self) -> None:
        """Kinetic energy is removed before the EoS call."""
        eos = IdealGas(2.0)

        assert eos.pressure_from_conserved(1.0, 2.0, 3.0) == pytest.approx(1.0)

    def test_gamma_must_exceed_one(self) -> None:
        """gamma <= 1 is rejected."""
        with pytest.raises(ValueError):
            IdealGas(1.0)

    def test_non_positive_density(self) -> None:
        """rho <= 0 is an invalid state."""
        eos = IdealGas(2.0)

        with pytest.raises(InvalidStateError):
            eos.pressure(np.array([1.0, 0.0]), np.array([1.0, 1.0]))

    def test_polytropic_gamma(self) -> None:
        """The matching polytrope uses gamma itself."""
        assert IdealGas(1.3).polytropic_gamma(5.0) == 1.3


class TestHybridEos:
    """Test HybridEos."""

    def test_defaults(self) -> None:
        """Default collapse parameters."""
        eos = HybridEos()

        assert eos.kappa == pytest.approx(4.897e14)
        assert eos.gamma1 == 1.325
        assert eos.gamma2 == 2.5
        assert eos.gamma_th == 1.5
        assert eos.rho_nuc == 2.0e14

    def test_polytropic_parts_continuous(self) -> None:
        """Pressure and energy density match across rho_nuc."""
        eos = HybridEos()
        below = eos.rho_nuc * (1.0 - 1.0e-13)
        p, ue = eos.polytropic_parts(np.array([below, eos.rho_nuc]))

        assert p[1] == pytest.approx(p[0], rel=1e-10)
        assert ue[1] == pytest.approx(ue[0], rel=1e-10)

    def test_low_branch(self) -> None:
        """Below nuclear density p_p = kappa rho^gamma1."""
        eos = HybridEos()
        rho = 1.0e10
        p, ue = eos.polytropic_parts(rho)

        assert p == pytest.approx(eos.kappa * rho**1.325, rel=1e-14)
        assert ue == pytest.approx(eos.kappa * rho**1.325 / 0.325, rel=1e-14)

    @pytest.mark.parametrize("rho", [1.0e9, 1.0e14, 5.0e14])
    def test_zero_thermal_on_polytrope(self, rho: float) -> None:
        """The polytropic energy carries no thermal pressure."""
        eos = HybridEos()
        p_p, ue_p = eos.polytropic_parts(rho)

        assert abs(eos.thermal_pressure(rho, ue_p / rho)) <= 1e-12 * p_p
        assert eos.pressure(rho, ue_p / rho) == pytest.approx(p_p, rel=1e-12)

    def test_cold_sound_speed(self) -> None:
        """Without thermal part c^2 = gamma_i p_p / rho."""
        eos = HybridEos()
        rho = 1.0e12
        p_p, ue_p = eos.polytropic_parts(rho)

        assert eos.sound_speed(rho, ue_p / rho) == pytest.approx(
            math.sqrt(1.325 * p_p / rho), rel=1e-12
        )

    def test_internal_energy_inverts_pressure(self) -> None:
        """internal_energy_density undoes pressure on both branches."""
        eos = HybridEos()
        rho = np.array([1.0e11, 3.0e14])
        p = 2.0 * eos.polytropic_parts(rho)[0]

        e = eos.internal_energy_density(rho, p) / rho
        np.testing.assert_allclose(eos.pressure(rho, e), p, rtol=1e-12)

    def test_polytropic_gamma(self) -> None:
        """The active index switches at rho_nuc."""
        eos = HybridEos()

        assert eos.polytropic_gamma(1.0e10) == 1.325
        assert eos.polytropic_gamma(3.0e14) == 2.5

    @pytest.mark.parametrize("kwargs", [{"kappa": -1.0}, {"gamma1": 1.0}, {"rho_nuc": 0.0}])
    def test_invalid_parameters(self, kwargs: dict[str, float]) -> None:
        """Non-physical parameters are rejected."""
        with pytest.raises(ValueError):
            HybridEos(**kwargs)
