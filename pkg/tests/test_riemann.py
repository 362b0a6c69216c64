# =============================================================================
# EulerPoisson - Riemann Solver Tests
# =============================================================================
#
# Tests cover:
# - Consistency with the physical flux
# - Upwinding for supersonic states
# - Zero mass flux across a mirrored wall state
# - HLL fallback
#
# =============================================================================
"""Tests for the HLLC flux."""

from __future__ import annotations

import numpy as np
import pytest

from eulerpoisson.eos import IdealGas
from eulerpoisson.riemann import PrimState, hll, hllc, physical_flux, star_region

EOS = IdealGas(1.4)


def conserved(rho: float, u: float, p: float) -> np.ndarray:
    return PrimState(rho, u, p, float(EOS.total_energy(rho, u, p))).conserved()[:, None]


class TestPhysicalFlux:
    """Test physical_flux."""

    def test_values(self) -> None:
        """(rho u, rho u^2 + p, (E + p) u)."""
        state = conserved(2.0, 3.0, 1.0)
        flux = physical_flux(state, np.array([1.0]))

        energy = 1.0 / 0.4 + 0.5 * 2.0 * 9.0
        np.testing.assert_allclose(flux[:, 0], [6.0, 19.0, (energy + 1.0) * 3.0])


class TestHllc:
    """Test hllc."""

    @pytest.mark.parametrize("prim", [(1.0, 0.0, 1.0), (0.3, -2.0, 0.1), (5.0, 0.7, 40.0)])
    def test_consistency(self, prim: tuple[float, float, float]) -> None:
        """Identical sides give the physical flux."""
        state = conserved(*prim)
        flux = hllc(state, state, EOS)

        np.testing.assert_allclose(flux, physical_flux(state, np.array([prim[2]])), rtol=1e-13, atol=1e-14)

    def test_supersonic_right(self) -> None:
        """All waves moving right pick the left flux."""
        left = conserved(1.0, 10.0, 1.0)
        right = conserved(0.5, 10.0, 0.5)

        np.testing.assert_allclose(hllc(left, right, EOS), physical_flux(left, np.array([1.0])))

    def test_supersonic_left(self) -> None:
        """All waves moving left pick the right flux."""
        left = conserved(1.0, -10.0, 1.0)
        right = conserved(0.5, -10.0, 0.5)

        np.testing.assert_allclose(hllc(left, right, EOS), physical_flux(right, np.array([0.5])))

    def test_mirrored_wall(self) -> None:
        """A mirrored pair has a stationary contact and no mass flux."""
        left = conserved(1.0, 0.3, 1.0)
        right = conserved(1.0, -0.3, 1.0)

        star = star_region(left, right, EOS)
        flux = hllc(left, right, EOS)
        assert star.s_star[0] == 0.0
        assert abs(flux[0, 0]) < 1e-14
        assert abs(flux[2, 0]) < 1e-14
        assert flux[1, 0] > 1.0

    def test_sod(self) -> None:
        """The Sod pair pushes mass to the right."""
        flux = hllc(conserved(1.0, 0.0, 1.0), conserved(0.125, 0.0, 0.1), EOS)

        assert np.all(np.isfinite(flux))
        assert flux[0, 0] > 0.0

    def test_vectorised(self) -> None:
        """Several faces are solved at once."""
        left = np.hstack([conserved(1.0, 0.0, 1.0), conserved(2.0, 1.0, 3.0)])
        flux = hllc(left, left, EOS)

        assert flux.shape == (3, 2)

    @pytest.mark.parametrize("wave", ["s_left", "s_star", "s_right"])
    def test_continuous_across_wave(self, wave: str) -> None:
        """Boosting a wave speed through zero leaves the flux continuous."""
        star = star_region(conserved(1.0, 0.0, 1.0), conserved(0.125, 0.0, 0.1), EOS)
        speed = float(getattr(star, wave)[0])

        def boosted(w: float) -> np.ndarray:
            return hllc(conserved(1.0, w, 1.0), conserved(0.125, w, 0.1), EOS)

        np.testing.assert_allclose(
            boosted(-speed - 1e-13), boosted(-speed + 1e-13), rtol=0.0, atol=1e-10
        )


class TestHll:
    """Test hll."""

    def test_collapsed_fan(self) -> None:
        """Equal signal speeds fall back to the central average."""
        left = np.array([[1.0], [0.0], [1.0]])
        right = np.array([[2.0], [0.0], [2.0]])
        f_l = np.array([[0.0], [1.0], [0.0]])
        f_r = np.array([[0.0], [3.0], [0.0]])

        flux = hll(left, right, f_l, f_r, np.array([1.0]), np.array([1.0]))
        np.testing.assert_allclose(flux[:, 0], [0.0, 2.0, 0.0])
