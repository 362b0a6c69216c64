# =============================================================================
# EulerPoisson - Spatial Operator Tests
# =============================================================================
#
# Tests cover:
# - Scheme variant flags
# - Residual of a uniform flow without gravity
# - Variant toggles changing only their own terms
# - State checks and tec source validation
#
# =============================================================================
"""Tests for the semi-discrete operator."""

from __future__ import annotations

import numpy as np
import pytest

from eulerpoisson.dg_field import DGField, DGSpace, StateField
from eulerpoisson.errors import SolverAbortError
from eulerpoisson.eos import IdealGas
from eulerpoisson.mesh import build_uniform
from eulerpoisson.poisson import solve_gravity_coeffs
from eulerpoisson.problems import Scenario
from eulerpoisson.spatial import (
    SchemeVariant,
    SpatialOperator,
    check_state,
    source_energy_standard,
    source_energy_tec,
)

from .conftest import UniformFlow


class TestSchemeVariant:
    """Test SchemeVariant.from_name."""

    def test_wb(self) -> None:
        """wb switches every term on."""
        variant = SchemeVariant.from_name("wb")

        assert variant.well_balanced and variant.energy_conserving and variant.limiter_correction

    def test_standard(self) -> None:
        """standard switches every term off."""
        variant = SchemeVariant.from_name("standard")

        assert not (variant.well_balanced or variant.energy_conserving or variant.limiter_correction)

    def test_standard_corrected(self) -> None:
        """standard_corrected only adds the limiter energy correction."""
        variant = SchemeVariant.from_name("standard_corrected")

        assert variant.limiter_correction
        assert not variant.well_balanced
        assert not variant.energy_conserving

    def test_unknown(self) -> None:
        """Unknown names are rejected."""
        with pytest.raises(ValueError, match="unknown scheme"):
            SchemeVariant.from_name("upwind")


class TestUniformFlow:
    """Test the residual of a constant state."""

    def test_geometric_residual(self, uniform_flow: UniformFlow) -> None:
        """Only the spherical divergence terms remain."""
        state = uniform_flow.initial_state(uniform_flow.build_mesh(8), 2)
        space = state.space
        op = SpatialOperator(space, uniform_flow, SchemeVariant.from_name("standard"))
        residual = op.evaluate(state, 0.0).residual
        r = space.r_nodes

        energy = 1.0 / 0.4 + 0.125
        np.testing.assert_allclose(residual[0], space.test_dr(-2.0 * r * 0.5), atol=1e-12)
        np.testing.assert_allclose(residual[1], space.test_dr(-2.0 * r * 0.25), atol=1e-12)
        np.testing.assert_allclose(
            residual[2], space.test_dr(-2.0 * r * (energy + 1.0) * 0.5), atol=1e-12
        )

    def test_face_fluxes_physical(self, uniform_flow: UniformFlow) -> None:
        """Every face carries the physical flux of the constant state."""
        state = uniform_flow.initial_state(uniform_flow.build_mesh(8), 2)
        op = SpatialOperator(state.space, uniform_flow, SchemeVariant.from_name("wb"))
        faces = op.evaluate(state, 0.0).faces

        np.testing.assert_allclose(faces.mass_flux, 0.5, rtol=1e-13)
        np.testing.assert_allclose(faces.flux[1], 1.25, rtol=1e-13)


class TestVariantToggles:
    """Test that scheme flags only touch their own terms."""

    def test_limiter_flag_leaves_residual(self, explosion: Scenario) -> None:
        """standard and standard_corrected share the spatial residual."""
        state = explosion.initial_state(explosion.build_mesh(explosion.N), 2)
        plain = SpatialOperator(state.space, explosion, SchemeVariant.from_name("standard"))
        corrected = SpatialOperator(
            state.space, explosion, SchemeVariant.from_name("standard_corrected")
        )

        np.testing.assert_array_equal(
            plain.evaluate(state, 0.0).residual, corrected.evaluate(state, 0.0).residual
        )

    def test_energy_flag_drops_source(self, explosion: Scenario) -> None:
        """The energy-conserving form only removes the energy source."""
        state = explosion.initial_state(explosion.build_mesh(explosion.N), 2)
        state.coeffs[1] = 0.1 * state.coeffs[0]
        standard = SpatialOperator(state.space, explosion, SchemeVariant.from_name("standard"))
        conserving = SpatialOperator(
            state.space, explosion, SchemeVariant("conserving", False, True, False)
        )
        plain = standard.evaluate(state, 0.0)
        split = conserving.evaluate(state, 0.0)

        np.testing.assert_array_equal(plain.residual[:2], split.residual[:2])
        np.testing.assert_allclose(
            plain.residual[2] - split.residual[2],
            source_energy_standard(state, plain.gravity),
            rtol=1e-10,
            atol=1e-13,
        )


class TestCheckState:
    """Test check_state."""

    def test_negative_density(self) -> None:
        """The first cell with rho <= 0 is named."""
        state = StateField.zeros(DGSpace(build_uniform(0.0, 1.0, 5), 1))
        state.coeffs[0, :, 0] = 1.0
        state.coeffs[2, :, 0] = 1.0
        state.coeffs[0, 3, 0] = -0.5

        with pytest.raises(SolverAbortError) as excinfo:
            check_state(state, IdealGas(2.0))
        assert excinfo.value.cell == 3

    def test_nan(self, gamma2_state: StateField) -> None:
        """NaN anywhere aborts."""
        state = gamma2_state.copy()
        state.coeffs[1, 7, 1] = np.nan

        with pytest.raises(SolverAbortError, match="non-finite"):
            check_state(state, IdealGas(2.0))

    def test_valid_state(self, gamma2_state: StateField) -> None:
        """The equilibrium passes."""
        check_state(gamma2_state, IdealGas(2.0))


class TestSourceEnergyTec:
    """Test source_energy_tec argument checks."""

    def test_flux_shape(self, gamma2_state: StateField) -> None:
        """The mass flux needs one value per face."""
        space = gamma2_state.space
        gravity = solve_gravity_coeffs(space, gamma2_state.coeffs[0], 1.0)

        with pytest.raises(ValueError, match="mass flux shape"):
            source_energy_tec(gamma2_state, np.zeros(space.N), DGField.zeros(space), gravity)

    def test_zero_motion(self, gamma2_state: StateField) -> None:
        """No flux, increment or momentum gives no source."""
        space = gamma2_state.space
        gravity = solve_gravity_coeffs(space, gamma2_state.coeffs[0], 1.0)

        source = source_energy_tec(
            gamma2_state, np.zeros(space.N + 1), DGField.zeros(space), gravity
        )
        np.testing.assert_array_equal(source, 0.0)
