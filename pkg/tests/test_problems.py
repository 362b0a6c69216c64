# =============================================================================
# EulerPoisson - Scenario Tests
# =============================================================================
#
# Tests cover:
# - Registry lookup and parameter overrides
# - Initial data of the equilibrium, explosion and manufactured setups
# - Ghost states for each boundary policy
# - Collapse meshes and profiles
#
# =============================================================================
"""Tests for the scenario library."""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import ClassVar

import numpy as np
import pytest

from eulerpoisson.errors import InvalidStateError
from eulerpoisson.mesh import Mesh
from eulerpoisson.problems import (
    BoundaryPolicy,
    Scenario,
    available_scenarios,
    extra_source,
    ghost_states,
    make_scenario,
    scenario_class,
)
from eulerpoisson.problems.collapse import TOY_MESHES, TOY_RADIUS, ToyCollapse, geometric_rate
from eulerpoisson.problems.equilibrium import PerturbedEquilibrium, PolytropeEquilibrium


class WalledPerturbation(PerturbedEquilibrium):
    """Perturbed polytrope with Dirichlet data it cannot provide."""

    outer_boundary: ClassVar[BoundaryPolicy] = "dirichlet"


class CountingPolytrope(PolytropeEquilibrium):
    """Polytrope with Dirichlet outer data that counts mesh builds."""

    outer_boundary: ClassVar[BoundaryPolicy] = "dirichlet"
    builds = 0

    def build_mesh(self, N: int) -> Mesh:  # noqa: N803
        self.builds += 1
        return super().build_mesh(N)


class TestRegistry:
    """Test scenario lookup."""

    def test_names(self) -> None:
        """All seven scenarios are registered."""
        assert set(available_scenarios()) == {
            "wb_gamma2",
            "wb_gamma12",
            "perturbation",
            "manufactured",
            "explosion",
            "yahil",
            "toy_collapse",
        }

    @pytest.mark.parametrize("name", ["wb_gamma2", "explosion", "manufactured", "toy_collapse"])
    def test_class_names_match(self, name: str) -> None:
        """Each class carries its registry name."""
        assert scenario_class(name).name == name

    def test_unknown(self) -> None:
        """Unknown names list the available ones."""
        with pytest.raises(ValueError, match="available"):
            make_scenario("sedov")


class TestOverrides:
    """Test parameter overrides."""

    def test_coercion(self) -> None:
        """Strings convert to the default's type."""
        scenario = make_scenario("wb_gamma2", {"N": "40", "kappa": "2"})

        assert scenario.N == 40
        assert scenario.param("kappa") == 2.0

    def test_fractional_int(self) -> None:
        """N does not accept fractions."""
        with pytest.raises(ValueError):
            make_scenario("wb_gamma2", {"N": 2.5})

    def test_unknown_key(self) -> None:
        """Unknown parameters are rejected."""
        with pytest.raises(ValueError, match="unknown parameter"):
            make_scenario("explosion", {"beta": 1.0})

    def test_invalid_range(self) -> None:
        """Range checks run after overrides."""
        with pytest.raises(ValueError):
            make_scenario("wb_gamma2", {"gamma": 0.5})
        with pytest.raises(ValueError):
            make_scenario("explosion", {"r1": 2.0})

    def test_defaults_untouched(self) -> None:
        """Overrides do not leak into the class defaults."""
        make_scenario("wb_gamma2", {"N": 40})

        assert make_scenario("wb_gamma2").N == 200


class TestEquilibria:
    """Test the polytropic setups."""

    def test_gamma2_density(self) -> None:
        """n = 1: rho = sin(r / sqrt 2) / (r / sqrt 2)."""
        scenario = make_scenario("wb_gamma2")
        x = 1.0 / math.sqrt(2.0)

        assert scenario.density(np.array([1.0]))[0] == pytest.approx(math.sin(x) / x, rel=1e-6)

    def test_gamma12_density(self) -> None:
        """n = 5: rho = (1 + r^2 / 18)^(-5 / 2) with G = 1 / (4 pi)."""
        scenario = make_scenario("wb_gamma12")

        assert scenario.density(np.array([1.0]))[0] == pytest.approx(
            (1.0 + 1.0 / 18.0) ** -2.5, rel=1e-6
        )

    def test_perturbation_pressure(self) -> None:
        """The bump adds A at the centre."""
        scenario = make_scenario("perturbation")

        assert scenario.pressure(np.array([0.0]))[0] == pytest.approx(1.0 + 1.0e-6, rel=1e-12)
        assert scenario.outer_boundary == "reflecting"

    def test_exact_only_unperturbed(self) -> None:
        """Only the plain polytrope reports an exact solution."""
        r = np.array([0.1, 0.2])

        assert make_scenario("wb_gamma2").exact(r, 1.0) is not None
        assert make_scenario("perturbation").exact(r, 1.0) is None

    def test_explosion_pressure(self) -> None:
        """Pressure is amplified strictly inside r1."""
        scenario = make_scenario("explosion")
        r = np.array([0.05, 0.1, 0.2])

        ratio = scenario.pressure(r) / scenario.equilibrium_pressure(r)
        np.testing.assert_allclose(ratio, [10.0, 1.0, 1.0])

    def test_initial_state_at_rest(self, gamma2: Scenario) -> None:
        """The projected polytrope has no momentum."""
        state = gamma2.initial_state(gamma2.build_mesh(gamma2.N), 2)

        np.testing.assert_array_equal(state.coeffs[1], 0.0)
        assert float(state.coeffs[0, 0, 0]) > 0.99


class TestManufactured:
    """Test the manufactured solution."""

    def test_exact(self) -> None:
        """rho = e^(t - r) / r^2, u = 1, p = 1 / r^2."""
        scenario = make_scenario("manufactured")
        values = scenario.exact(np.array(1.0), 0.0)

        np.testing.assert_allclose(
            values, [math.exp(-1.0), math.exp(-1.0), 1.0 + 0.5 * math.exp(-1.0)], rtol=1e-14
        )

    def test_extra_source(self) -> None:
        """The forcing at r = 1, t = 0."""
        scenario = make_scenario("manufactured")
        e2 = math.exp(-2.0)

        np.testing.assert_allclose(
            extra_source(scenario, 1.0, 0.0), [0.0, -(e2 + 2.0), -e2], rtol=1e-14
        )

    def test_domain(self) -> None:
        """The shell [0.5, 1]."""
        scenario = make_scenario("manufactured")
        mesh = scenario.build_mesh(scenario.N)

        assert scenario.domain == (0.5, 1.0)
        assert mesh.faces[0] == pytest.approx(0.5)
        assert scenario.has_extra_source

    def test_invalid_shell(self) -> None:
        """r_min must lie inside (0, R)."""
        with pytest.raises(ValueError):
            make_scenario("manufactured", {"r_min": 1.5})


class TestGhostStates:
    """Test boundary ghost states."""

    def test_reflecting(self, gamma2: Scenario) -> None:
        """A wall flips the momentum."""
        ghost = gamma2.ghost_state("inner", np.array([1.0, 0.5, 2.0]), 0.0)

        np.testing.assert_array_equal(ghost, [1.0, -0.5, 2.0])

    def test_symmetric_copy(self, gamma2: Scenario) -> None:
        """The equilibrium's outer end copies the trace."""
        trace = np.array([1.0, 0.5, 2.0])

        np.testing.assert_array_equal(gamma2.ghost_state("outer", trace, 0.0), trace)

    def test_dirichlet(self) -> None:
        """The manufactured outer ghost is the exact solution."""
        scenario = make_scenario("manufactured", {"N": 10})
        state = scenario.initial_state(scenario.build_mesh(10), 2)

        _, ghost = ghost_states(scenario, state, "outer", 0.3)
        np.testing.assert_allclose(ghost, scenario.exact(np.array(1.0), 0.3), rtol=1e-14)

    def test_dirichlet_builds_mesh_once(self) -> None:
        """Repeated Dirichlet ghosts reuse the domain of the first call."""
        scenario = CountingPolytrope({"N": 20})
        trace = np.array([1.0, 0.0, 1.0])

        first = scenario.ghost_state("outer", trace, 0.0)
        second = scenario.ghost_state("outer", trace, 0.5)

        assert scenario.builds == 1
        np.testing.assert_array_equal(first, second)

    def test_dirichlet_without_exact(self) -> None:
        """Dirichlet data needs an exact solution."""
        scenario = WalledPerturbation()

        with pytest.raises(InvalidStateError):
            scenario.ghost_state("outer", np.array([1.0, 0.0, 1.0]), 0.0)

    def test_bad_end(self, gamma2: Scenario) -> None:
        """Only 'inner' and 'outer' exist."""
        with pytest.raises(ValueError):
            gamma2.ghost_state("middle", np.array([1.0, 0.0, 1.0]), 0.0)  # type: ignore[arg-type]


class TestCollapse:
    """Test the collapse scenarios."""

    def test_geometric_rate(self) -> None:
        """1 + 2 + 4 = 7 gives a = 2; an exact fit gives a = 1."""
        assert geometric_rate(1.0, 3, 7.0) == pytest.approx(2.0, rel=1e-10)
        assert geometric_rate(1.0, 4, 4.0) == 1.0

    def test_geometric_rate_too_wide(self) -> None:
        """N dr1 > R has no rate."""
        with pytest.raises(ValueError):
            geometric_rate(1.0, 10, 5.0)

    @pytest.mark.parametrize("N", sorted(TOY_MESHES))
    def test_toy_mesh_tabulated(self, N: int) -> None:  # noqa: N803
        """Tabulated resolutions use their (dr1, a) and end near 1.5e8 cm."""
        dr1, _ = TOY_MESHES[N]
        mesh = ToyCollapse().build_mesh(N)

        assert mesh.N == N
        assert mesh.faces[1] - mesh.faces[0] == pytest.approx(dr1, rel=1e-12)
        assert mesh.faces[-1] == pytest.approx(TOY_RADIUS, rel=1e-2)

    def test_toy_mesh_other_resolution(self) -> None:
        """Non-tabulated N still reaches R."""
        mesh = ToyCollapse().build_mesh(64)

        assert mesh.N == 64
        assert mesh.faces[-1] == pytest.approx(TOY_RADIUS, rel=1e-9)

    def test_toy_starts_cold(self) -> None:
        """The initial internal energy is the polytropic part."""
        scenario = ToyCollapse()
        r = np.linspace(0.0, 1.0e8, 7)
        rho, mom, ene = scenario.initial_conserved(r)

        np.testing.assert_array_equal(mom, 0.0)
        np.testing.assert_allclose(ene, scenario.eos.polytropic_parts(rho)[1], rtol=1e-14)
        assert rho[0] == pytest.approx(1.0e10, rel=1e-12)

    def test_yahil_fallback_warns(self, caplog: pytest.LogCaptureFixture) -> None:
        """No profile file means the power-law profile, with a warning."""
        with caplog.at_level(logging.WARNING):
            scenario = make_scenario("yahil")

        assert "no profile file given" in caplog.text
        rho, u = scenario.density_velocity(np.array([0.0]))
        assert rho[0] == pytest.approx(1.0e9)
        assert u[0] == 0.0

    def test_yahil_profile_file(self, tmp_path: Path) -> None:
        """Profiles are interpolated linearly."""
        path = tmp_path / "yahil.dat"
        path.write_text("# r rho u\n0 10 0\n2 20 -4\n")
        scenario = make_scenario("yahil", {"profile": str(path)})

        rho, u = scenario.density_velocity(np.array([1.0]))
        assert rho[0] == pytest.approx(15.0)
        assert u[0] == pytest.approx(-2.0)

    def test_deterministic(self) -> None:
        """Two builds give identical initial data."""
        first = make_scenario("explosion", {"N": 20})
        second = make_scenario("explosion", {"N": 20})

        np.testing.assert_array_equal(
            first.initial_state(first.build_mesh(20), 2).coeffs,
            second.initial_state(second.build_mesh(20), 2).coeffs,
        )
