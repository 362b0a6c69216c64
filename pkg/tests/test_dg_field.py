# =============================================================================
# EulerPoisson - DG Field Tests
# =============================================================================
#
# Tests cover:
# - Gauss-Radau projection exactness and left-face interpolation
# - Mass matrices and r^2 integration
# - Shifted monomial form
# - Field shape and index validation
#
# =============================================================================
"""Tests for DG spaces and fields."""

from __future__ import annotations

import numpy as np
import pytest

from eulerpoisson.dg_field import (
    DGField,
    DGSpace,
    Quadrature,
    StateField,
    integrate_weighted,
    project_gauss_radau,
    to_monomial,
)
from eulerpoisson.mesh import Mesh, build_uniform


def quadratic(r: np.ndarray) -> np.ndarray:
    return 1.0 + 2.0 * r + 3.0 * r**2


class TestQuadrature:
    """Test Quadrature."""

    def test_integrates_polynomial(self) -> None:
        """A 2-point rule is exact for cubics."""
        quad = Quadrature.gauss_legendre(2)

        assert quad.integrate(lambda x: x**3 + x**2) == pytest.approx(2.0 / 3.0, rel=1e-14)

    def test_for_degree(self) -> None:
        """for_degree picks the smallest exact rule."""
        assert Quadrature.for_degree(5).q == 3

    def test_needs_points(self) -> None:
        """Zero points is rejected."""
        with pytest.raises(ValueError):
            Quadrature.gauss_legendre(0)


class TestProjection:
    """Test project_gauss_radau."""

    def test_polynomial_reproduced(self, space: DGSpace) -> None:
        """Polynomials of degree <= k are projected exactly."""
        field = project_gauss_radau(quadratic, space)
        r = np.linspace(0.0, 1.0, 37)

        np.testing.assert_allclose(field.eval(r), quadratic(r), atol=1e-12)

    def test_left_face_interpolated(self, space: DGSpace) -> None:
        """The projection matches f at every left face."""
        field = project_gauss_radau(np.exp, space)

        np.testing.assert_allclose(
            space.left_traces(field.coeffs), np.exp(space.mesh.faces[:-1]), rtol=1e-13
        )

    def test_needs_degree_one(self, unit_mesh: Mesh) -> None:
        """k = 0 has no Gauss-Radau projection."""
        with pytest.raises(ValueError):
            project_gauss_radau(quadratic, DGSpace(unit_mesh, 0))

    def test_eval_outside_domain(self, space: DGSpace) -> None:
        """Evaluation outside the mesh raises IndexError."""
        field = project_gauss_radau(quadratic, space)

        with pytest.raises(IndexError):
            field.eval(1.1)


class TestSpaceIntegrals:
    """Test mass matrices and integrals."""

    def test_mass_inverse(self, space: DGSpace) -> None:
        """mass_inv inverts mass cell by cell."""
        identity = np.einsum("nab,nbc->nac", space.mass, space.mass_inv)

        np.testing.assert_allclose(identity, np.broadcast_to(np.eye(3), identity.shape), atol=1e-9)

    def test_volume(self, space: DGSpace) -> None:
        """The r^2 integral of 1 is the shell volume over 4 pi."""
        faces = space.mesh.faces
        volumes = space.cell_integrals_r2(np.ones_like(space.r_nodes))

        np.testing.assert_allclose(volumes, (faces[1:] ** 3 - faces[:-1] ** 3) / 3.0, rtol=1e-13)

    def test_solve_mass_recovers_projection(self, space: DGSpace) -> None:
        """M^{-1} of the tested nodes gives back the coefficients."""
        coeffs = space.project_coeffs(quadratic)
        residual = space.test_r2(space.nodes(coeffs))

        np.testing.assert_allclose(space.solve_mass(residual), coeffs, rtol=1e-10, atol=1e-12)

    def test_integrate_weighted(self, space: DGSpace) -> None:
        """Single-cell and all-cell integrals agree."""
        totals = integrate_weighted(space, lambda r: r)

        assert isinstance(totals, np.ndarray)
        assert integrate_weighted(space, lambda r: r, 3) == pytest.approx(totals[2])
        assert float(np.sum(totals)) == pytest.approx(0.25, rel=1e-13)


class TestMonomials:
    """Test the monomial conversions."""

    def test_shifted(self, space: DGSpace) -> None:
        """Coefficients in (r - r_left) follow Taylor's formula."""
        field = project_gauss_radau(quadratic, space)
        r_left = space.mesh.faces[4]

        np.testing.assert_allclose(
            to_monomial(field, 5, shifted=True),
            [quadratic(np.array(r_left)), 2.0 + 6.0 * r_left, 3.0],
            rtol=1e-10,
        )

    def test_absolute(self, space: DGSpace) -> None:
        """Absolute powers recover 1 + 2r + 3r^2."""
        field = project_gauss_radau(quadratic, space)

        np.testing.assert_allclose(to_monomial(field, 7), [1.0, 2.0, 3.0], rtol=1e-9)


class TestFields:
    """Test DGField and StateField."""

    def test_shape_checked(self, space: DGSpace) -> None:
        """Wrong coefficient shape is rejected."""
        with pytest.raises(ValueError):
            DGField(space, np.zeros((space.N, 2)))

    def test_one_based_traces(self, space: DGSpace) -> None:
        """Cells are numbered from 1."""
        field = project_gauss_radau(quadratic, space)

        assert field.trace_left(1) == pytest.approx(1.0)
        assert field.trace_right(space.N) == pytest.approx(6.0)
        with pytest.raises(IndexError):
            field.trace_left(0)

    def test_state_components(self, space: DGSpace) -> None:
        """StateField exposes its three components."""
        rho = project_gauss_radau(quadratic, space)
        state = StateField.from_fields(rho, DGField.zeros(space), rho.copy())

        np.testing.assert_array_equal(state.rho.coeffs, rho.coeffs)
        np.testing.assert_array_equal(state.mom.coeffs, 0.0)

    def test_state_requires_one_space(self, space: DGSpace) -> None:
        """Components on different spaces are rejected."""
        other = DGSpace(build_uniform(0.0, 1.0, 10), 2)

        with pytest.raises(ValueError):
            StateField.from_fields(DGField.zeros(space), DGField.zeros(other), DGField.zeros(space))

    def test_copy_is_independent(self, space: DGSpace) -> None:
        """Copies do not share storage."""
        state = StateField.zeros(space)
        clone = state.copy()
        clone.coeffs[0, 0, 0] = 1.0

        assert state.coeffs[0, 0, 0] == 0.0
