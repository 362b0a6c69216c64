# =============================================================================
# EulerPoisson - Mesh Tests
# =============================================================================
#
# Tests cover:
# - Uniform and geometric builders
# - Cell lookup and 1-based midpoints
# - Argument validation
#
# =============================================================================
"""Tests for the radial mesh module."""

from __future__ import annotations

import numpy as np
import pytest

from eulerpoisson.mesh import Mesh, build_geometric, build_uniform


class TestBuildUniform:
    """Test build_uniform."""

    def test_faces(self) -> None:
        """Faces should be equally spaced and end exactly at R."""
        mesh = build_uniform(0.0, 1.0, 4)

        assert mesh.N == 4
        np.testing.assert_allclose(mesh.faces, [0.0, 0.25, 0.5, 0.75, 1.0])
        assert mesh.R == 1.0
        np.testing.assert_allclose(mesh.widths, 0.25)

    def test_offset_domain(self) -> None:
        """r_min should be honoured."""
        mesh = build_uniform(0.5, 1.0, 5)

        assert mesh.r_min == 0.5
        assert mesh.R == 1.0

    @pytest.mark.parametrize("args", [(0.0, 1.0, 0), (1.0, 1.0, 4), (-0.1, 1.0, 4)])
    def test_invalid_arguments(self, args: tuple[float, float, int]) -> None:
        """Bad counts and domains should be rejected."""
        with pytest.raises(ValueError):
            build_uniform(*args)


class TestBuildGeometric:
    """Test build_geometric."""

    def test_doubling_widths(self) -> None:
        """dr_j = a^(j-1) dr1."""
        mesh = build_geometric(0.0, 1.0, 2.0, 3)

        np.testing.assert_allclose(mesh.faces, [0.0, 1.0, 3.0, 7.0], rtol=1e-14)
        np.testing.assert_allclose(mesh.widths, [1.0, 2.0, 4.0], rtol=1e-14)

    def test_unit_rate_is_uniform(self) -> None:
        """a = 1 gives equal cells."""
        mesh = build_geometric(0.0, 0.5, 1.0, 4)

        np.testing.assert_allclose(mesh.widths, 0.5)
        assert mesh.R == pytest.approx(2.0)

    def test_outer_radius_formula(self) -> None:
        """R = r_min + dr1 (a^N - 1) / (a - 1)."""
        mesh = build_geometric(1.0, 0.1, 1.05, 30)

        expected = 1.0 + 0.1 * (1.05**30 - 1.0) / 0.05
        assert mesh.R == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize(("dr1", "N"), [(2.0e5, 128), (1.0e5, 256)])
    def test_collapse_meshes_reach_1500_km(self, dr1: float, N: int) -> None:  # noqa: N803
        """The tabulated collapse meshes end near 1.5e8 cm."""
        a = {128: 1.02292, 256: 1.01136}[N]
        mesh = build_geometric(0.0, dr1, a, N)

        assert mesh.R == pytest.approx(1.5e8, rel=1e-2)

    @pytest.mark.parametrize("args", [(0.0, 0.0, 1.1, 4), (0.0, 1.0, 0.9, 4), (0.0, 1.0, 1.1, 0)])
    def test_invalid_arguments(self, args: tuple[float, float, float, int]) -> None:
        """dr1 <= 0, a < 1 and N < 1 are rejected."""
        with pytest.raises(ValueError):
            build_geometric(*args)


class TestMesh:
    """Test Mesh geometry helpers."""

    def test_locate(self) -> None:
        """Interior faces belong to the right cell, R to the last cell."""
        mesh = build_uniform(0.0, 1.0, 4)

        np.testing.assert_array_equal(mesh.locate(np.array([0.0, 0.1, 0.25, 0.9, 1.0])), [0, 0, 1, 3, 3])

    def test_locate_outside(self) -> None:
        """Radii outside the domain raise IndexError."""
        mesh = build_uniform(0.0, 1.0, 4)

        with pytest.raises(IndexError):
            mesh.locate(1.5)

    def test_cell_midpoint_is_one_based(self) -> None:
        """cell_midpoint(1) is the innermost cell."""
        mesh = build_uniform(0.0, 1.0, 4)

        assert mesh.cell_midpoint(1) == pytest.approx(0.125)
        with pytest.raises(IndexError):
            mesh.cell_midpoint(0)

    def test_faces_must_increase(self) -> None:
        """Non-increasing faces are rejected."""
        with pytest.raises(ValueError):
            Mesh(np.array([0.0, 0.5, 0.5, 1.0]))

    def test_faces_are_read_only(self) -> None:
        """The face array cannot be modified in place."""
        mesh = build_uniform(0.0, 1.0, 4)

        with pytest.raises(ValueError):
            mesh.faces[1] = 0.3
