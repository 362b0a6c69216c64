# =============================================================================
# EulerPoisson - Radial Mesh Module
# =============================================================================
#
# One-dimensional radial meshes over [r_min, R]. The face list is stored
# explicitly and every other module reads geometry from it.
#
# Usage:
#     from eulerpoisson.mesh import build_uniform, build_geometric
#
#     mesh = build_uniform(0.0, 1.0, 200)
#     collapse_mesh = build_geometric(0.0, 2.0e5, 1.02292, 128)
#
# =============================================================================

"""
Uniform and geometrically stretched radial meshes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Mesh:
    """
    Radial mesh defined by its ordered face radii.

    Attributes:
        faces: N+1 strictly increasing face radii r_{j-1/2}
    """

    faces: np.ndarray
    widths: np.ndarray = field(init=False, repr=False)
    midpoints: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        faces = np.asarray(self.faces, dtype=float)
        if faces.ndim != 1 or faces.size < 2:
            raise ValueError("a mesh needs at least two faces")
        if faces[0] < 0.0:
            raise ValueError("r_min must be non-negative")
        widths = np.diff(faces)
        if np.any(widths <= 0.0):
            raise ValueError("faces must be strictly increasing")
        faces.setflags(write=False)
        widths.setflags(write=False)
        midpoints = 0.5 * (faces[:-1] + faces[1:])
        midpoints.setflags(write=False)
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "widths", widths)
        object.__setattr__(self, "midpoints", midpoints)

    @property
    def N(self) -> int:  # noqa: N802
        """Number of cells."""
        return int(self.faces.size - 1)

    @property
    def r_min(self) -> float:
        return float(self.faces[0])

    @property
    def R(self) -> float:  # noqa: N802
        return float(self.faces[-1])

    def cell_midpoint(self, j: int) -> float:
        """
        Midpoint of cell j (1-based, as in 1 <= j <= N).

        Raises:
            IndexError: If j is outside 1..N
        """
        if not 1 <= j <= self.N:
            raise IndexError(f"cell index {j} outside 1..{self.N}")
        return float(self.midpoints[j - 1])

    def locate(self, r: np.ndarray | float) -> np.ndarray:
        """
        0-based index of the cell holding each radius.

        Radii on an interior face belong to the cell on their right; R
        belongs to the last cell.

        Raises:
            IndexError: If any radius lies outside [r_min, R]
        """
        r = np.asarray(r, dtype=float)
        if np.any(r < self.faces[0]) or np.any(r > self.faces[-1]):
            raise IndexError("radius outside the mesh domain")
        idx = np.searchsorted(self.faces, r, side="right") - 1
        return np.clip(idx, 0, self.N - 1)


def build_uniform(r_min: float, R: float, N: int) -> Mesh:  # noqa: N803
    """
    Build a mesh of N equal cells on [r_min, R].

    Raises:
        ValueError: If N < 1, r_min < 0 or R <= r_min
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if r_min < 0.0 or R <= r_min:
        raise ValueError("need R > r_min >= 0")
    faces = r_min + (R - r_min) * np.arange(N + 1, dtype=float) / N
    faces[-1] = R
    return Mesh(faces)


def build_geometric(r_min: float, dr1: float, a: float, N: int) -> Mesh:
    """
    Build a mesh whose widths grow geometrically, dr_j = a^(j-1) * dr1.

    Args:
        r_min: Inner radius
        dr1: Width of the innermost cell
        a: Growth rate, a >= 1 (a == 1 gives a uniform mesh)
        N: Number of cells

    Raises:
        ValueError: If dr1 <= 0, a < 1 or N < 1
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if dr1 <= 0.0:
        raise ValueError("dr1 must be positive")
    if a < 1.0:
        raise ValueError("growth rate a must be >= 1")
    if r_min < 0.0:
        raise ValueError("r_min must be non-negative")
    if a == 1.0:
        faces = r_min + dr1 * np.arange(N + 1, dtype=float)
    else:
        # expm1/log1p keep the a -> 1 limit accurate
        growth = a - 1.0
        j = np.arange(N + 1, dtype=float)
        faces = r_min + dr1 * np.expm1(j * np.log1p(growth)) / growth
    faces[0] = r_min
    return Mesh(faces)


__all__ = ["Mesh", "build_uniform", "build_geometric"]
