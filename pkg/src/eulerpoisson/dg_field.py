# =============================================================================
# EulerPoisson - DG Field Module
# =============================================================================
#
# Modal piecewise polynomials on a radial mesh. Each cell carries k+1
# Legendre coefficients on the reference interval [-1, 1]; the r^2 weighted
# mass matrices, quadrature nodes and test-function tables live on a shared
# DGSpace so fields stay light.
#
# Usage:
#     from eulerpoisson.dg_field import DGSpace, project_gauss_radau
#
#     space = DGSpace(mesh, k=2)
#     rho = project_gauss_radau(lambda r: np.exp(-r), space)
#     rho.eval(0.3)
#
# =============================================================================

"""
Modal DG fields, quadrature, Gauss-Radau projection and monomial conversion.

Array layout used throughout the package:

- coefficients of one scalar field: ``(N, k+1)``
- coefficients of the conserved triple: ``(3, N, k+1)``
- values at quadrature nodes: ``(..., N, q)``
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from math import comb

import numpy as np
from numpy.polynomial import legendre

from eulerpoisson.mesh import Mesh

ScalarFunction = Callable[[np.ndarray], np.ndarray]

# Extra Gauss points used by the projection beyond k+1
PROJECTION_EXTRA_POINTS = 4


# -----------------------------------------------------------------------------
# Quadrature
# -----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Quadrature:
    """
    Gauss-Legendre rule on [-1, 1].

    A q-point rule integrates polynomials up to degree 2q-1 exactly.
    """

    points: np.ndarray
    weights: np.ndarray

    @property
    def q(self) -> int:
        return int(self.points.size)

    @classmethod
    def gauss_legendre(cls, q: int) -> Quadrature:
        if q < 1:
            raise ValueError("quadrature needs at least one point")
        points, weights = legendre.leggauss(q)
        return cls(points=points, weights=weights)

    @classmethod
    def for_degree(cls, degree: int) -> Quadrature:
        """Smallest rule exact for polynomials of the given degree."""
        return cls.gauss_legendre(max(1, (degree + 2) // 2))

    def integrate(self, f: ScalarFunction, a: float = -1.0, b: float = 1.0) -> float:
        """Integrate f over [a, b]."""
        half = 0.5 * (b - a)
        x = 0.5 * (a + b) + half * self.points
        return float(half * np.dot(self.weights, f(x)))


def _legendre_tables(k: int, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Values and xi-derivatives of P_0..P_k at the points, shape (q, k+1)."""
    values = legendre.legvander(points, k)
    derivs = np.zeros_like(values)
    for a in range(1, k + 1):
        unit = np.zeros(a + 1)
        unit[a] = 1.0
        derivs[:, a] = legendre.legval(points, legendre.legder(unit))
    return values, derivs


def _legendre_to_shifted(k: int) -> np.ndarray:
    """
    Matrix taking Legendre coefficients to monomial coefficients in t = xi + 1.

    Row m of the result gives the coefficient of t^m.
    """
    to_xi = np.zeros((k + 1, k + 1))
    for a in range(k + 1):
        unit = np.zeros(a + 1)
        unit[a] = 1.0
        poly = legendre.leg2poly(unit)
        to_xi[: poly.size, a] = poly
    # xi^i = (t - 1)^i
    to_t = np.zeros((k + 1, k + 1))
    for i in range(k + 1):
        for m in range(i + 1):
            to_t[m, i] = comb(i, m) * (-1.0) ** (i - m)
    return to_t @ to_xi


# -----------------------------------------------------------------------------
# Discrete Space
# -----------------------------------------------------------------------------


class DGSpace:
    """
    Geometry and basis tables shared by every field of one discretization.

    Attributes:
        mesh: Radial mesh
        k: Polynomial degree
        quad: Volume quadrature (default k+3 points)
        values: P_a at the quadrature nodes, shape (q, k+1)
        derivs: dP_a/dxi at the quadrature nodes, shape (q, k+1)
        left: P_a(-1), shape (k+1,)
        right: P_a(+1), shape (k+1,)
        r_nodes: Physical quadrature nodes, shape (N, q)
        w_r2: Weights for integrals against r^2 dr, shape (N, q)
        w_dr: Weights for plain dr integrals, shape (N, q)
        mass: r^2-weighted mass matrices, shape (N, k+1, k+1)
        mass_inv: Their inverses
    """

    def __init__(self, mesh: Mesh, k: int, quad: Quadrature | None = None) -> None:
        if k < 0:
            raise ValueError("polynomial degree must be non-negative")
        self.mesh = mesh
        self.k = k
        self.quad = quad or Quadrature.gauss_legendre(k + 3)

        self.values, self.derivs = _legendre_tables(k, self.quad.points)
        self.left = (-1.0) ** np.arange(k + 1)
        self.right = np.ones(k + 1)

        self.jac = 0.5 * mesh.widths
        self.r_nodes = mesh.midpoints[:, None] + self.jac[:, None] * self.quad.points[None, :]
        self.w_dr = self.quad.weights[None, :] * self.jac[:, None]
        self.w_r2 = self.w_dr * self.r_nodes**2

        self.mass = np.einsum("nq,qa,qb->nab", self.w_r2, self.values, self.values)
        self.mass_inv = np.linalg.inv(self.mass)

        self._to_shifted = _legendre_to_shifted(k)
        self._proj_quad = Quadrature.gauss_legendre(k + PROJECTION_EXTRA_POINTS)
        self._proj_values, _ = _legendre_tables(k, self._proj_quad.points)

    @property
    def N(self) -> int:  # noqa: N802
        return self.mesh.N

    @property
    def nbasis(self) -> int:
        return self.k + 1

    def __repr__(self) -> str:
        return f"DGSpace(N={self.N}, k={self.k}, q={self.quad.q})"

    # -------------------------------------------------------------------------
    # Evaluation
    # -------------------------------------------------------------------------

    def nodes(self, coeffs: np.ndarray) -> np.ndarray:
        """Values at the quadrature nodes, (..., N, k+1) -> (..., N, q)."""
        return coeffs @ self.values.T

    def node_derivs(self, coeffs: np.ndarray) -> np.ndarray:
        """Radial derivative at the quadrature nodes."""
        return (coeffs @ self.derivs.T) / self.jac[:, None]

    def left_traces(self, coeffs: np.ndarray) -> np.ndarray:
        """Value at r^+_{j-1/2} per cell, (..., N, k+1) -> (..., N)."""
        return coeffs @ self.left

    def right_traces(self, coeffs: np.ndarray) -> np.ndarray:
        """Value at r^-_{j+1/2} per cell."""
        return coeffs @ self.right

    def eval_at(self, coeffs: np.ndarray, r: np.ndarray | float) -> np.ndarray:
        """
        Evaluate at arbitrary radii (cell chosen by Mesh.locate).

        Raises:
            IndexError: If a radius lies outside the domain
        """
        r = np.asarray(r, dtype=float)
        cells = self.mesh.locate(r)
        xi = (r - self.mesh.midpoints[cells]) / self.jac[cells]
        basis = legendre.legvander(xi, self.k)
        return np.sum(coeffs[..., cells, :] * basis, axis=-1)

    # -------------------------------------------------------------------------
    # Integration against test functions
    # -------------------------------------------------------------------------

    def test_r2(self, node_values: np.ndarray) -> np.ndarray:
        """Integrals of f * psi_a * r^2 dr per cell, (..., N, q) -> (..., N, k+1)."""
        return (node_values * self.w_r2) @ self.values

    def test_dr(self, node_values: np.ndarray) -> np.ndarray:
        """Integrals of f * psi_a dr per cell (plain weight)."""
        return (node_values * self.w_dr) @ self.values

    def test_deriv_r2(self, node_values: np.ndarray) -> np.ndarray:
        """Integrals of f * dpsi_a/dr * r^2 dr per cell."""
        weights = self.quad.weights[None, :] * self.r_nodes**2
        return (node_values * weights) @ self.derivs

    def cell_integrals_r2(self, node_values: np.ndarray) -> np.ndarray:
        """Integrals of f * r^2 dr per cell, (..., N, q) -> (..., N)."""
        return np.sum(node_values * self.w_r2, axis=-1)

    def cell_integrals_dr(self, node_values: np.ndarray) -> np.ndarray:
        """Integrals of f dr per cell."""
        return np.sum(node_values * self.w_dr, axis=-1)

    def solve_mass(self, residual: np.ndarray) -> np.ndarray:
        """Apply the inverse r^2 mass matrix cell by cell."""
        return np.einsum("nab,...nb->...na", self.mass_inv, residual)

    # -------------------------------------------------------------------------
    # Projection and monomial form
    # -------------------------------------------------------------------------

    def project_coeffs(self, f: ScalarFunction) -> np.ndarray:
        """
        Gauss-Radau projection coefficients of f, shape (N, k+1).

        The first k coefficients match the unweighted moments against
        P_0..P_{k-1}; the last is fixed by the value at the left face.
        """
        if self.k < 1:
            raise ValueError("Gauss-Radau projection needs k >= 1")
        k = self.k
        r = self.mesh.midpoints[:, None] + self.jac[:, None] * self._proj_quad.points[None, :]
        fr = np.asarray(f(r), dtype=float)
        norm = (2.0 * np.arange(k) + 1.0) / 2.0
        moments = (fr * self._proj_quad.weights[None, :]) @ self._proj_values[:, :k]
        coeffs = np.zeros((self.N, k + 1))
        coeffs[:, :k] = moments * norm[None, :]
        f_left = np.asarray(f(self.mesh.faces[:-1]), dtype=float)
        partial = coeffs[:, :k] @ self.left[:k]
        coeffs[:, k] = (f_left - partial) * self.left[k]
        return coeffs

    def shifted_monomials(self, coeffs: np.ndarray) -> np.ndarray:
        """
        Coefficients a_m of sum_m a_m (r - r_{j-1/2})^m per cell.

        (..., N, k+1) -> (..., N, k+1).
        """
        t_coeffs = coeffs @ self._to_shifted.T
        scale = (1.0 / self.jac[:, None]) ** np.arange(self.k + 1)[None, :]
        return t_coeffs * scale


# -----------------------------------------------------------------------------
# Fields
# -----------------------------------------------------------------------------


@dataclass(eq=False)
class DGField:
    """
    One scalar unknown as a modal DG polynomial.

    Attributes:
        space: Shared discretization
        coeffs: Legendre coefficients, shape (N, k+1)
    """

    space: DGSpace
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        expected = (self.space.N, self.space.nbasis)
        if self.coeffs.shape != expected:
            raise ValueError(f"coefficient shape {self.coeffs.shape} != {expected}")

    @classmethod
    def zeros(cls, space: DGSpace) -> DGField:
        return cls(space, np.zeros((space.N, space.nbasis)))

    @property
    def k(self) -> int:
        return self.space.k

    def eval(self, r: np.ndarray | float) -> np.ndarray:
        """Value at radius r (scalar or array)."""
        return self.space.eval_at(self.coeffs, r)

    def trace_left(self, j: int) -> float:
        """Right-hand limit at r_{j-1/2}, 1-based cell index."""
        return float(self.coeffs[self._index(j)] @ self.space.left)

    def trace_right(self, j: int) -> float:
        """Left-hand limit at r_{j+1/2}, 1-based cell index."""
        return float(self.coeffs[self._index(j)] @ self.space.right)

    def nodes(self) -> np.ndarray:
        return self.space.nodes(self.coeffs)

    def copy(self) -> DGField:
        return DGField(self.space, self.coeffs.copy())

    def _index(self, j: int) -> int:
        if not 1 <= j <= self.space.N:
            raise IndexError(f"cell index {j} outside 1..{self.space.N}")
        return j - 1


@dataclass(eq=False)
class StateField:
    """
    The conserved triple (rho, rho*u, E) on one space.

    Attributes:
        space: Shared discretization
        coeffs: Coefficients of (rho, mom, ene), shape (3, N, k+1)
    """

    space: DGSpace
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        expected = (3, self.space.N, self.space.nbasis)
        if self.coeffs.shape != expected:
            raise ValueError(f"coefficient shape {self.coeffs.shape} != {expected}")

    @classmethod
    def from_fields(cls, rho: DGField, mom: DGField, ene: DGField) -> StateField:
        if not (rho.space is mom.space is ene.space):
            raise ValueError("fields of a state must share one space")
        return cls(rho.space, np.stack([rho.coeffs, mom.coeffs, ene.coeffs]))

    @classmethod
    def zeros(cls, space: DGSpace) -> StateField:
        return cls(space, np.zeros((3, space.N, space.nbasis)))

    @property
    def rho(self) -> DGField:
        return DGField(self.space, self.coeffs[0])

    @property
    def mom(self) -> DGField:
        return DGField(self.space, self.coeffs[1])

    @property
    def ene(self) -> DGField:
        return DGField(self.space, self.coeffs[2])

    def copy(self) -> StateField:
        return StateField(self.space, self.coeffs.copy())


# -----------------------------------------------------------------------------
# Module-level operations
# -----------------------------------------------------------------------------


def project_gauss_radau(f: ScalarFunction, space: DGSpace) -> DGField:
    """
    Gauss-Radau projection of a function of r onto the DG space.

    Per cell, the result has the same unweighted moments as f against all
    polynomials of degree <= k-1 and matches f at the left face.

    Raises:
        ValueError: If k < 1
    """
    return DGField(space, space.project_coeffs(f))


def to_monomial(dg: DGField, j: int, shifted: bool = False) -> np.ndarray:
    """
    Monomial coefficients of cell j (1-based).

    Args:
        dg: Field to convert
        j: Cell index
        shifted: If True, return coefficients in (r - r_{j-1/2});
                 otherwise coefficients of absolute powers r^i.

    Returns:
        Array of k+1 coefficients, lowest power first
    """
    idx = dg._index(j)
    local = dg.space.shifted_monomials(dg.coeffs)[idx]
    if shifted:
        return local
    r_left = dg.space.mesh.faces[idx]
    k = dg.space.k
    absolute = np.zeros(k + 1)
    for m in range(k + 1):
        for i in range(m + 1):
            absolute[i] += local[m] * comb(m, i) * (-r_left) ** (m - i)
    return absolute


def integrate_weighted(
    space: DGSpace, integrand: ScalarFunction, j: int | None = None
) -> np.ndarray | float:
    """
    Integral of integrand(r) * r^2 dr over one cell (1-based j) or every cell.

    Exact when integrand * r^2 is a polynomial of degree <= 2q-1.
    """
    values = np.asarray(integrand(space.r_nodes), dtype=float)
    totals = space.cell_integrals_r2(values)
    if j is None:
        return totals
    if not 1 <= j <= space.N:
        raise IndexError(f"cell index {j} outside 1..{space.N}")
    return float(totals[j - 1])


__all__ = [
    "Quadrature",
    "DGSpace",
    "DGField",
    "StateField",
    "project_gauss_radau",
    "to_monomial",
    "integrate_weighted",
]
