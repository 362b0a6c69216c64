# =============================================================================
# EulerPoisson - Poisson Gravity Module
# =============================================================================
#
# Exact integration of the spherical Poisson equation
#
#     (1/r^2) d/dr (r^2 dPhi/dr) = 4 pi G rho
#
# over a piecewise-polynomial density. Per cell, with s = r - r_{j-1/2}:
#
#     dPhi/dr = P_j(s) + g_j / r^2
#     Phi     = Q_j(s) + C_j - g_j / r,     Q_j' = P_j, Q_j(0) = 0
#
# P_j is the polynomial particular solution of r P' + 2 P = 4 pi G rho r.
# The enclosed-mass scan runs outward, the potential scan inward from
# Phi(R) (or outward from an inner anchor).
#
# Usage:
#     from eulerpoisson.poisson import solve_gravity
#
#     gravity = solve_gravity(state.rho, G=1.0 / (4.0 * np.pi))
#     gravity.eval_dphi(0.5)
#
# =============================================================================

"""
Closed-form gravity of a piecewise-polynomial density in spherical symmetry.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from eulerpoisson.dg_field import DGField, DGSpace

FOUR_PI = 4.0 * np.pi


def _horner(coeffs: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Evaluate per-cell polynomials, coeffs (N, d+1) at s (N, m)."""
    out = np.broadcast_to(coeffs[:, -1:], s.shape).copy()
    for m in range(coeffs.shape[1] - 2, -1, -1):
        out = out * s + coeffs[:, m : m + 1]
    return out


def _safe_ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """num / den with 0 wherever num is exactly 0 (covers 0/0 at the origin)."""
    out = np.zeros(np.broadcast(num, den).shape)
    return np.divide(num, den, out=out, where=(num != 0.0) & (den != 0.0))


# -----------------------------------------------------------------------------
# Gravity Field
# -----------------------------------------------------------------------------


@dataclass(eq=False)
class GravityField:
    """
    Piecewise closed-form dPhi/dr and Phi.

    All coefficient arrays use the shifted variable s = r - r_{j-1/2}.

    Attributes:
        space: Discretization the density lived on
        G: Gravitational constant
        dphi_poly: P_j coefficients, shape (N, k+2)
        g_inv2: Coefficient of 1/r^2 in dPhi/dr, shape (N,)
        phi_poly: Q_j coefficients plus the constant C_j in slot 0, shape (N, k+3)
        dphi_faces: dPhi/dr at the N+1 faces
        phi_faces: Phi at the N+1 faces
        dphi_nodes: dPhi/dr at the volume quadrature nodes, shape (N, q)
        phi_nodes: Phi at the volume quadrature nodes, shape (N, q)
    """

    space: DGSpace
    G: float  # noqa: N815
    dphi_poly: np.ndarray = field(repr=False)
    g_inv2: np.ndarray = field(repr=False)
    phi_poly: np.ndarray = field(repr=False)
    dphi_faces: np.ndarray = field(repr=False)
    phi_faces: np.ndarray = field(repr=False)
    dphi_nodes: np.ndarray = field(init=False, repr=False)
    phi_nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        s = self.space.r_nodes - self.space.mesh.faces[:-1, None]
        r = self.space.r_nodes
        self.dphi_nodes = _horner(self.dphi_poly, s) + self.g_inv2[:, None] / r**2
        self.phi_nodes = _horner(self.phi_poly, s) - self.g_inv2[:, None] / r

    @property
    def phi_inv1(self) -> np.ndarray:
        """Coefficient of 1/r in Phi."""
        return -self.g_inv2

    # -------------------------------------------------------------------------
    # Evaluation
    # -------------------------------------------------------------------------

    def eval_dphi(self, r: np.ndarray | float) -> np.ndarray:
        """
        dPhi/dr at radius r.

        Raises:
            IndexError: If r lies outside the mesh
        """
        r = np.asarray(r, dtype=float)
        cells = self.space.mesh.locate(r)
        s = r - self.space.mesh.faces[cells]
        poly = self._cellwise(self.dphi_poly, cells, s)
        return poly + _safe_ratio(self.g_inv2[cells], r**2)

    def eval_phi(self, r: np.ndarray | float) -> np.ndarray:
        """
        Phi at radius r.

        Raises:
            IndexError: If r lies outside the mesh
        """
        r = np.asarray(r, dtype=float)
        cells = self.space.mesh.locate(r)
        s = r - self.space.mesh.faces[cells]
        poly = self._cellwise(self.phi_poly, cells, s)
        return poly - _safe_ratio(self.g_inv2[cells], r)

    @staticmethod
    def _cellwise(coeffs: np.ndarray, cells: np.ndarray, s: np.ndarray) -> np.ndarray:
        c = coeffs[cells]
        out = c[..., -1]
        for m in range(coeffs.shape[1] - 2, -1, -1):
            out = out * s + c[..., m]
        return np.asarray(out)

    # -------------------------------------------------------------------------
    # Linear combinations
    # -------------------------------------------------------------------------

    def blend(self, other: GravityField, weight: float = 0.5) -> GravityField:
        """(1 - weight) * self + weight * other, exact field by field."""
        if other.space is not self.space:
            raise ValueError("gravity fields live on different spaces")
        a = 1.0 - weight
        return GravityField(
            space=self.space,
            G=self.G,
            dphi_poly=a * self.dphi_poly + weight * other.dphi_poly,
            g_inv2=a * self.g_inv2 + weight * other.g_inv2,
            phi_poly=a * self.phi_poly + weight * other.phi_poly,
            dphi_faces=a * self.dphi_faces + weight * other.dphi_faces,
            phi_faces=a * self.phi_faces + weight * other.phi_faces,
        )


# -----------------------------------------------------------------------------
# Solver
# -----------------------------------------------------------------------------


def solve_gravity(
    rho: DGField,
    G: float,  # noqa: N803
    phi_outer: float = 0.0,
    *,
    inner_dphi: float | None = None,
    inner_phi: float | None = None,
) -> GravityField:
    """
    Solve for the gravity of a DG density.

    Args:
        rho: Density field
        G: Gravitational constant
        phi_outer: Phi(R) for the inward potential scan
        inner_dphi: dPhi/dr at r_min; required when r_min > 0
        inner_phi: If given, Phi(r_min) anchors an outward potential scan
                   and phi_outer is ignored

    Returns:
        The GravityField of rho

    Raises:
        ValueError: If the mesh starts away from 0 and inner_dphi is missing
    """
    return solve_gravity_coeffs(
        rho.space, rho.coeffs, G, phi_outer, inner_dphi=inner_dphi, inner_phi=inner_phi
    )


def solve_gravity_coeffs(
    space: DGSpace,
    rho_coeffs: np.ndarray,
    G: float,  # noqa: N803
    phi_outer: float = 0.0,
    *,
    inner_dphi: float | None = None,
    inner_phi: float | None = None,
) -> GravityField:
    """Array-level form of solve_gravity taking density coefficients (N, k+1)."""
    mesh = space.mesh
    r_left = mesh.faces[:-1]
    r_right = mesh.faces[1:]
    widths = mesh.widths
    k = space.k

    if mesh.r_min > 0.0 and inner_dphi is None:
        raise ValueError("mesh does not start at r=0: inner_dphi is required")
    g_inner = 0.0 if inner_dphi is None else float(inner_dphi)

    a = space.shifted_monomials(rho_coeffs)
    src = FOUR_PI * G

    # Polynomial part of dPhi/dr, top-down recursion
    p = np.zeros((space.N, k + 2))
    p[:, k + 1] = src * a[:, k] / (k + 3.0)
    for m in range(k, -1, -1):
        a_prev = a[:, m - 1] if m >= 1 else 0.0
        p[:, m] = (src * (r_left * a[:, m] + a_prev) - r_left * (m + 1.0) * p[:, m + 1]) / (
            m + 2.0
        )

    # Outward scan of r^2 dPhi/dr
    p_right = _horner(p, widths[:, None])[:, 0]
    increments = r_right**2 * p_right - r_left**2 * p[:, 0]
    enclosed = np.empty(space.N + 1)
    enclosed[0] = mesh.r_min**2 * g_inner
    enclosed[1:] = enclosed[0] + np.cumsum(increments)
    g_inv2 = enclosed[:-1] - r_left**2 * p[:, 0]
    if mesh.r_min == 0.0:
        g_inv2[0] = 0.0

    dphi_faces = np.empty(space.N + 1)
    dphi_faces[0] = g_inner
    dphi_faces[1:] = enclosed[1:] / r_right**2

    # Antiderivative of P_j in s
    q = np.zeros((space.N, k + 3))
    q[:, 1:] = p / np.arange(1.0, k + 3.0)[None, :]
    q_right = _horner(q, widths[:, None])[:, 0]
    drops = q_right + _safe_ratio(g_inv2 * widths, r_left * r_right)

    phi_faces = np.empty(space.N + 1)
    if inner_phi is not None:
        phi_faces[0] = float(inner_phi)
        phi_faces[1:] = phi_faces[0] + np.cumsum(drops)
    else:
        phi_faces[-1] = phi_outer
        phi_faces[:-1] = phi_outer - np.cumsum(drops[::-1])[::-1]

    q[:, 0] = phi_faces[1:] - q_right + g_inv2 / r_right

    return GravityField(
        space=space,
        G=G,
        dphi_poly=p,
        g_inv2=g_inv2,
        phi_poly=q,
        dphi_faces=dphi_faces,
        phi_faces=phi_faces,
    )


__all__ = ["GravityField", "solve_gravity", "solve_gravity_coeffs"]
