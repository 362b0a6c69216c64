# =============================================================================
# EulerPoisson - Lane-Emden Module
# =============================================================================
#
# Polytrope profiles theta_n(xi) for the well-balanced equilibrium recovery.
# n = 0, 1 and 5 have closed forms; every other index is integrated once
# with the six-stage Runge-Kutta-Fehlberg tableau and cached by n.
#
# Usage:
#     from eulerpoisson.lane_emden import get_profile, eval_theta
#
#     profile = get_profile(3.0)
#     theta, dtheta = eval_theta(profile, xi)
#
# =============================================================================

"""
Lane-Emden solutions: closed forms, RKF integration and a profile cache.

The first-order system integrated is

    theta' = -phi / xi**2,     phi' = theta**n * xi**2,

from xi = 0 with theta(0) = 1, phi(0) = 0 and a zero right-hand side at the
origin.
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from eulerpoisson.errors import InvalidStateError

logger = logging.getLogger("eulerpoisson.lane_emden")

PathLike = Union[str, Path]

DEFAULT_STEP = 1.0e-4
DEFAULT_XI_MAX = 50.0

# Indices with a closed-form solution
ANALYTIC_INDICES = (0, 1, 5)

# -----------------------------------------------------------------------------
# Runge-Kutta-Fehlberg tableau (fifth-order weights)
# -----------------------------------------------------------------------------

_C = (0.0, 1.0 / 4.0, 3.0 / 8.0, 12.0 / 13.0, 1.0, 1.0 / 2.0)
_A = (
    (),
    (1.0 / 4.0,),
    (3.0 / 32.0, 9.0 / 32.0),
    (1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0),
    (439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0),
    (-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0),
)
_B = (16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0)


# -----------------------------------------------------------------------------
# Profile Type
# -----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PolytropeProfile:
    """
    Tabulated Lane-Emden solution.

    Attributes:
        n: Polytropic index
        xi: Grid of scaled radii, starting at 0
        theta: theta(xi) on the grid
        dtheta: d theta / d xi on the grid
        xi_surface: First zero of theta (inf if none inside the range)
        analytic: True when theta is evaluated from the closed form
    """

    n: float
    xi: np.ndarray
    theta: np.ndarray
    dtheta: np.ndarray
    xi_surface: float
    analytic: bool = False
    _spline: CubicHermiteSpline | None = field(default=None, repr=False, compare=False)

    @property
    def xi_end(self) -> float:
        """Largest xi covered by the table."""
        return float(self.xi[-1]) if self.xi.size else 0.0


# -----------------------------------------------------------------------------
# Closed Forms
# -----------------------------------------------------------------------------


def analytic_index(n: float) -> int | None:
    """Return n as an int if it is (to round-off) one of 0, 1, 5, else None."""
    nearest = round(n)
    if nearest in ANALYTIC_INDICES and abs(n - nearest) < 1.0e-9:
        return int(nearest)
    return None


def analytic_theta(n: float, xi: np.ndarray | float) -> np.ndarray:
    """
    Closed-form Lane-Emden solution for n in {0, 1, 5}.

    Args:
        n: Polytropic index
        xi: Scaled radius (scalar or array), xi >= 0

    Returns:
        theta(xi) with the same shape as xi

    Raises:
        ValueError: If n is not 0, 1 or 5, or xi < 0
    """
    theta, _ = _analytic(n, xi)
    return theta


def _analytic(n: float, xi: np.ndarray | float) -> tuple[np.ndarray, np.ndarray]:
    index = analytic_index(n)
    if index is None:
        raise ValueError(f"no closed-form Lane-Emden solution for n={n}")
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0.0):
        raise ValueError("xi must be non-negative")

    if index == 0:
        return 1.0 - xi**2 / 6.0, -xi / 3.0
    if index == 1:
        theta = np.sinc(xi / np.pi)
        small = xi < 1.0e-4
        safe = np.where(small, 1.0, xi)
        dtheta = np.where(
            small,
            -xi / 3.0 + xi**3 / 30.0,
            (np.cos(safe) - np.sin(safe) / safe) / safe,
        )
        return theta, dtheta
    base = 1.0 + xi**2 / 3.0
    return base**-0.5, -xi / 3.0 * base**-1.5


def analytic_surface(n: float) -> float:
    """First zero of the closed-form solution (inf for n = 5)."""
    index = analytic_index(n)
    if index == 0:
        return math.sqrt(6.0)
    if index == 1:
        return math.pi
    if index == 5:
        return math.inf
    raise ValueError(f"no closed-form Lane-Emden solution for n={n}")


# -----------------------------------------------------------------------------
# Numerical Integration
# -----------------------------------------------------------------------------


def _rhs(xi: float, theta: float, phi: float, n: float) -> tuple[float, float]:
    if xi == 0.0:
        return 0.0, 0.0
    # theta**n is taken as 0 past the surface
    power = max(theta, 0.0) ** n
    return -phi / (xi * xi), power * xi * xi


def solve_lane_emden(
    n: float,
    h: float = DEFAULT_STEP,
    xi_max: float = DEFAULT_XI_MAX,
) -> PolytropeProfile:
    """
    Integrate the Lane-Emden equation with the RKF tableau at a fixed step.

    Integration stops at xi_max or at the first step whose end value has
    theta <= 0. The zero inside that step becomes the last table node
    (theta = 0, with the slope of the step's Hermite cubic).

    Args:
        n: Polytropic index, n >= 0
        h: Step in xi
        xi_max: Upper end of the range

    Returns:
        A tabulated PolytropeProfile

    Raises:
        ValueError: If h <= 0, xi_max <= 0 or n < 0
    """
    if h <= 0.0:
        raise ValueError("step h must be positive")
    if xi_max <= 0.0:
        raise ValueError("xi_max must be positive")
    if n < 0.0:
        raise ValueError("polytropic index must be non-negative")

    steps = int(math.ceil(xi_max / h - 1.0e-9))
    xs = [0.0]
    thetas = [1.0]
    dthetas = [0.0]
    xi_surface = math.inf

    xi, theta, phi = 0.0, 1.0, 0.0
    for i in range(steps):
        kt = [0.0] * 6
        kp = [0.0] * 6
        for s in range(6):
            ts = theta
            ps = phi
            for m, a in enumerate(_A[s]):
                ts += h * a * kt[m]
                ps += h * a * kp[m]
            kt[s], kp[s] = _rhs(xi + _C[s] * h, ts, ps, n)
        theta_new = theta + h * sum(b * k for b, k in zip(_B, kt))
        phi_new = phi + h * sum(b * k for b, k in zip(_B, kp))
        xi_new = (i + 1) * h
        dtheta_new = -phi_new / (xi_new * xi_new)

        if theta_new <= 0.0:
            xi_surface, dtheta_surface = _surface_node(
                (xi, theta, dthetas[-1]), (xi_new, theta_new, dtheta_new)
            )
            if xi_surface > xi:
                xs.append(xi_surface)
                thetas.append(0.0)
                dthetas.append(dtheta_surface)
            break

        xi, theta, phi = xi_new, theta_new, phi_new
        xs.append(xi)
        thetas.append(theta)
        dthetas.append(dtheta_new)

    xi_arr = np.asarray(xs)
    theta_arr = np.asarray(thetas)
    dtheta_arr = np.asarray(dthetas)

    logger.debug(
        f"Lane-Emden n={n:g}: {xi_arr.size} nodes, h={h:g}, " f"xi_surface={xi_surface:.12g}"
    )
    return _tabulated(n, xi_arr, theta_arr, dtheta_arr, xi_surface)


def _surface_node(
    start: tuple[float, float, float], end: tuple[float, float, float]
) -> tuple[float, float]:
    """
    Zero of the Hermite cubic through the (xi, theta, theta') ends of the
    step that crosses theta = 0, and the cubic's slope there.

    Falls back to linear interpolation if the cubic has no root in the step.
    """
    (x0, t0, d0), (x1, t1, d1) = start, end
    step = CubicHermiteSpline([x0, x1], [t0, t1], [d0, d1])
    roots = np.asarray(step.roots(extrapolate=False), dtype=float)
    inside = roots[(roots > x0) & (roots <= x1)]
    if inside.size:
        root = float(inside.min())
    else:
        root = x0 + (x1 - x0) * t0 / (t0 - t1)
    return root, float(step(root, 1))


def _tabulated(
    n: float,
    xi: np.ndarray,
    theta: np.ndarray,
    dtheta: np.ndarray,
    xi_surface: float,
) -> PolytropeProfile:
    spline = CubicHermiteSpline(xi, theta, dtheta) if xi.size >= 2 else None
    return PolytropeProfile(
        n=float(n),
        xi=xi,
        theta=theta,
        dtheta=dtheta,
        xi_surface=float(xi_surface),
        analytic=False,
        _spline=spline,
    )


def analytic_profile(n: float) -> PolytropeProfile:
    """Profile object backed by the closed form (no table needed)."""
    surface = analytic_surface(n)
    xi_end = surface if math.isfinite(surface) else DEFAULT_XI_MAX
    xi = np.array([0.0, xi_end])
    theta, dtheta = _analytic(n, xi)
    return PolytropeProfile(
        n=float(n), xi=xi, theta=theta, dtheta=dtheta, xi_surface=surface, analytic=True
    )


# -----------------------------------------------------------------------------
# Evaluation
# -----------------------------------------------------------------------------


def eval_theta(profile: PolytropeProfile, xi: np.ndarray | float) -> tuple[np.ndarray, np.ndarray]:
    """
    Evaluate (theta, d theta / d xi) of a profile.

    Tabulated profiles use cubic Hermite interpolation on the stored
    (theta, theta') nodes. Both values are 0 at and beyond the surface.

    Raises:
        InvalidStateError: If the profile holds no table
        ValueError: If any xi is negative
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0.0):
        raise ValueError("xi must be non-negative")
    if profile.xi.size == 0:
        raise InvalidStateError("empty Lane-Emden profile")

    if profile.analytic:
        theta, dtheta = _analytic(profile.n, xi)
    else:
        if profile._spline is None:
            raise InvalidStateError("Lane-Emden profile has a single node")
        inside = np.minimum(xi, profile.xi_end)
        theta = np.asarray(profile._spline(inside))
        dtheta = np.asarray(profile._spline(inside, 1))

    beyond = xi >= profile.xi_surface
    theta = np.where(beyond, 0.0, theta)
    dtheta = np.where(beyond, 0.0, dtheta)
    return theta, dtheta


def dump_profile(profile: PolytropeProfile, path: PathLike) -> None:
    """Write the (xi, theta) table as two whitespace-separated columns."""
    header = f"n={profile.n:g} xi_surface={profile.xi_surface:.17g}\nxi theta"
    np.savetxt(Path(path), np.column_stack([profile.xi, profile.theta]), fmt="%.17g", header=header)


# -----------------------------------------------------------------------------
# Profile Cache
# -----------------------------------------------------------------------------

_cache: dict[tuple[float, float, float], PolytropeProfile] = {}
_cache_lock = threading.Lock()


def get_profile(
    n: float,
    h: float = DEFAULT_STEP,
    xi_max: float = DEFAULT_XI_MAX,
) -> PolytropeProfile:
    """
    Return the profile for index n, computing it on first use.

    Closed forms are used for n in {0, 1, 5}; other indices are integrated
    once and cached by (n, h, xi_max).
    """
    if analytic_index(n) is not None:
        key = (float(analytic_index(n) or 0), 0.0, 0.0)
    else:
        key = (float(n), float(h), float(xi_max))

    with _cache_lock:
        cached = _cache.get(key)
    if cached is not None:
        logger.debug(f"Lane-Emden profile cache hit for n={n:g}")
        return cached

    profile = analytic_profile(n) if analytic_index(n) is not None else solve_lane_emden(n, h, xi_max)
    with _cache_lock:
        _cache.setdefault(key, profile)
        return _cache[key]


def clear_profile_cache() -> None:
    """Drop every cached profile."""
    with _cache_lock:
        _cache.clear()


__all__ = [
    "PolytropeProfile",
    "analytic_theta",
    "analytic_surface",
    "analytic_index",
    "analytic_profile",
    "solve_lane_emden",
    "eval_theta",
    "dump_profile",
    "get_profile",
    "clear_profile_cache",
]
