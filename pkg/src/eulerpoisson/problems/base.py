# =============================================================================
# EulerPoisson - Base Scenario
# =============================================================================
#
# Abstract interface every scenario implements. A scenario bundles:
#
#   - parameters with defaults (every one overridable from a run config)
#   - the equation of state and gravitational constant
#   - the mesh recipe and the initial conserved fields
#   - the boundary policies, the exact solution where one exists
#   - the extra source term and the equilibrium target of the wb scheme
#
# =============================================================================

"""
Abstract base class for simulation scenarios.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections.abc import Mapping
from functools import cached_property
from types import MappingProxyType
from typing import ClassVar, Literal, Union

import numpy as np

from eulerpoisson.dg_field import DGSpace, StateField
from eulerpoisson.eos.base import BaseEos
from eulerpoisson.errors import InvalidStateError, SolverAbortError
from eulerpoisson.mesh import Mesh
from eulerpoisson.well_balanced import EquilibriumTarget, RecoveredPolytrope

logger = logging.getLogger("eulerpoisson.problems")

ParamValue = Union[float, int, str]
BoundaryPolicy = Literal["reflecting", "dirichlet", "extrapolate", "symmetric_copy"]
BoundaryEnd = Literal["inner", "outer"]


class Scenario(ABC):
    """
    Abstract simulation scenario.

    Subclasses MUST implement:
    - eos property
    - build_mesh(N)
    - initial_conserved(r): (rho, rho*u, E) at radii r, shape (3, ...)

    and MAY override exact(), extra_source(), equilibrium_target() and the
    gravity boundary hooks.

    Attributes:
        name: Registry name
        defaults: Every tunable parameter with its default value
        params: Read-only merged parameters of this instance
    """

    name: ClassVar[str] = "base"
    defaults: ClassVar[Mapping[str, ParamValue]] = MappingProxyType({})

    inner_boundary: ClassVar[BoundaryPolicy] = "reflecting"
    outer_boundary: ClassVar[BoundaryPolicy] = "extrapolate"
    has_extra_source: ClassVar[bool] = False
    four_pi: ClassVar[bool] = False
    phi_outer: ClassVar[float] = 0.0

    def __init__(self, overrides: Mapping[str, ParamValue] | None = None) -> None:
        params = dict(self.defaults)
        for key, value in (overrides or {}).items():
            if key not in params:
                known = ", ".join(sorted(params))
                raise ValueError(f"unknown parameter {key!r} for {self.name}; known: {known}")
            params[key] = _coerce(key, value, params[key])
        self.params: Mapping[str, ParamValue] = MappingProxyType(params)
        self.validate()

    def __repr__(self) -> str:
        changed = {k: v for k, v in self.params.items() if self.defaults.get(k) != v}
        return f"{self.__class__.__name__}(name={self.name!r}, overrides={changed})"

    def validate(self) -> None:
        """Check parameter ranges; raise ValueError on bad values."""
        if int(self.params.get("N", 1)) < 1:
            raise ValueError("N must be at least 1")
        if float(self.params.get("t_end", 1.0)) <= 0.0:
            raise ValueError("t_end must be positive")

    def param(self, key: str) -> float:
        return float(self.params[key])

    # -------------------------------------------------------------------------
    # Abstract Interface
    # -------------------------------------------------------------------------

    @property
    @abstractmethod
    def eos(self) -> BaseEos:
        ...

    @abstractmethod
    def build_mesh(self, N: int) -> Mesh:  # noqa: N803
        ...

    @abstractmethod
    def initial_conserved(self, r: np.ndarray) -> np.ndarray:
        """Initial (rho, rho*u, E) at radii r, shape (3,) + r.shape."""
        ...

    # -------------------------------------------------------------------------
    # Defaults shared by most scenarios
    # -------------------------------------------------------------------------

    @property
    def G(self) -> float:  # noqa: N802
        return self.param("G")

    @property
    def N(self) -> int:  # noqa: N802
        return int(self.params["N"])

    @property
    def t_end(self) -> float:
        return self.param("t_end")

    @cached_property
    def domain(self) -> tuple[float, float]:
        """(r_min, R) of the default mesh, built once per instance."""
        mesh = self.build_mesh(self.N)
        return mesh.r_min, mesh.R

    @property
    def central_window(self) -> float | None:
        """Radius of the central density average (None: innermost cell)."""
        return None

    @property
    def stop_density(self) -> float | None:
        """Central density at which a run stops early (None: never)."""
        return None

    def exact(self, r: np.ndarray, t: float) -> np.ndarray | None:
        """Exact conserved fields at time t, or None when unknown."""
        return None

    def extra_source(self, r: np.ndarray, t: float = 0.0) -> np.ndarray:
        """Source added to the right-hand side; zero unless overridden."""
        r = np.asarray(r, dtype=float)
        return np.zeros((3,) + r.shape)

    def equilibrium_target(self) -> EquilibriumTarget:
        return RecoveredPolytrope(self.eos, self.G)

    def inner_dphi(self, t: float) -> float | None:
        """dPhi/dr at r_min (needed only when r_min > 0)."""
        return None

    def inner_phi(self, t: float) -> float | None:
        """Phi at r_min; when set, the potential is anchored at r_min."""
        return None

    # -------------------------------------------------------------------------
    # Derived Operations
    # -------------------------------------------------------------------------

    def initial_state(self, mesh: Mesh, k: int) -> StateField:
        """
        Gauss-Radau projection of the initial fields.

        Raises:
            ValueError: If k < 1
            SolverAbortError: If the projected density has a non-positive trace
        """
        space = DGSpace(mesh, k)
        coeffs = np.stack(
            [
                space.project_coeffs(lambda r, i=i: self.initial_conserved(r)[i])
                for i in range(3)
            ]
        )
        state = StateField(space, coeffs)
        traces = np.concatenate(
            [space.left_traces(coeffs[0]), space.right_traces(coeffs[0])]
        )
        if not np.all(traces > 0.0):
            bad = int(np.argmin(traces > 0.0)) % space.N
            raise SolverAbortError("initial projection has non-positive density", cell=bad)
        logger.debug(f"initial state of {self.name} projected on {space!r}")
        return state

    def ghost_state(self, end: BoundaryEnd, trace: np.ndarray, t: float) -> np.ndarray:
        """
        State beyond one end of the domain.

        Args:
            end: "inner" or "outer"
            trace: Interior trace at that end, shape (3,)
            t: Time (Dirichlet data)

        Raises:
            InvalidStateError: If the policy is Dirichlet without an exact solution
            ValueError: If end is not "inner" or "outer"
        """
        if end == "inner":
            policy = self.inner_boundary
        elif end == "outer":
            policy = self.outer_boundary
        else:
            raise ValueError(f"boundary end must be 'inner' or 'outer', got {end!r}")

        trace = np.asarray(trace, dtype=float)
        if policy == "reflecting":
            return np.array([trace[0], -trace[1], trace[2]])
        if policy == "dirichlet":
            r_min, r_max = self.domain
            r = np.asarray(r_min if end == "inner" else r_max, dtype=float)
            values = self.exact(r, t)
            if values is None:
                raise InvalidStateError(f"{self.name}: Dirichlet boundary without exact solution")
            return np.asarray(values, dtype=float).reshape(3)
        return trace.copy()


def _coerce(key: str, value: ParamValue, default: ParamValue) -> ParamValue:
    """Convert an override to the type of the default."""
    try:
        if isinstance(default, bool):
            raise TypeError
        if isinstance(default, int):
            number = float(value)
            if number != int(number):
                raise ValueError
            return int(number)
        if isinstance(default, float):
            return float(value)
        return str(value)
    except (TypeError, ValueError):
        raise ValueError(f"parameter {key!r}: cannot use {value!r}") from None


# -----------------------------------------------------------------------------
# Module-level operations
# -----------------------------------------------------------------------------


def initial_state(scenario: Scenario, mesh: Mesh, k: int) -> StateField:
    """Projected initial state of a scenario."""
    return scenario.initial_state(mesh, k)


def ghost_states(
    scenario: Scenario, state: StateField, end: BoundaryEnd, t: float
) -> tuple[np.ndarray, np.ndarray]:
    """(interior trace, ghost state) at one end of the domain."""
    space = state.space
    if end == "inner":
        trace = space.left_traces(state.coeffs)[:, 0]
    elif end == "outer":
        trace = space.right_traces(state.coeffs)[:, -1]
    else:
        raise ValueError(f"boundary end must be 'inner' or 'outer', got {end!r}")
    return trace, scenario.ghost_state(end, trace, t)


def extra_source(scenario: Scenario, r: np.ndarray | float, t: float = 0.0) -> np.ndarray:
    """Extra source triple of a scenario at radii r."""
    return scenario.extra_source(np.asarray(r, dtype=float), t)


__all__ = [
    "ParamValue",
    "BoundaryPolicy",
    "Scenario",
    "initial_state",
    "ghost_states",
    "extra_source",
]
