# =============================================================================
# EulerPoisson - Scenario Registry
# =============================================================================
#
# Scenarios are looked up by name and imported only when first requested,
# so the cgs collapse modules (and their profile loading) stay out of
# dimensionless runs.
#
# Usage:
#     from eulerpoisson.problems import make_scenario
#
#     scenario = make_scenario("perturbation", {"A": 1e-3})
#     mesh = scenario.build_mesh(scenario.N)
#
# =============================================================================

"""
Scenario library and registry.
"""

from __future__ import annotations

import importlib
from collections.abc import Mapping

from eulerpoisson.problems.base import (
    BoundaryPolicy,
    ParamValue,
    Scenario,
    extra_source,
    ghost_states,
    initial_state,
)

# Registry of available scenarios
_REGISTRY: dict[str, str] = {
    "wb_gamma2": "eulerpoisson.problems.equilibrium.PolytropeEquilibrium",
    "wb_gamma12": "eulerpoisson.problems.equilibrium.Gamma12Equilibrium",
    "perturbation": "eulerpoisson.problems.equilibrium.PerturbedEquilibrium",
    "manufactured": "eulerpoisson.problems.manufactured.ManufacturedScenario",
    "explosion": "eulerpoisson.problems.explosion.ExplosionScenario",
    "yahil": "eulerpoisson.problems.collapse.YahilCollapse",
    "toy_collapse": "eulerpoisson.problems.collapse.ToyCollapse",
}


def available_scenarios() -> list[str]:
    """Registered scenario names."""
    return list(_REGISTRY)


def scenario_class(name: str) -> type[Scenario]:
    """
    Import and return the class registered under name.

    Raises:
        ValueError: If the name is not registered
    """
    if name not in _REGISTRY:
        available = ", ".join(_REGISTRY)
        raise ValueError(f"unknown scenario {name!r}; available: {available}")
    module_path, class_name = _REGISTRY[name].rsplit(".", 1)
    module = importlib.import_module(module_path)
    cls: type[Scenario] = getattr(module, class_name)
    return cls


def make_scenario(name: str, overrides: Mapping[str, ParamValue] | None = None) -> Scenario:
    """
    Build a scenario with its default parameters, updated by overrides.

    Raises:
        ValueError: If the name or an override is unknown, or a value is invalid
    """
    return scenario_class(name)(overrides)


__all__ = [
    "BoundaryPolicy",
    "ParamValue",
    "Scenario",
    "available_scenarios",
    "scenario_class",
    "make_scenario",
    "initial_state",
    "ghost_states",
    "extra_source",
]
