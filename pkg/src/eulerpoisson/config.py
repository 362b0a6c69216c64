# =============================================================================
# EulerPoisson - Configuration Module
# =============================================================================
#
# Run configuration: a typed dataclass and a parser for the plain-text
# run file.
#
# File format:
#
#     # comment            ; comment
#     scenario = explosion
#     N = 200
#     k = 2
#     rk = 3
#     limiter.beta = 1.75
#
#     [limiter]
#     M = 0
#
#     [scenario]
#     alpha = 5
#
# Top-level keys may also be placed under [run]. Keys under [scenario] are
# passed to the scenario as parameter overrides and checked against its
# parameter set.
#
# Usage:
#     from eulerpoisson.config import parse_config, load_config
#
#     config = load_config("runs/explosion.cfg")
#     fine = config.copy(N=400)
#
# =============================================================================

"""
Run configuration and the run-file parser.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Union

from eulerpoisson.errors import ConfigError, ProfileFileError
from eulerpoisson.limiter import LimiterConfig
from eulerpoisson.problems import ParamValue, available_scenarios, make_scenario
from eulerpoisson.spatial import SCHEME_NAMES
from eulerpoisson.stepper import DEFAULT_CFL

logger = logging.getLogger("eulerpoisson.config")

PathLike = Union[str, os.PathLike]

PRECISIONS = ("double",)


# -----------------------------------------------------------------------------
# Configuration Dataclass
# -----------------------------------------------------------------------------


@dataclass
class RunConfig:
    """
    Everything needed to reproduce one run.

    Attributes:
        scenario: Registered scenario name
        N: Cell count (None: the scenario's default)
        k: Polynomial degree, k >= 1
        rk: Runge-Kutta order, 1, 2 or 3
        scheme: "wb", "standard" or "standard_corrected"
        cfl: CFL number
        t_end: End time (None: the scenario's default)
        output_dir: Directory for CSV output (None: no files)
        output_every: Snapshot cadence in steps (0: final state only)
        threads: Requested worker threads (recorded only)
        precision: Floating-point mode; only "double"
        limiter: Limiter settings
        overrides: Scenario parameter overrides

    Example:
        >>> config = RunConfig(scenario="explosion", N=200)
        >>> config.copy(scheme="standard").scheme
        'standard'
    """

    scenario: str
    N: int | None = None  # noqa: N815
    k: int = 2
    rk: int = 3
    scheme: str = "wb"
    cfl: float = DEFAULT_CFL
    t_end: float | None = None
    output_dir: str | None = None
    output_every: int = 0
    threads: int = 1
    precision: str = "double"
    limiter: LimiterConfig = field(default_factory=LimiterConfig)
    overrides: dict[str, ParamValue] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.scenario not in available_scenarios():
            available = ", ".join(available_scenarios())
            raise ValueError(f"unknown scenario {self.scenario!r}; available: {available}")
        if self.N is not None and self.N < 1:
            raise ValueError("N must be at least 1")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.rk not in (1, 2, 3):
            raise ValueError("rk must be 1, 2 or 3")
        if self.scheme not in SCHEME_NAMES:
            raise ValueError(f"scheme must be one of {', '.join(SCHEME_NAMES)}")
        if not self.cfl > 0.0:
            raise ValueError("cfl must be positive")
        if self.t_end is not None and not self.t_end > 0.0:
            raise ValueError("t_end must be positive")
        if self.output_every < 0:
            raise ValueError("output_every must be non-negative")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        if self.precision not in PRECISIONS:
            raise ValueError(f"precision {self.precision!r} is not supported; use 'double'")
        if self.rk < self.k + 1:
            logger.warning(
                f"k={self.k} with rk={self.rk}: time stepping limits the order to {self.rk}"
            )

    def copy(self, **changes: Any) -> RunConfig:
        return replace(self, **changes)


# -----------------------------------------------------------------------------
# Parser
# -----------------------------------------------------------------------------

_RUN_KEYS = {f.name for f in fields(RunConfig)} - {"limiter", "overrides"}
_LIMITER_KEYS = {f.name for f in fields(LimiterConfig)}
_SECTIONS = ("run", "limiter", "scenario")


def _convert(key: str, text: str, target: type, line: int) -> Any:
    try:
        if target is bool:
            lowered = text.lower()
            if lowered in ("1", "true", "yes", "on"):
                return True
            if lowered in ("0", "false", "no", "off"):
                return False
            raise ValueError
        if target is int:
            number = float(text)
            if number != int(number):
                raise ValueError
            return int(number)
        if target is float:
            return float(text)
        return text
    except ValueError:
        raise ConfigError(f"{key}: expected {target.__name__}, got {text!r}", line) from None


_RUN_TYPES: dict[str, type] = {
    "scenario": str,
    "N": int,
    "k": int,
    "rk": int,
    "scheme": str,
    "cfl": float,
    "t_end": float,
    "output_dir": str,
    "output_every": int,
    "threads": int,
    "precision": str,
}
_LIMITER_TYPES: dict[str, type] = {
    "enabled": bool,
    "beta": float,
    "M": float,
    "noise_floor": float,
}


def _strip_comment(raw: str) -> str:
    for marker in ("#", ";"):
        index = raw.find(marker)
        if index >= 0:
            raw = raw[:index]
    return raw.strip()


def parse_config(text: str) -> RunConfig:
    """
    Parse run-file text into a validated RunConfig.

    Raises:
        ConfigError: On syntax errors, unknown keys, bad values or a
                     missing scenario (with the offending line where known)
    """
    run: dict[str, Any] = {}
    limiter: dict[str, Any] = {}
    overrides: dict[str, ParamValue] = {}
    override_lines: dict[str, int] = {}
    section = "run"

    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {line!r}", number)
            section = line[1:-1].strip().lower()
            if section not in _SECTIONS:
                raise ConfigError(
                    f"unknown section [{section}]; known: {', '.join(_SECTIONS)}", number
                )
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {line!r}", number)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError("empty key", number)

        if section == "scenario":
            overrides[key] = value
            override_lines[key] = number
            continue
        if section == "limiter" or key.startswith("limiter."):
            name = key.split(".", 1)[1] if key.startswith("limiter.") else key
            if name not in _LIMITER_KEYS:
                known = ", ".join(sorted(_LIMITER_KEYS))
                raise ConfigError(f"unknown limiter key {name!r}; known: {known}", number)
            limiter[name] = _convert(key, value, _LIMITER_TYPES[name], number)
            continue
        if key not in _RUN_KEYS:
            known = ", ".join(sorted(_RUN_KEYS | {f"limiter.{k}" for k in _LIMITER_KEYS}))
            raise ConfigError(f"unknown key {key!r}; known: {known}", number)
        run[key] = _convert(key, value, _RUN_TYPES[key], number)

    if "scenario" not in run:
        raise ConfigError("scenario is required")
    if run.get("precision", "double") not in PRECISIONS:
        raise ConfigError(
            f"precision {run['precision']!r} is not supported; double is the only mode"
        )

    try:
        make_scenario(run["scenario"], overrides)
    except ValueError as e:
        lines = [override_lines[k] for k in overrides if k in str(e)]
        raise ConfigError(str(e), lines[0] if lines else None) from None
    except ProfileFileError as e:
        raise ConfigError(str(e), override_lines.get("profile")) from None

    try:
        return RunConfig(limiter=LimiterConfig(**limiter), overrides=overrides, **run)
    except ValueError as e:
        raise ConfigError(str(e)) from None


def load_config(path: PathLike) -> RunConfig:
    """
    Read and parse a run file.

    Raises:
        ConfigError: If the file cannot be read or parsed
    """
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from None
    return parse_config(text)


def config_to_text(config: RunConfig) -> str:
    """Render a config back to run-file text."""
    lines = []
    for f in fields(RunConfig):
        if f.name in ("limiter", "overrides"):
            continue
        value = getattr(config, f.name)
        if value is not None:
            lines.append(f"{f.name} = {value}")
    lines.append("")
    lines.append("[limiter]")
    for f in fields(LimiterConfig):
        lines.append(f"{f.name} = {getattr(config.limiter, f.name)}")
    if config.overrides:
        lines.append("")
        lines.append("[scenario]")
        for key, value in config.overrides.items():
            lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


__all__ = ["RunConfig", "parse_config", "load_config", "config_to_text"]
