# =============================================================================
# EulerPoisson - Exceptions Module
# =============================================================================
#
# Exception hierarchy shared by the solver, the scenario library and the
# command line driver. Argument errors use the builtin ValueError and
# IndexError; everything raised here means the solver itself cannot go on.
#
# =============================================================================

"""Exception types raised by EulerPoisson."""

from __future__ import annotations


class EulerPoissonError(Exception):
    """Base class for all EulerPoisson errors."""

    pass


class InvalidStateError(EulerPoissonError):
    """Raised when an object or a physical state is not usable."""

    pass


class ConfigError(EulerPoissonError):
    """
    Raised when a run configuration cannot be parsed or validated.

    Attributes:
        line: 1-based line number in the config text, or None
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ProfileFileError(EulerPoissonError):
    """Raised when an initial profile file is missing columns or malformed."""

    pass


class SolverAbortError(EulerPoissonError):
    """
    Raised when a time step produces an unusable state.

    Attributes:
        reason: Short description of what went wrong
        step: Step index at which the abort happened (None if unknown)
        time: Simulation time at the start of that step (None if unknown)
        cell: 0-based index of the first offending cell (None if global)
    """

    def __init__(
        self,
        reason: str,
        *,
        step: int | None = None,
        time: float | None = None,
        cell: int | None = None,
    ) -> None:
        self.reason = reason
        self.step = step
        self.time = time
        self.cell = cell
        super().__init__(self._format())

    def with_context(self, step: int, time: float) -> SolverAbortError:
        """Return a copy of this error carrying the step/time context."""
        return SolverAbortError(self.reason, step=step, time=time, cell=self.cell)

    def _format(self) -> str:
        parts = [self.reason]
        if self.cell is not None:
            parts.append(f"cell={self.cell}")
        if self.step is not None:
            parts.append(f"step={self.step}")
        if self.time is not None:
            parts.append(f"t={self.time:.9g}")
        return " | ".join(parts)


__all__ = [
    "EulerPoissonError",
    "InvalidStateError",
    "ConfigError",
    "ProfileFileError",
    "SolverAbortError",
]
