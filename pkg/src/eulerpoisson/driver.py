# =============================================================================
# EulerPoisson - Run Driver Module
# =============================================================================
#
# Time loop of one configured run and the mesh-refinement sweep.
#
# A run:
# 1. Builds the scenario, its mesh and the projected initial state
# 2. Steps with the CFL time step until t_end (or the stop density)
# 3. Appends every step to the energy ledger and tracks the central density
# 4. Writes the ledger and profile snapshots when an output directory is set
# 5. Returns a RunReport with errors, bounce data and resource figures
#
# Usage:
#     from eulerpoisson.config import load_config
#     from eulerpoisson.driver import run
#
#     report = run(load_config("runs/explosion.cfg"))
#     print(report.ledger.cumulative)
#
# =============================================================================

"""
Run orchestration and convergence sweeps.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
import psutil

from eulerpoisson.config import RunConfig
from eulerpoisson.dg_field import StateField
from eulerpoisson.diagnostics import (
    ConvergenceTable,
    EnergyLedger,
    central_density,
    convergence_rates,
    delta_E_step,
    energies,
    l1_error,
    state_sampler,
    thermal_energy_ratio,
)
from eulerpoisson.eos.hybrid import HybridEos
from eulerpoisson.errors import SolverAbortError
from eulerpoisson.output import write_ledger_csv, write_snapshot_csv
from eulerpoisson.poisson import GravityField
from eulerpoisson.problems import Scenario, make_scenario
from eulerpoisson.spatial import SchemeVariant, SpatialOperator
from eulerpoisson.stepper import Stepper, cfl_dt

logger = logging.getLogger("eulerpoisson.driver")

DEFAULT_REFERENCE_N = 640

# Remaining time below this fraction of t_end counts as reached
_END_TOLERANCE = 1.0e-14


# -----------------------------------------------------------------------------
# Run Report
# -----------------------------------------------------------------------------


@dataclass(eq=False)
class RunReport:
    """
    Outcome of one run.

    Attributes:
        config: The configuration that produced it
        N: Cell count used
        steps: Steps taken
        t_final: Time reached
        wall_time: Seconds spent in the time loop
        peak_rss: Largest resident set size sampled during the run (bytes)
        ledger: Energy history
        state: Final state
        gravity: Gravity of the final state
        l1_errors: (rho, mom, E) errors against the exact solution, if any
        bounce_time: Time of the largest central density (windowed scenarios)
        bounce_density: That density
        stopped_early: The stop density was reached before t_end
        thermal_ratio: E_th / E_int at the end (hybrid EoS only)
        troubled_cells: Troubled cells summed over all stages
        convergence: Rate table when the run is part of a sweep
    """

    config: RunConfig
    N: int  # noqa: N815
    steps: int
    t_final: float
    wall_time: float
    peak_rss: int
    ledger: EnergyLedger
    state: StateField
    gravity: GravityField
    l1_errors: Optional[np.ndarray] = None
    bounce_time: Optional[float] = None
    bounce_density: Optional[float] = None
    stopped_early: bool = False
    thermal_ratio: Optional[float] = None
    troubled_cells: int = 0
    convergence: Optional[ConvergenceTable] = None
    snapshots: list[Path] = field(default_factory=list)

    def summary(self) -> str:
        lines = [
            f"scenario      {self.config.scenario} (N={self.N}, k={self.config.k}, "
            f"rk={self.config.rk}, scheme={self.config.scheme})",
            f"steps         {self.steps}",
            f"t_final       {self.t_final:.9g}",
            f"E_tot         {self.ledger.last.E_tot:.17g}",
            f"dE_cum        {self.ledger.cumulative:.17g}",
            f"wall time     {self.wall_time:.3f} s",
            f"peak RSS      {self.peak_rss / 2**20:.1f} MiB",
        ]
        if self.l1_errors is not None:
            errors = ", ".join(f"{e:.6e}" for e in self.l1_errors)
            lines.append(f"L1 errors     {errors}")
        if self.bounce_time is not None and self.bounce_density is not None:
            lines.append(f"bounce        t={self.bounce_time:.9g} rho={self.bounce_density:.6e}")
        if self.thermal_ratio is not None:
            lines.append(f"E_th/E_int    {self.thermal_ratio:.6f}")
        if self.stopped_early:
            lines.append("stopped       stop density reached")
        return "\n".join(lines)


def _has_exact(scenario: Scenario, r: float) -> bool:
    return scenario.exact(np.array([r]), 0.0) is not None


def _rss() -> int:
    return int(psutil.Process().memory_info().rss)


# -----------------------------------------------------------------------------
# Run
# -----------------------------------------------------------------------------


def run(config: RunConfig) -> RunReport:
    """
    Run one configuration to its end time.

    Raises:
        SolverAbortError: If a step fails; carries the step index and time
        ValueError: If the scenario overrides are invalid
    """
    scenario = make_scenario(config.scenario, config.overrides)
    N = config.N or scenario.N  # noqa: N806
    t_end = config.t_end or scenario.t_end
    mesh = scenario.build_mesh(N)
    state = scenario.initial_state(mesh, config.k)
    space = state.space

    operator = SpatialOperator(space, scenario, SchemeVariant.from_name(config.scheme))
    stepper = Stepper(operator, config.rk, config.limiter)
    gravity = operator.gravity(state.coeffs[0], 0.0)

    window = scenario.central_window
    rho_c = central_density(state, window)
    ledger = EnergyLedger(mesh.r_min, mesh.R, scenario.G, scenario.four_pi)
    ledger.start(0.0, energies(state, gravity, scenario.four_pi), rho_c)

    out_dir = Path(config.output_dir) if config.output_dir else None
    snapshots: list[Path] = []

    def snapshot(step: int) -> None:
        if out_dir is None:
            return
        path = out_dir / f"snapshot_{step:06d}.csv"
        write_snapshot_csv(state, gravity, scenario.eos, path)
        snapshots.append(path)

    logger.info(
        f"run {scenario.name}: N={N} k={config.k} rk={config.rk} scheme={config.scheme} "
        f"t_end={t_end:g} threads={config.threads}"
    )
    snapshot(0)

    t = 0.0
    steps = 0
    troubled = 0
    bounce_time, bounce_density = 0.0, rho_c
    stopped_early = False
    peak_rss = _rss()
    started = time.perf_counter()

    while t_end - t > _END_TOLERANCE * t_end:
        try:
            dt = min(cfl_dt(state, scenario.eos, config.cfl), t_end - t)
            result = stepper.step(state, gravity, t, dt)
        except SolverAbortError as e:
            raise e.with_context(steps, t) from e
        state, gravity = result.state, result.gravity
        t += dt
        steps += 1
        troubled += result.troubled

        rho_c = central_density(state, window)
        delta_E_step(ledger, t, energies(state, gravity, scenario.four_pi), result.record, rho_c)
        if rho_c > bounce_density:
            bounce_time, bounce_density = t, rho_c

        if config.output_every and steps % config.output_every == 0:
            peak_rss = max(peak_rss, _rss())
            logger.info(
                f"step {steps}: t={t:.9g} dt={dt:.3e} rho_c={rho_c:.6e} "
                f"E_tot={ledger.last.E_tot:.12e}"
            )
            snapshot(steps)

        stop = scenario.stop_density
        if stop is not None and rho_c >= stop:
            stopped_early = True
            logger.info(f"central density {rho_c:.6e} reached stop density at t={t:.9g}")
            break

    wall_time = time.perf_counter() - started
    peak_rss = max(peak_rss, _rss())

    if out_dir is not None:
        if not snapshots or snapshots[-1].name != f"snapshot_{steps:06d}.csv":
            snapshot(steps)
        write_ledger_csv(ledger, out_dir / "ledger.csv")

    l1 = None
    if _has_exact(scenario, mesh.R):
        t_now = t
        l1 = l1_error(state, lambda r: np.asarray(scenario.exact(r, t_now)))

    eos = scenario.eos
    ratio = thermal_energy_ratio(state, eos) if isinstance(eos, HybridEos) else None

    logger.info(
        f"run {scenario.name} done: {steps} steps, t={t:.9g}, "
        f"{wall_time:.2f} s, peak RSS {peak_rss / 2**20:.1f} MiB"
    )
    return RunReport(
        config=config,
        N=N,
        steps=steps,
        t_final=t,
        wall_time=wall_time,
        peak_rss=peak_rss,
        ledger=ledger,
        state=state,
        gravity=gravity,
        l1_errors=l1,
        bounce_time=bounce_time if window is not None else None,
        bounce_density=bounce_density if window is not None else None,
        stopped_early=stopped_early,
        thermal_ratio=ratio,
        troubled_cells=troubled,
        snapshots=snapshots,
    )


# -----------------------------------------------------------------------------
# Convergence Sweep
# -----------------------------------------------------------------------------


def convergence_sweep(
    config: RunConfig,
    meshes: list[int] | tuple[int, ...],
    reference_N: int = DEFAULT_REFERENCE_N,  # noqa: N803
) -> ConvergenceTable:
    """
    L1 errors and observed orders over a sequence of meshes.

    Scenarios with an exact solution are measured against it; the others
    against a run on reference_N cells.

    Raises:
        ValueError: If fewer than two meshes are given
    """
    if len(meshes) < 2:
        raise ValueError("a convergence sweep needs at least two meshes")
    meshes = sorted(int(n) for n in meshes)
    base = config.copy(output_dir=None, output_every=0)

    reference = None
    scenario = make_scenario(config.scenario, config.overrides)
    if not _has_exact(scenario, scenario.build_mesh(meshes[0]).R):
        if reference_N <= meshes[-1]:
            raise ValueError("reference_N must exceed every mesh of the sweep")
        logger.info(f"sweep {config.scenario}: reference run on N={reference_N}")
        reference = state_sampler(run(base.copy(N=reference_N)).state)

    errors = np.empty((len(meshes), 3))
    for i, n in enumerate(meshes):
        report = run(base.copy(N=n))
        if reference is None:
            assert report.l1_errors is not None
            errors[i] = report.l1_errors
        else:
            errors[i] = l1_error(report.state, reference)
        logger.info(f"sweep {config.scenario}: N={n} errors {errors[i]}")

    table = convergence_rates(meshes, errors)
    if not np.all(np.isfinite(table.rates)):
        logger.warning("some convergence rates are undefined (zero or equal errors)")
    return table


__all__ = ["DEFAULT_REFERENCE_N", "RunReport", "run", "convergence_sweep"]
