# =============================================================================
# EulerPoisson - Driver Tests
# =============================================================================
#
# Tests cover:
# - Equilibrium preservation and energy bookkeeping over full runs
# - Snapshot and ledger files
# - Abort context and determinism
# - Convergence sweeps
#
# =============================================================================
"""Tests for run orchestration."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from eulerpoisson.config import RunConfig
from eulerpoisson.driver import convergence_sweep, run
from eulerpoisson.errors import SolverAbortError
from eulerpoisson.output import ledger_csv_text
from eulerpoisson.problems import make_scenario
from eulerpoisson.stepper import Stepper


class TestRun:
    """Test run."""

    def test_equilibrium_kept(self) -> None:
        """The gamma = 2 polytrope stays put to round-off."""
        report = run(RunConfig(scenario="wb_gamma2", N=20, t_end=0.05))
        scenario = make_scenario("wb_gamma2")
        initial = scenario.initial_state(scenario.build_mesh(20), 2)

        assert report.t_final == pytest.approx(0.05, rel=1e-14)
        assert report.steps > 0
        assert float(np.max(np.abs(report.state.coeffs - initial.coeffs))) < 1e-11
        assert report.l1_errors is not None
        assert report.bounce_time is None

    def test_explosion_energy(self) -> None:
        """Every ledger step of a short explosion is round-off."""
        report = run(RunConfig(scenario="explosion", N=40, t_end=0.005))
        first = report.ledger.rows[0]

        assert len(report.ledger.rows) == report.steps + 1
        assert report.ledger.max_abs_step() < 1e-12 * (abs(first.E_int) + abs(first.E_grav))
        assert report.l1_errors is None
        assert "dE_cum" in report.summary()

    def test_output_files(self, tmp_path: Path) -> None:
        """Snapshots at the cadence and at the end, plus the ledger."""
        out = tmp_path / "explosion"
        report = run(
            RunConfig(
                scenario="explosion", N=20, t_end=0.003, output_dir=str(out), output_every=2
            )
        )

        assert (out / "ledger.csv").is_file()
        assert (out / "snapshot_000000.csv").is_file()
        assert report.snapshots[-1].name == f"snapshot_{report.steps:06d}.csv"
        rows = (out / "ledger.csv").read_text().splitlines()
        assert len(rows) == report.steps + 2

    def test_deterministic(self) -> None:
        """Identical configs give identical ledgers."""
        config = RunConfig(scenario="explosion", N=20, t_end=0.002)

        assert ledger_csv_text(run(config).ledger) == ledger_csv_text(run(config).ledger)

    def test_abort_context(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Step failures carry the step index and time."""

        def fail(*args: object, **kwargs: object) -> None:
            raise SolverAbortError("negative pressure", cell=4)

        monkeypatch.setattr(Stepper, "step", fail)

        with pytest.raises(SolverAbortError) as excinfo:
            run(RunConfig(scenario="explosion", N=20, t_end=0.002))
        assert excinfo.value.step == 0
        assert excinfo.value.time == 0.0
        assert excinfo.value.cell == 4


class TestConvergenceSweep:
    """Test convergence_sweep."""

    def test_one_mesh(self) -> None:
        """Two meshes are needed."""
        with pytest.raises(ValueError):
            convergence_sweep(RunConfig(scenario="manufactured"), [10])

    def test_small_reference(self) -> None:
        """The reference run must be finer than every mesh."""
        with pytest.raises(ValueError, match="reference_N"):
            convergence_sweep(RunConfig(scenario="explosion"), [20, 40], reference_N=40)

    @pytest.mark.slow
    def test_manufactured_third_order(self) -> None:
        """k = 2 converges at third order on the manufactured solution."""
        table = convergence_sweep(RunConfig(scenario="manufactured", t_end=0.05), [10, 20, 40])

        assert np.all(table.rates[-1] > 2.5)
