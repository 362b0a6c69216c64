# =============================================================================
# EulerPoisson - Output Module
# =============================================================================
#
# CSV writers for the energy ledger and profile snapshots, the text table
# of convergence rates, and the reader for radial profile files.
#
# All numbers are written with 17 significant digits so that round-off
# level differences survive the dump, and identical runs give identical
# files.
#
# Usage:
#     from eulerpoisson.output import write_ledger_csv, load_profile
#
#     write_ledger_csv(ledger, "out/ledger.csv")
#     r, rho, u = load_profile("yahil_150ms.txt")
#
# =============================================================================

"""
CSV output and profile-file input.
"""

from __future__ import annotations

import csv
import io
import logging
import os
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import TextIO, Union

import numpy as np

from eulerpoisson.diagnostics import LEDGER_COLUMNS, ConvergenceTable, EnergyLedger
from eulerpoisson.dg_field import StateField
from eulerpoisson.eos.base import BaseEos
from eulerpoisson.errors import ProfileFileError
from eulerpoisson.poisson import GravityField

logger = logging.getLogger("eulerpoisson.output")

PathLike = Union[str, os.PathLike]
Destination = Union[PathLike, TextIO]

SNAPSHOT_COLUMNS = ("r", "rho", "u", "p", "phi")
VARIABLES = ("rho", "mom", "E")


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write_rows(dest: Destination, header: Sequence[str], rows: Iterable[Sequence[float]]) -> None:
    if isinstance(dest, (str, os.PathLike)):
        path = Path(dest)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as f:
            _write_rows(f, header, rows)
        return
    writer = csv.writer(dest, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


# -----------------------------------------------------------------------------
# Writers
# -----------------------------------------------------------------------------


def write_ledger_csv(ledger: EnergyLedger, dest: Destination) -> None:
    """Write the ledger rows (t, E_int, E_kin, E_grav, E_tot, dE_step, dE_cum, rho_c)."""
    _write_rows(dest, LEDGER_COLUMNS, (row.as_tuple() for row in ledger.rows))


def ledger_csv_text(ledger: EnergyLedger) -> str:
    buffer = io.StringIO()
    write_ledger_csv(ledger, buffer)
    return buffer.getvalue()


def write_snapshot_csv(
    state: StateField, gravity: GravityField, eos: BaseEos, dest: Destination
) -> None:
    """Write r, rho, u, p and phi at every volume quadrature node."""
    space = state.space
    rho, mom, ene = space.nodes(state.coeffs)
    u = mom / rho
    p = eos.pressure_from_conserved(rho, mom, ene)
    columns = [space.r_nodes, rho, u, p, gravity.phi_nodes]
    rows = np.stack([np.ravel(c) for c in columns], axis=1)
    _write_rows(dest, SNAPSHOT_COLUMNS, rows)


def format_rate_table(table: ConvergenceTable) -> str:
    """
    Plain-text table of L1 errors and observed orders.

    Example:
        N      err_rho    rate  ...
        25     1.2e-05    -
        50     1.5e-06    3.00
    """
    header = f"{'N':>6}" + "".join(f"  {'err_' + v:>22}  {'rate':>6}" for v in VARIABLES)
    lines = [header]
    for i, n in enumerate(table.meshes):
        cells = []
        for c in range(3):
            rate = "-" if i == 0 else f"{table.rates[i - 1, c]:6.2f}"
            cells.append(f"  {fmt(table.errors[i, c]):>22}  {rate:>6}")
        lines.append(f"{n:>6}" + "".join(cells))
    return "\n".join(lines)


# -----------------------------------------------------------------------------
# Profile files
# -----------------------------------------------------------------------------


def load_profile(path: PathLike) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Read a radial profile: whitespace-separated r, rho and optionally u.

    Lines starting with '#' are skipped. A two-column file gives u = 0.

    Returns:
        (r, rho, u), with r strictly increasing

    Raises:
        ProfileFileError: If the file is missing, empty or malformed
    """
    path = Path(path)
    if not path.is_file():
        raise ProfileFileError(f"profile file not found: {path}")
    try:
        data = np.loadtxt(path, comments="#", ndmin=2)
    except ValueError as e:
        raise ProfileFileError(f"{path}: {e}") from None
    if data.size == 0:
        raise ProfileFileError(f"{path}: no data rows")
    if data.shape[1] not in (2, 3):
        raise ProfileFileError(f"{path}: expected 2 or 3 columns, found {data.shape[1]}")
    if not np.all(np.isfinite(data)):
        raise ProfileFileError(f"{path}: non-finite values")
    r, rho = data[:, 0], data[:, 1]
    u = data[:, 2] if data.shape[1] == 3 else np.zeros_like(r)
    if r.size > 1 and not np.all(np.diff(r) > 0.0):
        raise ProfileFileError(f"{path}: radii must be strictly increasing")
    if not np.all(rho > 0.0):
        raise ProfileFileError(f"{path}: density must be positive")
    logger.debug(f"loaded profile {path} with {r.size} rows")
    return r, rho, u


__all__ = [
    "SNAPSHOT_COLUMNS",
    "write_ledger_csv",
    "ledger_csv_text",
    "write_snapshot_csv",
    "format_rate_table",
    "load_profile",
]
