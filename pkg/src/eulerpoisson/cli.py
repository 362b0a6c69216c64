# =============================================================================
# EulerPoisson - Command Line Module
# =============================================================================
#
# Usage:
#     eulerpoisson run runs/explosion.cfg --out out/explosion
#     eulerpoisson sweep runs/manufactured.cfg --meshes 25,50,100,200
#     eulerpoisson ledger runs/explosion.cfg > ledger.csv
#
# Exit codes:
#     0  success
#     2  configuration error
#     3  solver abort or invalid state
#
# =============================================================================

"""
Command-line entry point.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from eulerpoisson import __version__
from eulerpoisson.config import RunConfig, load_config
from eulerpoisson.driver import DEFAULT_REFERENCE_N, convergence_sweep, run
from eulerpoisson.errors import ConfigError, InvalidStateError, SolverAbortError
from eulerpoisson.output import format_rate_table, write_ledger_csv

logger = logging.getLogger("eulerpoisson.cli")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ABORT = 3


def _mesh_list(text: str) -> list[int]:
    try:
        meshes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if len(meshes) < 2:
        raise argparse.ArgumentTypeError("need at least two meshes")
    return meshes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulerpoisson",
        description="Spherically symmetric Euler-Poisson RKDG solver.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")

    commands = parser.add_subparsers(dest="command", required=True)

    run_cmd = commands.add_parser("run", help="run one configuration")
    run_cmd.add_argument("config", help="run file")
    run_cmd.add_argument("--out", metavar="DIR", help="output directory (overrides output_dir)")
    run_cmd.add_argument("--threads", type=int, metavar="N", help="worker threads")

    sweep_cmd = commands.add_parser("sweep", help="mesh refinement study")
    sweep_cmd.add_argument("config", help="run file")
    sweep_cmd.add_argument(
        "--meshes", type=_mesh_list, required=True, metavar="N1,N2,...", help="cell counts"
    )
    sweep_cmd.add_argument(
        "--reference-n",
        type=int,
        default=DEFAULT_REFERENCE_N,
        help="cells of the reference run when no exact solution exists",
    )

    ledger_cmd = commands.add_parser("ledger", help="print the energy ledger as CSV")
    ledger_cmd.add_argument("config", help="run file")
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _load(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config)
    changes: dict[str, object] = {}
    if getattr(args, "out", None):
        changes["output_dir"] = args.out
    if getattr(args, "threads", None) is not None:
        changes["threads"] = args.threads
    if changes:
        try:
            config = config.copy(**changes)
        except ValueError as e:
            raise ConfigError(str(e)) from None
    return config


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line; returns the exit code."""
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        config = _load(args)
        if args.command == "run":
            report = run(config)
            print(report.summary())
        elif args.command == "sweep":
            table = convergence_sweep(config, args.meshes, args.reference_n)
            print(format_rate_table(table))
        else:
            report = run(config.copy(output_dir=None, output_every=0))
            write_ledger_csv(report.ledger, sys.stdout)
    except ConfigError as e:
        logger.error(f"configuration error: {e}")
        return EXIT_CONFIG
    except (SolverAbortError, InvalidStateError) as e:
        logger.error(f"solver aborted: {e}")
        return EXIT_ABORT
    except ValueError as e:
        logger.error(f"configuration error: {e}")
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
