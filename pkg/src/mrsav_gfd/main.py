"""
Command-line entry point for the mrsav-gfd harness.
"""
import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import structlog

from mrsav_gfd.config import load_document, parse_config, parse_override
from mrsav_gfd.errors import (
    CheckpointError, ConfigurationError, DivergenceError, MrSavError, NumericFaultError, PreconditionError,
    SchemaError, SingularModeError, SingularScalarSolveError,
)
from mrsav_gfd.logging_config import configure_logging
from mrsav_gfd.models.run_config import DiagnosticsSection
from mrsav_gfd.services.analysis_service import run_diagnostics
from mrsav_gfd.services.convergence_service import run_convergence_study
from mrsav_gfd.services.service_provider import ServiceProvider
from mrsav_gfd.services.simulation_service import CONFIG_FILE, run_simulation

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_DIVERGED = 3
EXIT_IO = 4

FLAG_TARGETS = {
    "k": "stepper.k",
    "gamma": "stepper.gamma",
    "duration": "run.duration",
    "modes": "grid.modes",
    "output_dir": "output.directory",
}


def exit_code_for(error: BaseException) -> int:
    """Map an exception onto the documented exit codes."""
    if isinstance(error, (ConfigurationError, PreconditionError, SingularModeError)):
        return EXIT_CONFIG
    if isinstance(error, (DivergenceError, SingularScalarSolveError, NumericFaultError)):
        return EXIT_DIVERGED
    if isinstance(error, (OSError, CheckpointError, SchemaError)):
        return EXIT_IO
    return EXIT_FAILURE


def collect_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    for flag, key_path in FLAG_TARGETS.items():
        value = getattr(args, flag, None)
        if value is not None:
            overrides[key_path] = str(value) if flag == "output_dir" else value
    for text in getattr(args, "set", None) or []:
        key_path, value = parse_override(text)
        overrides[key_path] = value
    return overrides


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrsav-gfd", description="mr-SAV-BDF2 pseudo-spectral solvers for 2D NSE/QG and 3D CQG"
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Log DEBUG events")
    parser.add_argument("--log-json", action="store_true", help="Log JSON lines instead of console output")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_run_options(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("config", type=Path, help="TOML or JSON run configuration")
        sub.add_argument("--k", type=float, help="Override stepper.k")
        sub.add_argument("--gamma", type=float, help="Override stepper.gamma")
        sub.add_argument("--duration", type=float, help="Override run.duration")
        sub.add_argument("--modes", type=int, help="Override grid.modes on every axis")
        sub.add_argument("--output-dir", help="Override output.directory")
        sub.add_argument("--set", action="append", metavar="KEY=VALUE", help="Override any dotted config key")
        sub.add_argument("--full", action="store_true", help="Apply the config's full_profile section")

    converge = commands.add_parser("converge", help="Run a temporal convergence study")
    add_run_options(converge)

    simulate = commands.add_parser("simulate", help="Run a long simulation with series and checkpoints")
    add_run_options(simulate)
    simulate.add_argument("--restart", type=Path, help="Continue from a checkpoint file")

    diagnose = commands.add_parser("diagnose", help="Compute PSD, bursts, tails and histogram of a run")
    diagnose.add_argument("run_dir", type=Path, help="Run directory holding series.csv")
    diagnose.add_argument("--config", type=Path, help="Config with a diagnostics section (default: run_dir/config.json)")
    diagnose.add_argument("--set", action="append", metavar="KEY=VALUE", help="Override a diagnostics key")

    plot = commands.add_parser("plot", help="Render SVG plots from a run directory")
    plot.add_argument("run_dir", type=Path, help="Run directory")
    plot.add_argument("--output-dir", type=Path, help="Figure directory (default: run_dir/plots)")
    return parser


def diagnostics_section(args: argparse.Namespace) -> DiagnosticsSection:
    config_path = args.config or args.run_dir / CONFIG_FILE
    document = load_document(config_path) if config_path.exists() else {}
    section = dict(document.get("diagnostics", {}))
    for text in args.set or []:
        key_path, value = parse_override(text)
        section[key_path.removeprefix("diagnostics.")] = value
    try:
        return DiagnosticsSection.model_validate(section)
    except ValueError as error:
        raise ConfigurationError(str(error), key_path="diagnostics") from error


def run_command(args: argparse.Namespace) -> int:
    if args.command == "converge":
        config = parse_config(args.config, collect_overrides(args), full=args.full)
        rows = run_convergence_study(config, ServiceProvider.get_diagnostics_service())
        for row in rows:
            logger.info("row", k=row.k, error_omega=row.error_omega, order_omega=row.order_omega,
                        error_psi=row.error_psi, order_psi=row.order_psi, diverged=row.diverged)
        return EXIT_OK

    if args.command == "simulate":
        config = parse_config(args.config, collect_overrides(args), full=args.full)
        result = run_simulation(config, restart=args.restart, checkpoints=ServiceProvider.get_checkpoint_service())
        if result.diverged:
            logger.error("simulation diverged", step=result.divergence_step, reason=result.divergence_reason)
            return EXIT_DIVERGED
        return EXIT_OK

    if args.command == "diagnose":
        report = run_diagnostics(args.run_dir, diagnostics_section(args), ServiceProvider.get_diagnostics_service())
        logger.info("diagnose finished", files=[str(p) for p in report.written])
        return EXIT_OK

    artifacts = ServiceProvider.get_plot_service().plot_run(args.run_dir, args.output_dir)
    logger.info("plot finished", files=[str(a.path) for a in artifacts])
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(verbose=args.verbose, json_output=args.log_json)
    try:
        return run_command(args)
    except (MrSavError, OSError) as error:
        code = exit_code_for(error)
        logger.error("command failed", command=args.command, error=str(error), exit_code=code)
        return code


if __name__ == "__main__":
    sys.exit(main())
