"""Command-line entry point: `ziegler-lab <subcommand> --config run.json`."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from cli.commands import COMMANDS, CommandReport
from cli.run_config import Command, load_run_config
from core.config_loader import DEFAULTS_PATH, load_lab_config
from core.config_models import U64_MAX
from core.errors import (
    ConfigError,
    IntegrationError,
    NonFiniteStateError,
    ParameterDomainError,
    SingularInertiaError,
)
from core.logger import configure_logging, get_logger

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _seed(raw: str) -> int:
    value = int(raw, 0)
    if not 0 <= value <= U64_MAX:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {raw}")
    return value


def _jobs(raw: str) -> int:
    value = int(raw)
    if value == 0 or value < -1:
        raise argparse.ArgumentTypeError("jobs must be a positive integer or -1")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ziegler-lab", description="Ziegler pendulum numerical laboratory")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        sub = subparsers.add_parser(command.value)
        sub.add_argument("--config", type=Path, required=True)
        sub.add_argument("--out", type=Path, default=Path("out"))
        sub.add_argument("--jobs", type=_jobs, default=1)
        sub.add_argument("--seed", type=_seed, default=None)
        sub.add_argument("--defaults", type=Path, default=DEFAULTS_PATH)
    return parser


def _parse_args(argv: list[str] | None) -> argparse.Namespace:
    return _build_parser().parse_args(argv)


def _emit_error(kind: str, message: str, details: Any = None) -> None:
    payload = {"error": kind, "message": message, "details": details if details is not None else []}
    sys.stderr.write(json.dumps(payload, sort_keys=True, default=str) + "\n")


def _validation_details(exc: ValidationError) -> list[dict[str, Any]]:
    return [
        {"field": ".".join(str(part) for part in error.get("loc", ())), "error": error.get("msg")}
        for error in exc.errors()
    ]


def _prepare_out_dir(path: Path) -> Path:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"output directory not writable: {path}", details=[{"os_error": str(exc)}]) from exc
    return path


def _print_report(console: Console, report: CommandReport) -> None:
    table = Table(title=f"{report.command.value} result")
    table.add_column("Metric")
    table.add_column("Value", justify="right")
    for key, value in report.summary.items():
        table.add_row(key, f"{value:.6g}" if isinstance(value, float) else str(value))
    if report.truncated:
        table.add_row("truncated", "yes")
    console.print(table)
    for path in report.artifacts:
        console.print(f"wrote {path}")


def _run(args: argparse.Namespace) -> int:
    lab = load_lab_config(args.defaults)
    configure_logging(
        run_id=str(lab.system.run_id),
        environment=lab.system.environment.value,
        log_level=lab.system.log_level.value,
        log_dir=Path(lab.system.log_dir),
    )
    log = get_logger("cli.main", command=args.command)

    overrides: dict[str, Any] = {"command": args.command}
    if args.seed is not None:
        overrides["lyapunov"] = {"seed": args.seed}
    run = load_run_config(args.config, lab=lab, overrides=overrides)
    out_dir = _prepare_out_dir(args.out)

    log.info("run_started", config=str(args.config), out=str(out_dir), jobs=args.jobs)
    report = COMMANDS[run.command](run, out_dir, jobs=args.jobs)
    log.info("run_finished", artifacts=len(report.artifacts), truncated=report.truncated)
    _print_report(Console(), report)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _parse_args(argv)
    try:
        return _run(args)
    except ValidationError as exc:
        _emit_error("config_error", "run configuration failed validation", _validation_details(exc))
        return EXIT_CONFIG
    except ConfigError as exc:
        _emit_error("config_error", str(exc), exc.details)
        return EXIT_CONFIG
    except (ParameterDomainError, NonFiniteStateError) as exc:
        _emit_error("parameter_domain_error", str(exc))
        return EXIT_CONFIG
    except IntegrationError as exc:
        _emit_error("integration_error", str(exc), [{"partial_written": exc.partial is not None}])
        return EXIT_NUMERICAL
    except SingularInertiaError as exc:
        _emit_error("singular_inertia", str(exc))
        return EXIT_NUMERICAL


__all__ = ["EXIT_CONFIG", "EXIT_NUMERICAL", "EXIT_OK", "main"]
