"""Structured logging configuration helpers."""

from __future__ import annotations

import logging
import os
import sys
from pathlib import Path
from typing import Any, cast

import structlog
from rich.console import Console
from rich.logging import RichHandler
from structlog.stdlib import BoundLogger

LOG_LEVEL_ENV = "ZIEGLER_LOG"
LOG_FILE_NAME = "ziegler_lab.jsonl"

_RUN_ID = "unknown"


def resolve_log_level(configured: str) -> str:
    """Return the level from ZIEGLER_LOG when set, else the configured one."""

    override = os.environ.get(LOG_LEVEL_ENV, "").strip()
    return override.upper() if override else configured.upper()


def configure_logging(
    *,
    run_id: str,
    environment: str,
    log_level: str,
    log_dir: Path = Path("logs"),
) -> None:
    """Configure structlog for a rich console (development) or JSON lines (anything else)."""

    global _RUN_ID
    _RUN_ID = run_id

    level = getattr(logging, resolve_log_level(log_level), logging.INFO)

    shared_processors: list[Any] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso", key="timestamp"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    root_logger = logging.getLogger()
    for existing in list(root_logger.handlers):
        root_logger.removeHandler(existing)
        existing.close()
    root_logger.setLevel(level)

    handler: logging.Handler
    if environment == "development":
        # stdout is reserved for data the CLI may pipe
        handler = RichHandler(
            console=Console(file=sys.stderr),
            rich_tracebacks=True,
            show_path=False,
        )
        renderer: Any = structlog.dev.ConsoleRenderer(colors=False)
    else:
        log_dir.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(log_dir / LOG_FILE_NAME, encoding="utf-8")
        renderer = structlog.processors.JSONRenderer()

    handler.setFormatter(
        structlog.stdlib.ProcessorFormatter(
            processor=renderer,
            foreign_pre_chain=cast(Any, shared_processors),
        )
    )
    root_logger.addHandler(handler)

    structlog.configure(
        processors=cast(
            Any,
            [*shared_processors, structlog.stdlib.ProcessorFormatter.wrap_for_formatter],
        ),
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )

    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(run_id=run_id)


def get_logger(module_name: str, **context: Any) -> BoundLogger:
    """Get a logger bound with module, run id and any extra context."""

    logger = structlog.get_logger(module_name).bind(module=module_name, run_id=_RUN_ID)
    if context:
        logger = logger.bind(**context)
    return cast(BoundLogger, logger)


__all__ = ["LOG_FILE_NAME", "LOG_LEVEL_ENV", "configure_logging", "get_logger", "resolve_log_level"]
