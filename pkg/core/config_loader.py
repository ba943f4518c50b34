"""Configuration loading: YAML/JSON files, deep merge and ZIEGLER_* overrides."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any

import yaml  # type: ignore[import-untyped]
from pydantic import ValidationError

from core.config_models import LabConfig
from core.errors import ConfigError
from core.logger import LOG_LEVEL_ENV, get_logger

ENV_PREFIX = "ZIEGLER_"
DEFAULTS_PATH = Path("config/defaults.yaml")


def load_lab_config(path: Path = DEFAULTS_PATH) -> LabConfig:
    """Load lab defaults; a missing file yields the built-in defaults."""

    raw_data = read_mapping(path) if path.exists() else {}
    apply_env_overrides(raw_data)
    try:
        return LabConfig.model_validate(raw_data)
    except ValidationError as exc:
        log_validation_error(exc, source=str(path))
        raise


def read_mapping(path: Path) -> dict[str, Any]:
    """Parse a JSON or YAML file whose top level is a mapping."""

    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    text = path.read_text(encoding="utf-8")
    try:
        loaded = json.loads(text) if path.suffix.lower() == ".json" else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if loaded is None:
        return {}
    if not isinstance(loaded, dict):
        raise ConfigError(f"{path} must contain a mapping at top level")
    return loaded


def deep_merge(base: dict[str, Any], updates: dict[str, Any]) -> None:
    """Recursively merge `updates` into `base` in place."""

    for key, value in updates.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            deep_merge(base[key], value)
        else:
            base[key] = value


def apply_env_overrides(data: dict[str, Any], prefix: str = ENV_PREFIX) -> None:
    """ZIEGLER_A__B=value sets data["a"]["b"] to the YAML-parsed value."""

    for env_key, raw_value in sorted(os.environ.items()):
        if not env_key.startswith(prefix) or env_key == LOG_LEVEL_ENV:
            continue

        path_parts = env_key[len(prefix) :].lower().split("__")
        parsed_value = yaml.safe_load(raw_value) if raw_value else raw_value

        cursor = data
        for part in path_parts[:-1]:
            next_cursor = cursor.get(part)
            if not isinstance(next_cursor, dict):
                next_cursor = {}
                cursor[part] = next_cursor
            cursor = next_cursor

        cursor[path_parts[-1]] = parsed_value


def log_validation_error(exc: ValidationError, *, source: str) -> None:
    log = get_logger("core.config_loader")
    for error in exc.errors():
        location = ".".join(str(value) for value in error.get("loc", ()))
        log.error("config_validation_error", source=source, field=location, error=error.get("msg"))


__all__ = [
    "DEFAULTS_PATH",
    "ENV_PREFIX",
    "apply_env_overrides",
    "deep_merge",
    "load_lab_config",
    "log_validation_error",
    "read_mapping",
]
