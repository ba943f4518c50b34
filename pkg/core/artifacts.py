"""Atomic artifact writing and the version stamp carried by every sidecar."""

from __future__ import annotations

import json
import os
import subprocess
import tempfile
from functools import lru_cache
from importlib import metadata
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from core.errors import ConfigError

DISTRIBUTION_NAME = "ziegler-lab"


def write_atomic_text(path: Path, text: str) -> Path:
    """Write via a temp file in the same directory, then os.replace."""

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        handle, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    except OSError as exc:
        raise ConfigError(f"output path not writable: {path.parent} ({exc})") from exc
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as stream:
            stream.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    return path


def write_csv(path: Path, frame: pd.DataFrame) -> Path:
    """CSV with shortest round-trip floats, no index."""

    text = frame.to_csv(index=False, lineterminator="\n")
    return write_atomic_text(path, text)


def read_csv(path: Path) -> pd.DataFrame:
    if not path.exists():
        raise ConfigError(f"input file not found: {path}")
    return pd.read_csv(path, float_precision="round_trip")


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays and tuples into plain JSON values."""

    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, list | tuple):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def write_json(path: Path, payload: dict[str, Any]) -> Path:
    """Pretty JSON, sorted keys, shortest round-trip floats."""

    text = json.dumps(to_jsonable(payload), indent=2, sort_keys=True, allow_nan=True) + "\n"
    return write_atomic_text(path, text)


@lru_cache(maxsize=1)
def version_string() -> str:
    """Package version, plus `git describe` when run from a checkout."""

    try:
        version = metadata.version(DISTRIBUTION_NAME)
    except metadata.PackageNotFoundError:
        version = "0+unknown"
    try:
        described = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=5,
            check=False,
        )
    except (OSError, subprocess.SubprocessError):
        return version
    tag = described.stdout.strip()
    return f"{version}+{tag}" if described.returncode == 0 and tag else version


__all__ = [
    "DISTRIBUTION_NAME",
    "read_csv",
    "to_jsonable",
    "version_string",
    "write_atomic_text",
    "write_csv",
    "write_json",
]
