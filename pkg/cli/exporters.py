"""Frames and sidecar payloads written by the CLI subcommands."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from analysis.analysis_models import SectionPointSet, SweepResult
from cli.run_config import SCHEMA_VERSION, RunConfig
from core.artifacts import read_csv, version_string, write_csv, write_json
from core.errors import ConfigError
from integrator.integrator_models import Trajectory
from lyapunov.lyapunov_models import LyapunovRecord
from model.params import Params
from model.states import FullState
from observables.invariants import energy, momentum_integral
from periodic.periodic_models import FamilyGrid

TRAJECTORY_REQUIRED = ("t", "phi1", "v1", "v2")


def trajectory_frame(trajectory: Trajectory) -> pd.DataFrame:
    data: dict[str, np.ndarray] = {"t": trajectory.times}
    for name in trajectory.layout.columns:
        data[name] = trajectory.column(name)
    return pd.DataFrame(data)


def observe_frame(frame: pd.DataFrame, p: Params) -> pd.DataFrame:
    """Input trajectory with H and K appended; reduced rows are lifted with phi2 = 0."""

    missing = [name for name in TRAJECTORY_REQUIRED if name not in frame.columns]
    if missing:
        raise ConfigError("trajectory CSV lacks required columns", details=[{"missing": missing}])
    if "H" in frame.columns or "K" in frame.columns:
        raise ConfigError("trajectory CSV already carries H/K columns")
    phi2 = frame["phi2"].to_numpy(dtype=float) if "phi2" in frame.columns else np.zeros(len(frame))
    states = [
        FullState(float(a), float(b), float(c), float(d))
        for a, b, c, d in zip(
            frame["phi1"].to_numpy(dtype=float),
            phi2,
            frame["v1"].to_numpy(dtype=float),
            frame["v2"].to_numpy(dtype=float),
            strict=True,
        )
    ]
    observed = frame.copy()
    observed["H"] = [energy(p, state) for state in states]
    observed["K"] = [momentum_integral(p, state) for state in states]
    return observed


def load_trajectory(path: Path) -> pd.DataFrame:
    return read_csv(path)


def mlce_frames(record: LyapunovRecord) -> tuple[pd.DataFrame, pd.DataFrame]:
    chi = pd.DataFrame({"t": record.times, "chi": record.chi})
    renorm = pd.DataFrame(
        {"t": record.times, "log_norm": record.renorm_log, "accumulated": record.accumulated}
    )
    return chi, renorm


def section_frame(points: SectionPointSet) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "x": points.points[:, 0],
            "y": points.points[:, 1],
            "direction": points.directions,
            "t": points.times,
        }
    )


def sweep_frame(result: SweepResult) -> pd.DataFrame:
    rows = [outcome.to_dict() for outcome in result.outcomes]
    frame = pd.DataFrame(rows)
    frame.insert(1, "parameter", result.parameter)
    return frame


def family_frame(grid: FamilyGrid) -> pd.DataFrame:
    return pd.DataFrame([cell.to_dict() for cell in grid.flat_cells()])


def sidecar(run: RunConfig, results: dict[str, Any], *, truncated: bool = False) -> dict[str, Any]:
    """Run echo without timestamps; its `config` block re-feeds as a run config."""

    return {
        "schema_version": SCHEMA_VERSION,
        "command": run.command.value,
        "version": version_string(),
        "follower_lever": run.params.follower_lever.value,
        "params": run.params.model_dump(mode="json"),
        "config": run.echo(),
        "truncated": truncated,
        "results": results,
    }


def write_sidecar(out_dir: Path, run: RunConfig, results: dict[str, Any], *, truncated: bool = False) -> Path:
    return write_json(out_dir / f"{run.stem}.json", sidecar(run, results, truncated=truncated))


def write_frame(out_dir: Path, name: str, frame: pd.DataFrame) -> Path:
    return write_csv(out_dir / name, frame)


__all__ = [
    "family_frame",
    "load_trajectory",
    "mlce_frames",
    "observe_frame",
    "section_frame",
    "sidecar",
    "sweep_frame",
    "trajectory_frame",
    "write_frame",
    "write_sidecar",
]
