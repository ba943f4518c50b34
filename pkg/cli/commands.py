"""Subcommand drivers: run one operation and write its artifacts."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from analysis.analysis_models import SectionPointSet
from analysis.sections import point_cloud_geometry, section
from analysis.sweeps import force_sweep, ic_sweep
from cli.exporters import (
    family_frame,
    load_trajectory,
    mlce_frames,
    observe_frame,
    section_frame,
    sweep_frame,
    trajectory_frame,
    write_frame,
    write_sidecar,
)
from cli.run_config import Command, RunConfig, SweepKind
from core.errors import ConfigError, IntegrationError
from core.logger import get_logger
from integrator.integrator_models import EventSpec, Trajectory
from integrator.runge_kutta import integrate
from lyapunov.lyapunov_models import LyapunovRecord
from lyapunov.mlce import chi_vs_seed_stability, exponent_verdict, mlce
from model.states import StateLayout
from periodic.detector import detect_periodic, mirror_symmetry_defect
from periodic.periodic_models import PeriodicOrbit
from periodic.symmetric_families import family_coherence, map_family


@dataclass(slots=True)
class CommandReport:
    """Artifacts written by one subcommand and the headline numbers for the console."""

    command: Command
    artifacts: list[Path] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    truncated: bool = False


def _relative_drift(values: np.ndarray) -> float:
    if not len(values):
        return 0.0
    scale = max(abs(float(values[0])), 1.0)
    return float(np.max(np.abs(values - values[0]))) / scale


def _trajectory_results(trajectory: Trajectory, csv_name: str) -> dict[str, Any]:
    return {
        "csv": csv_name,
        "rows": int(len(trajectory.times)),
        "n_steps": trajectory.n_steps,
        "t_final": trajectory.t_final,
        "events": [event.to_dict() for event in trajectory.events],
    }


def cmd_simulate(run: RunConfig, out_dir: Path, *, jobs: int = 1) -> CommandReport:
    field_ = run.field()
    state = run.reduced_state() if run.layout is StateLayout.REDUCED else run.full_state()
    specs = tuple(EventSpec(kind) for kind in run.events)
    csv_name = f"{run.stem}.csv"
    try:
        trajectory = integrate(field_, state, run.integrator, specs, params=run.params)
    except IntegrationError as exc:
        if isinstance(exc.partial, Trajectory):
            partial = exc.partial
            write_frame(out_dir, csv_name, trajectory_frame(partial))
            results = _trajectory_results(partial, csv_name) | {"error": str(exc)}
            write_sidecar(out_dir, run, results, truncated=True)
        raise

    report = CommandReport(Command.SIMULATE, truncated=trajectory.truncated)
    report.artifacts.append(write_frame(out_dir, csv_name, trajectory_frame(trajectory)))
    results = _trajectory_results(trajectory, csv_name)
    report.artifacts.append(write_sidecar(out_dir, run, results, truncated=trajectory.truncated))
    report.summary = {key: results[key] for key in ("rows", "n_steps", "t_final")} | {
        "events": len(trajectory.events)
    }
    return report


def cmd_observe(run: RunConfig, out_dir: Path, *, jobs: int = 1) -> CommandReport:
    source = Path(str(run.input_trajectory))
    observed = observe_frame(load_trajectory(source), run.params)
    csv_name = f"{run.stem}.csv"
    report = CommandReport(Command.OBSERVE)
    report.artifacts.append(write_frame(out_dir, csv_name, observed))
    results = {
        "csv": csv_name,
        "source": str(source),
        "rows": int(len(observed)),
        "energy_drift": _relative_drift(observed["H"].to_numpy(dtype=float)),
        "momentum_drift": _relative_drift(observed["K"].to_numpy(dtype=float)),
    }
    report.artifacts.append(write_sidecar(out_dir, run, results))
    report.summary = {key: results[key] for key in ("rows", "energy_drift", "momentum_drift")}
    return report


def cmd_periodic(run: RunConfig, out_dir: Path, *, jobs: int = 1) -> CommandReport:
    field_ = run.field()
    outcome = detect_periodic(
        run.params,
        run.reduced_state(),
        run.integrator,
        horizon=run.periodic.horizon,
        defect_tol=run.periodic.return_defect_tol,
        vector_field=field_,
    )
    results = outcome.to_dict()
    if isinstance(outcome, PeriodicOrbit):
        results["mirror_defect"] = mirror_symmetry_defect(
            run.params, outcome, run.integrator, vector_field=field_
        )
    report = CommandReport(Command.PERIODIC)
    report.artifacts.append(write_sidecar(out_dir, run, results))
    report.summary = {
        "status": results["status"],
        "crossing_count": results["crossing_count"],
        "period": results.get("period"),
        "return_defect": results.get("return_defect"),
    }
    return report


def _write_mlce(out_dir: Path, run: RunConfig, record: LyapunovRecord) -> list[Path]:
    chi, renorm = mlce_frames(record)
    return [
        write_frame(out_dir, f"{run.stem}.csv", chi),
        write_frame(out_dir, f"{run.stem}_renorm.csv", renorm),
    ]


def cmd_mlce(run: RunConfig, out_dir: Path, *, jobs: int = 1) -> CommandReport:
    settings = run.lyapunov
    state = run.full_state()
    try:
        record = mlce(run.params, state, run.integrator, settings.seed, settings.t_total, settings.renorm_interval)
    except IntegrationError as exc:
        if isinstance(exc.partial, LyapunovRecord):
            _write_mlce(out_dir, run, exc.partial)
            write_sidecar(out_dir, run, exc.partial.summary() | {"error": str(exc)}, truncated=True)
        raise

    report = CommandReport(Command.MLCE)
    report.artifacts.extend(_write_mlce(out_dir, run, record))
    verdict = exponent_verdict(
        record.final_chi,
        regular_threshold=settings.regular_threshold,
        chaotic_ratio=settings.chaotic_ratio,
    )
    results = record.summary() | {
        "regular": record.final_chi < settings.regular_threshold,
        "verdict": verdict.value,
    }
    if settings.check_seeds:
        stability = chi_vs_seed_stability(
            run.params,
            state,
            run.integrator,
            settings.seeds,
            t_total=settings.t_total,
            renorm_interval=settings.renorm_interval,
            regular_threshold=settings.regular_threshold,
            max_spread=settings.max_seed_spread,
            jobs=jobs,
        )
        results["seed_stability"] = stability.to_dict()
    report.artifacts.append(write_sidecar(out_dir, run, results))
    report.summary = {
        "final_chi": record.final_chi,
        "last_decade_min": record.last_decade_min(),
        "regular": results["regular"],
        "verdict": verdict.value,
    }
    return report


def _section_results(run: RunConfig, points: SectionPointSet, csv_name: str) -> dict[str, Any]:
    geometry = point_cloud_geometry(points.points, curve_quantile=run.analysis.curve_quantile)
    return {
        "csv": csv_name,
        "plane": points.plane.value,
        "axes": list(points.plane.axes),
        "crossings": len(points),
        "geometry": geometry.to_dict(),
        "finite_set": geometry.is_finite_set(run.analysis.recurrence_tol),
    }


def cmd_section(run: RunConfig, out_dir: Path, *, jobs: int = 1) -> CommandReport:
    csv_name = f"{run.stem}.csv"
    try:
        points = section(
            run.params,
            run.full_state(),
            run.integrator,
            run.plane,
            min_crossings=run.analysis.min_crossings,
            vector_field=run.field(),
        )
    except IntegrationError as exc:
        if isinstance(exc.partial, SectionPointSet):
            write_frame(out_dir, csv_name, section_frame(exc.partial))
            results = _section_results(run, exc.partial, csv_name) | {"error": str(exc)}
            write_sidecar(out_dir, run, results, truncated=True)
        raise

    report = CommandReport(Command.SECTION, truncated=points.truncated)
    report.artifacts.append(write_frame(out_dir, csv_name, section_frame(points)))
    results = _section_results(run, points, csv_name)
    report.artifacts.append(write_sidecar(out_dir, run, results, truncated=points.truncated))
    report.summary = {
        "crossings": results["crossings"],
        "curve_ratio": results["geometry"]["curve_ratio"],
        "hull_area": results["geometry"]["hull_area"],
    }
    return report


def cmd_sweep(run: RunConfig, out_dir: Path, *, jobs: int = 1) -> CommandReport:
    if run.sweep is None:
        raise ConfigError("sweep command needs a 'sweep' block")
    settings = run.sweep
    log = get_logger("cli.commands")
    report = CommandReport(Command.SWEEP)
    csv_name = f"{run.stem}.csv"

    if settings.kind is SweepKind.FORCE:
        result = force_sweep(
            run.params,
            run.reduced_state(),
            settings.values,
            run.integrator,
            horizon=run.periodic.horizon,
            defect_tol=run.periodic.return_defect_tol,
            bracket_width=run.analysis.bracket_width,
            jobs=jobs,
        )
        report.artifacts.append(write_frame(out_dir, csv_name, sweep_frame(result)))
        results: dict[str, Any] = {
            "kind": settings.kind.value,
            "csv": csv_name,
            "bracket": list(result.bracket) if result.bracket else None,
            "monotone": result.monotone,
            "refinements": [list(item) for item in result.refinements],
        }
        report.summary = {"values": len(result.values), "bracket": results["bracket"], "monotone": result.monotone}

    elif settings.kind is SweepKind.IC:
        analysis = run.analysis
        result = ic_sweep(
            run.params,
            run.full_state(),
            settings.n_values,
            run.integrator,
            v2_step=settings.v2_step,
            min_crossings=analysis.min_crossings,
            sampling_factor=analysis.sampling_factor,
            seed=run.lyapunov.seed,
            t_total=run.lyapunov.t_total,
            renorm_interval=run.lyapunov.renorm_interval,
            chi_threshold=run.lyapunov.regular_threshold,
            curve_threshold=analysis.curve_threshold,
            curve_quantile=analysis.curve_quantile,
            hull_ratio=analysis.hull_ratio,
            jobs=jobs,
        )
        for outcome in result.outcomes:
            if outcome.section is None:
                continue
            name = f"{run.stem}_n{outcome.index:02d}_section.csv"
            report.artifacts.append(write_frame(out_dir, name, section_frame(outcome.section)))
            outcome.section_ref = name
        report.artifacts.append(write_frame(out_dir, csv_name, sweep_frame(result)))
        results = {
            "kind": settings.kind.value,
            "csv": csv_name,
            "classification_failures": result.classification_failures,
            "labels": [label.value if label else None for label in result.labels()],
        }
        report.summary = {
            "values": len(result.values),
            "regular": sum(1 for label in results["labels"] if label == "regular"),
            "disagreements": len(result.classification_failures),
        }

    else:
        if settings.grid is None:
            raise ConfigError("family sweep needs a 'grid' block")
        grid = map_family(
            run.params,
            settings.grid,
            run.integrator,
            horizon=run.periodic.horizon,
            defect_tol=run.periodic.return_defect_tol,
            kind=run.formulation,
            alpha=run.alpha,
            separable_form=run.separable_form,
            jobs=jobs,
        )
        coherence = family_coherence(grid, jump_factor=run.periodic.jump_factor)
        report.artifacts.append(write_frame(out_dir, csv_name, family_frame(grid)))
        results = {
            "kind": settings.kind.value,
            "csv": csv_name,
            "shape": list(grid.shape),
            "periodic_fraction": grid.periodic_fraction(),
            "coherence": coherence.to_dict(),
            "coherent": coherence.largest_region_cells >= run.periodic.min_region_cells
            and coherence.row_continuity_ok,
        }
        report.summary = {
            "cells": grid.shape[0] * grid.shape[1],
            "periodic_fraction": results["periodic_fraction"],
            "largest_region": coherence.largest_region_cells,
            "coherent": results["coherent"],
        }

    report.artifacts.append(write_sidecar(out_dir, run, results))
    log.info("sweep_written", kind=settings.kind.value, artifacts=len(report.artifacts))
    return report


COMMANDS = {
    Command.SIMULATE: cmd_simulate,
    Command.OBSERVE: cmd_observe,
    Command.PERIODIC: cmd_periodic,
    Command.MLCE: cmd_mlce,
    Command.SECTION: cmd_section,
    Command.SWEEP: cmd_sweep,
}


__all__ = [
    "COMMANDS",
    "CommandReport",
    "cmd_mlce",
    "cmd_observe",
    "cmd_periodic",
    "cmd_section",
    "cmd_simulate",
    "cmd_sweep",
]
