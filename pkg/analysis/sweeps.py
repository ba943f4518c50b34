"""Force sweeps locating the loss of recrossing, and initial-condition sweeps with classification."""

from __future__ import annotations

import math
from collections.abc import Sequence

from joblib import Parallel, delayed

from analysis.analysis_models import SectionPlane, SweepOutcome, SweepResult
from analysis.sections import DEFAULT_MIN_CROSSINGS, classify, point_cloud_geometry, section
from core.errors import ParameterDomainError, ZieglerError
from core.logger import get_logger
from integrator.integrator_models import IntegratorConfig
from lyapunov.mlce import mlce
from model.params import Params
from model.states import FullState, ReducedState
from periodic.detector import DEFAULT_DEFECT_TOL, DEFAULT_HORIZON, detect_periodic
from periodic.periodic_models import PeriodicOrbit

DEFAULT_BRACKET_WIDTH = 0.05
MAX_BISECTIONS = 60


def _force_outcome(
    index: int,
    p: Params,
    s0: ReducedState,
    cfg: IntegratorConfig,
    horizon: float,
    defect_tol: float,
) -> SweepOutcome:
    try:
        result = detect_periodic(p, s0, cfg, horizon=horizon, defect_tol=defect_tol)
    except ZieglerError as exc:
        get_logger("analysis.sweeps").warning("sweep_cell_failed", parameter="F", value=p.F, error=str(exc))
        return SweepOutcome(index=index, value=p.F, error=str(exc))
    periodic = isinstance(result, PeriodicOrbit)
    return SweepOutcome(
        index=index,
        value=p.F,
        periodic=periodic,
        crossing_count=result.crossing_count,
        period=result.period if isinstance(result, PeriodicOrbit) else None,
    )


def _recrosses(outcome: SweepOutcome) -> bool:
    return outcome.crossing_count is not None and outcome.crossing_count >= 2


def force_sweep(
    p_base: Params,
    s0: ReducedState,
    F_values: Sequence[float],
    cfg: IntegratorConfig,
    *,
    horizon: float = DEFAULT_HORIZON,
    defect_tol: float = DEFAULT_DEFECT_TOL,
    bracket_width: float = DEFAULT_BRACKET_WIDTH,
    jobs: int = 1,
) -> SweepResult:
    """Detector run per force value; the first loss of the second phi1 = 0 crossing is bisected.

    `monotone` is True when the recrossing flag switches from True to False exactly
    once over the (non-failed) sweep values.
    """

    if p_base.k2 != 0.0:
        raise ParameterDomainError(f"reduction invalid: force sweep requires k2 == 0, got k2={p_base.k2!r}")
    values = [float(value) for value in F_values]
    outcomes: list[SweepOutcome] = Parallel(n_jobs=jobs)(
        delayed(_force_outcome)(index, p_base.with_updates(F=value), s0, cfg, horizon, defect_tol)
        for index, value in enumerate(values)
    )

    valid = [outcome for outcome in outcomes if not outcome.failed]
    flags = [_recrosses(outcome) for outcome in valid]
    switches = sum(1 for before, after in zip(flags, flags[1:], strict=False) if before != after)
    monotone = bool(flags) and flags[0] and switches == 1

    bracket: tuple[float, float] | None = None
    refinements: list[tuple[float, int]] = []
    for before, after in zip(valid, valid[1:], strict=False):
        if _recrosses(before) and not _recrosses(after):
            low, high = before.value, after.value
            for _ in range(MAX_BISECTIONS):
                if high - low < bracket_width:
                    break
                middle = 0.5 * (low + high)
                probe = _force_outcome(-1, p_base.with_updates(F=middle), s0, cfg, horizon, defect_tol)
                if probe.failed:
                    break
                refinements.append((middle, int(probe.crossing_count or 0)))
                if _recrosses(probe):
                    low = middle
                else:
                    high = middle
            bracket = (low, high)
            break

    get_logger("analysis.sweeps").info(
        "force_sweep_finished",
        values=len(values),
        bracket=bracket,
        monotone=monotone,
    )
    return SweepResult(
        parameter="F",
        values=values,
        outcomes=list(outcomes),
        bracket=bracket,
        monotone=monotone,
        refinements=refinements,
    )


def _ic_outcome(
    index: int,
    v2: float,
    p: Params,
    s0: FullState,
    cfg: IntegratorConfig,
    min_crossings: int,
    seed: int,
    t_total: float,
    renorm_interval: float,
    curve_quantile: float,
) -> SweepOutcome:
    try:
        points = section(p, s0, cfg, SectionPlane.V1_ZERO, min_crossings=min_crossings)
        record = mlce(p, s0, cfg, seed, t_total, renorm_interval)
    except ZieglerError as exc:
        get_logger("analysis.sweeps").warning("sweep_cell_failed", parameter="v2", value=v2, error=str(exc))
        return SweepOutcome(index=index, value=v2, error=str(exc))
    return SweepOutcome(
        index=index,
        value=v2,
        crossing_count=len(points),
        chi=record.final_chi,
        geometry=point_cloud_geometry(points.points, curve_quantile=curve_quantile),
        section=points,
    )


def ic_sweep(
    p: Params,
    base_ic: FullState,
    n_range: Sequence[int],
    cfg: IntegratorConfig,
    *,
    v2_step: float = 0.1,
    min_crossings: int = DEFAULT_MIN_CROSSINGS,
    sampling_factor: int = 1,
    seed: int = 0,
    t_total: float = 1e4,
    renorm_interval: float = 1.0,
    chi_threshold: float = 0.01,
    curve_threshold: float = 0.01,
    curve_quantile: float = 1.0,
    hull_ratio: float = 10.0,
    jobs: int = 1,
) -> SweepResult:
    """Section plus mLCE for the initial conditions (phi1, phi2, v1, (n + 1) * v2_step).

    The hull area of the slowest successful start is the reference for the
    hull-spread test of every other start.

    `sampling_factor` multiplies the crossing count and divides the largest step,
    for checking that the classification is resolution independent.
    """

    if sampling_factor < 1:
        raise ParameterDomainError(f"sampling_factor must be >= 1, got {sampling_factor!r}")
    h_max = cfg.h_max / sampling_factor
    sampled = cfg.with_updates(h_max=h_max, h_init=min(cfg.h_init, h_max))
    crossings = min_crossings * sampling_factor
    indices = list(n_range)
    speeds = [(n + 1) * v2_step for n in indices]
    outcomes: list[SweepOutcome] = Parallel(n_jobs=jobs)(
        delayed(_ic_outcome)(
            n,
            v2,
            p,
            FullState(base_ic.phi1, base_ic.phi2, base_ic.v1, v2),
            sampled,
            crossings,
            seed,
            t_total,
            renorm_interval,
            curve_quantile,
        )
        for n, v2 in zip(indices, speeds, strict=True)
    )
    finished = [(outcome, outcome.geometry) for outcome in outcomes if outcome.geometry is not None]
    reference_area = min(finished, key=lambda pair: pair[0].value)[1].hull_area if finished else None
    for outcome, geometry in finished:
        outcome.classification = classify(
            outcome.chi if outcome.chi is not None else math.nan,
            geometry,
            chi_threshold=chi_threshold,
            curve_threshold=curve_threshold,
            reference_hull_area=reference_area,
            hull_ratio=hull_ratio,
        )
    result = SweepResult(parameter="v2", values=speeds, outcomes=list(outcomes))
    if result.classification_failures:
        get_logger("analysis.sweeps").warning(
            "classification_disagreement",
            indices=result.classification_failures,
        )
    return result


__all__ = ["DEFAULT_BRACKET_WIDTH", "force_sweep", "ic_sweep"]
