"""Energy-reduction helpers and two-parameter families of symmetric periodic orbits."""

from __future__ import annotations

import math
from enum import StrEnum

import numpy as np
from joblib import Parallel, delayed
from scipy import ndimage

from core.errors import ParameterDomainError, ZieglerError
from core.logger import get_logger
from integrator.integrator_models import IntegratorConfig
from model.equations import FieldKind, SeparableForm, ZieglerField
from model.params import Params
from model.states import ReducedState
from periodic.detector import DEFAULT_DEFECT_TOL, DEFAULT_HORIZON, detect_periodic
from periodic.periodic_models import (
    CellStatus,
    FamilyCell,
    FamilyCoherence,
    FamilyGrid,
    GridSpec,
    PeriodicOrbit,
)

DEFAULT_JUMP_FACTOR = 10.0


class UVariant(StrEnum):
    """PRINTED omits m3*l3^2 from U; CONSISTENT takes U equal to A22."""

    PRINTED = "printed"
    CONSISTENT = "consistent"


def uv_functions(p: Params, phi1: float, variant: UVariant = UVariant.PRINTED) -> tuple[float, float]:
    """(U, V) such that phi2' = (K - V*phi1') / U."""

    c = p.coupling * math.cos(phi1)
    v = p.inertia_sum + c
    base = p.total_mass * p.l2**2 + 2.0 * c
    if variant is UVariant.PRINTED:
        u = p.m1 * p.l1**2 + base
    else:
        u = p.inertia_sum + base
    return u, v


def reduced_energy(
    p: Params,
    phi1: float,
    v1: float,
    K: float,
    variant: UVariant = UVariant.PRINTED,
) -> float:
    """Energy with phi2' eliminated through the momentum integral K."""

    u, v = uv_functions(p, phi1, variant)
    outer = (K - v * v1) / u
    lever = (K + (u - v) * v1) / u
    kinetic = (
        0.5 * p.l2**2 * p.total_mass * outer**2
        + 0.5 * p.inertia_sum * lever**2
        + outer * lever * math.cos(phi1) * p.coupling
    )
    return kinetic + 0.5 * p.k1 * phi1**2


def critical_v1(p: Params, K: float, variant: UVariant = UVariant.PRINTED) -> float:
    """phi1' at which the reduced energy is stationary on the axis phi1 = 0."""

    u, v = uv_functions(p, 0.0, variant)
    outer = p.l2**2 * p.total_mass
    inertia = p.inertia_sum
    c = p.coupling
    numerator = v * K * outer + K * (v - u) * inertia + (2.0 * v - u) * K * c
    denominator = v * v * outer + (u - v) ** 2 * inertia - 2.0 * v * (u - v) * c
    if not denominator > 0.0:
        raise ParameterDomainError(f"critical velocity denominator not positive: {denominator!r}")
    return numerator / denominator


def _family_cell(
    p: Params,
    row: int,
    col: int,
    v1: float,
    v2: float,
    cfg: IntegratorConfig,
    horizon: float,
    defect_tol: float,
    kind: FieldKind,
    alpha: float,
    separable_form: SeparableForm,
) -> FamilyCell:
    try:
        field = ZieglerField(p, kind, alpha=alpha, separable_form=separable_form)
        outcome = detect_periodic(
            p,
            ReducedState(0.0, v1, v2),
            cfg,
            horizon=horizon,
            defect_tol=defect_tol,
            vector_field=field,
        )
    except ZieglerError as exc:
        get_logger("periodic.symmetric_families").warning(
            "family_cell_failed",
            row=row,
            col=col,
            error=str(exc),
        )
        return FamilyCell(row=row, col=col, v1=v1, v2=v2, status=CellStatus.FAILED, error=str(exc))

    if isinstance(outcome, PeriodicOrbit):
        return FamilyCell(
            row=row,
            col=col,
            v1=v1,
            v2=v2,
            status=CellStatus.PERIODIC,
            period=outcome.period,
            return_defect=outcome.return_defect,
        )
    return FamilyCell(
        row=row,
        col=col,
        v1=v1,
        v2=v2,
        status=CellStatus.NOT_PERIODIC,
        return_defect=outcome.return_defect,
        reason=outcome.reason,
    )


def map_family(
    p: Params,
    grid: GridSpec,
    cfg: IntegratorConfig,
    *,
    horizon: float = DEFAULT_HORIZON,
    defect_tol: float = DEFAULT_DEFECT_TOL,
    kind: FieldKind = FieldKind.REDUCED,
    alpha: float = 0.0,
    separable_form: SeparableForm = SeparableForm.DERIVED,
    jobs: int = 1,
) -> FamilyGrid:
    """Run the detector over anchor-plane initial conditions (0, v1, v2)."""

    if p.k2 != 0.0:
        raise ParameterDomainError(f"reduction invalid: family mapping requires k2 == 0, got k2={p.k2!r}")
    ZieglerField(p, kind, alpha=alpha, separable_form=separable_form)
    v1_values = grid.v1.values()
    v2_values = grid.v2.values()
    tasks = [
        (row, col, float(v1), float(v2))
        for row, v1 in enumerate(v1_values)
        for col, v2 in enumerate(v2_values)
    ]
    flat = Parallel(n_jobs=jobs)(
        delayed(_family_cell)(p, row, col, v1, v2, cfg, horizon, defect_tol, kind, alpha, separable_form)
        for row, col, v1, v2 in tasks
    )
    n_cols = len(v2_values)
    cells = tuple(tuple(flat[row * n_cols : (row + 1) * n_cols]) for row in range(len(v1_values)))
    result = FamilyGrid(spec=grid, params=p, cells=cells)
    get_logger("periodic.symmetric_families").info(
        "family_mapped",
        rows=len(v1_values),
        cols=n_cols,
        periodic_fraction=result.periodic_fraction(),
    )
    return result


def family_coherence(grid: FamilyGrid, jump_factor: float = DEFAULT_JUMP_FACTOR) -> FamilyCoherence:
    """Largest 4-connected periodic region and period continuity along its rows."""

    mask = grid.status_mask()
    labels, region_count = ndimage.label(mask)
    if region_count == 0:
        return FamilyCoherence(
            largest_region_cells=0,
            region_count=0,
            region_mask=np.zeros_like(mask),
            row_continuity_ok=False,
            worst_jump_ratio=math.inf,
        )
    sizes = np.bincount(labels.ravel())[1:]
    largest = int(np.argmax(sizes)) + 1
    region = labels == largest

    periods = grid.periods()
    worst = 0.0
    for row_index in range(region.shape[0]):
        in_region = region[row_index]
        pairs = in_region[:-1] & in_region[1:]
        if not pairs.any():
            continue
        diffs = np.abs(np.diff(periods[row_index]))[pairs]
        median = float(np.median(diffs))
        peak = float(np.max(diffs))
        if median > 0.0:
            worst = max(worst, peak / median)
        elif peak > 0.0:
            worst = math.inf
    return FamilyCoherence(
        largest_region_cells=int(sizes[largest - 1]),
        region_count=int(region_count),
        region_mask=region,
        row_continuity_ok=worst <= jump_factor,
        worst_jump_ratio=worst,
    )


__all__ = [
    "DEFAULT_JUMP_FACTOR",
    "UVariant",
    "critical_v1",
    "family_coherence",
    "map_family",
    "reduced_energy",
    "uv_functions",
]
