"""Result models for periodic-orbit detection and family mapping."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from model.params import Params
from model.states import ReducedState

PERIODIC = "periodic"
NOT_PERIODIC_WITHIN_HORIZON = "not_periodic_within_horizon"


class NotPeriodicReason(StrEnum):
    NO_SECOND_CROSSING = "no_second_crossing"
    DEFECT_TOO_LARGE = "defect_too_large"
    NON_TRANSVERSAL = "non_transversal"


class CellStatus(StrEnum):
    PERIODIC = "periodic"
    NOT_PERIODIC = "not_periodic"
    FAILED = "failed"


def _state_dict(state: ReducedState) -> dict[str, float]:
    return {"phi1": state.phi1, "v1": state.v1, "v2": state.v2}


@dataclass(frozen=True, slots=True)
class PeriodicOrbit:
    """Symmetric periodic orbit anchored on the plane phi1 = 0."""

    anchor: ReducedState
    period: float
    crossing_times: tuple[float, float]
    crossing_states: tuple[ReducedState, ReducedState]
    return_defect: float
    params: Params
    crossing_count: int = 2

    @property
    def status(self) -> str:
        return PERIODIC

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": PERIODIC,
            "anchor": _state_dict(self.anchor),
            "period": self.period,
            "crossing_times": list(self.crossing_times),
            "crossing_states": [_state_dict(state) for state in self.crossing_states],
            "return_defect": self.return_defect,
            "crossing_count": self.crossing_count,
        }


@dataclass(frozen=True, slots=True)
class NotPeriodicReport:
    """Why no orbit was certified within the horizon; not a definitive negative."""

    reason: NotPeriodicReason
    crossing_count: int
    horizon: float
    params: Params
    crossing_times: tuple[float, ...] = ()
    return_defect: float | None = None
    message: str = ""

    @property
    def status(self) -> str:
        return NOT_PERIODIC_WITHIN_HORIZON

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": NOT_PERIODIC_WITHIN_HORIZON,
            "reason": self.reason.value,
            "crossing_count": self.crossing_count,
            "crossing_times": list(self.crossing_times),
            "return_defect": self.return_defect,
            "horizon": self.horizon,
            "message": self.message,
        }


class GridAxis(BaseModel):
    """Evenly spaced values from start to stop inclusive."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    start: float
    stop: float
    count: int = Field(ge=1)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


class GridSpec(BaseModel):
    """Anchor-plane grid: rows sweep v1, columns sweep v2, phi1 fixed at 0."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    v1: GridAxis
    v2: GridAxis


@dataclass(frozen=True, slots=True)
class FamilyCell:
    row: int
    col: int
    v1: float
    v2: float
    status: CellStatus
    period: float | None = None
    return_defect: float | None = None
    reason: NotPeriodicReason | None = None
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "row": self.row,
            "col": self.col,
            "v1": self.v1,
            "v2": self.v2,
            "status": self.status.value,
            "period": self.period,
            "return_defect": self.return_defect,
            "reason": self.reason.value if self.reason is not None else None,
            "error": self.error,
        }


@dataclass(frozen=True, slots=True)
class FamilyGrid:
    """Rectangular grid of detector outcomes; every cell carries a status."""

    spec: GridSpec
    params: Params
    cells: tuple[tuple[FamilyCell, ...], ...]

    def __post_init__(self) -> None:
        rows, cols = self.shape
        if len(self.cells) != rows or any(len(row) != cols for row in self.cells):
            raise ValueError(f"family grid must be {rows}x{cols}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.spec.v1.count, self.spec.v2.count

    def flat_cells(self) -> list[FamilyCell]:
        return [cell for row in self.cells for cell in row]

    def status_mask(self, status: CellStatus = CellStatus.PERIODIC) -> np.ndarray:
        return np.array([[cell.status is status for cell in row] for row in self.cells], dtype=bool)

    def periods(self) -> np.ndarray:
        """Periods with NaN where no orbit was certified."""

        return np.array(
            [[np.nan if cell.period is None else cell.period for cell in row] for row in self.cells],
            dtype=float,
        )

    def periodic_fraction(self) -> float:
        mask = self.status_mask()
        return float(mask.sum()) / mask.size


@dataclass(slots=True)
class FamilyCoherence:
    """Connectivity and period continuity of the periodic cells of a grid."""

    largest_region_cells: int
    region_count: int
    region_mask: np.ndarray
    row_continuity_ok: bool
    worst_jump_ratio: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "largest_region_cells": self.largest_region_cells,
            "region_count": self.region_count,
            "row_continuity_ok": self.row_continuity_ok,
            "worst_jump_ratio": self.worst_jump_ratio,
        }


__all__ = [
    "CellStatus",
    "FamilyCell",
    "FamilyCoherence",
    "FamilyGrid",
    "GridAxis",
    "GridSpec",
    "NOT_PERIODIC_WITHIN_HORIZON",
    "NotPeriodicReason",
    "NotPeriodicReport",
    "PERIODIC",
    "PeriodicOrbit",
]
