"""Section point sets, point-cloud geometry and sweep results."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import StrEnum
from typing import Any

import numpy as np

from integrator.integrator_models import EventKind
from model.params import Params


class SectionPlane(StrEnum):
    """Coordinate plane slicing a trajectory projection, and the plotted pair."""

    V1_ZERO = "v1_zero"
    PHI2_EQUALS_PI = "phi2_equals_pi"
    PHI1_ZERO = "phi1_zero"

    @property
    def event_kind(self) -> EventKind:
        return _PLANE_EVENTS[self]

    @property
    def axes(self) -> tuple[str, str]:
        return _PLANE_AXES[self]


_PLANE_EVENTS: dict[SectionPlane, EventKind] = {
    SectionPlane.V1_ZERO: EventKind.V1_ZERO,
    SectionPlane.PHI2_EQUALS_PI: EventKind.PHI2_MOD_PI,
    SectionPlane.PHI1_ZERO: EventKind.PHI1_ZERO,
}

_PLANE_AXES: dict[SectionPlane, tuple[str, str]] = {
    SectionPlane.V1_ZERO: ("phi1_mod_2pi", "v2"),
    SectionPlane.PHI2_EQUALS_PI: ("phi1", "v1"),
    SectionPlane.PHI1_ZERO: ("v1", "v2"),
}


class Classification(StrEnum):
    REGULAR = "regular"
    CHAOTIC = "chaotic"


@dataclass(frozen=True, slots=True)
class SectionPointSet:
    """Crossing points of a projected trajectory with a plane; both directions kept."""

    plane: SectionPlane
    points: np.ndarray
    directions: np.ndarray
    times: np.ndarray
    residuals: np.ndarray
    source: tuple[float, ...]
    params: Params | None = None
    truncated: bool = False
    direction_filter: int = 0

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def filtered(self, direction: int) -> SectionPointSet:
        """Keep crossings in one direction only (+1 or -1)."""

        keep = self.directions == direction
        return replace(
            self,
            points=self.points[keep],
            directions=self.directions[keep],
            times=self.times[keep],
            residuals=self.residuals[keep],
            direction_filter=direction,
        )


@dataclass(frozen=True, slots=True)
class CloudGeometry:
    """Shape statistics of a 2D point cloud."""

    count: int
    diameter: float
    curve_ratio: float
    hull_area: float
    recurrence_scatter: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "count": self.count,
            "diameter": self.diameter,
            "curve_ratio": self.curve_ratio,
            "hull_area": self.hull_area,
            "recurrence_scatter": self.recurrence_scatter,
        }

    def is_finite_set(self, tol: float) -> bool:
        """Every point has a repeat within `tol`, as on a periodic orbit."""

        return self.count >= 2 and self.recurrence_scatter < tol


@dataclass(frozen=True, slots=True)
class ClassificationResult:
    label: Classification
    chi: float
    curve_ratio: float
    chi_regular: bool
    curve_regular: bool
    hull_spread: bool = False

    @property
    def cloud_regular(self) -> bool:
        return self.curve_regular and not self.hull_spread

    @property
    def diagnostics_agree(self) -> bool:
        return self.chi_regular == self.cloud_regular


@dataclass(slots=True)
class SweepOutcome:
    """Result for one swept value; `error` is set when the run failed."""

    index: int
    value: float
    periodic: bool | None = None
    crossing_count: int | None = None
    period: float | None = None
    chi: float | None = None
    geometry: CloudGeometry | None = None
    classification: ClassificationResult | None = None
    section: SectionPointSet | None = None
    section_ref: str | None = None
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    def to_dict(self) -> dict[str, Any]:
        classification = self.classification
        return {
            "index": self.index,
            "value": self.value,
            "status": "failed" if self.failed else "ok",
            "periodic": self.periodic,
            "crossing_count": self.crossing_count,
            "period": self.period,
            "chi": self.chi,
            "curve_ratio": self.geometry.curve_ratio if self.geometry else None,
            "hull_area": self.geometry.hull_area if self.geometry else None,
            "hull_spread": classification.hull_spread if classification else None,
            "section_points": self.geometry.count if self.geometry else None,
            "classification": classification.label.value if classification else None,
            "diagnostics_agree": classification.diagnostics_agree if classification else None,
            "section_ref": self.section_ref,
            "error": self.error,
        }


@dataclass(slots=True)
class SweepResult:
    """One outcome per swept value, in sweep order."""

    parameter: str
    values: list[float]
    outcomes: list[SweepOutcome]
    bracket: tuple[float, float] | None = None
    monotone: bool | None = None
    refinements: list[tuple[float, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.values) != len(self.outcomes):
            raise ValueError("sweep needs exactly one outcome per value")

    @property
    def classification_failures(self) -> list[int]:
        """Indices whose chi test and point-cloud test disagree."""

        return [
            outcome.index
            for outcome in self.outcomes
            if outcome.classification is not None and not outcome.classification.diagnostics_agree
        ]

    def labels(self) -> list[Classification | None]:
        return [outcome.classification.label if outcome.classification else None for outcome in self.outcomes]


__all__ = [
    "Classification",
    "ClassificationResult",
    "CloudGeometry",
    "SectionPlane",
    "SectionPointSet",
    "SweepOutcome",
    "SweepResult",
]
