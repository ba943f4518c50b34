"""Phase-space points and the evaluated inertia/force terms."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from core.errors import NonFiniteStateError

TWO_PI = 2.0 * math.pi


class StateLayout(StrEnum):
    """Column layout of a state vector."""

    FULL = "full"
    REDUCED = "reduced"
    PLANAR = "planar"

    @property
    def columns(self) -> tuple[str, ...]:
        return _LAYOUT_COLUMNS[self]

    def index(self, column: str) -> int:
        try:
            return self.columns.index(column)
        except ValueError as exc:
            raise ValueError(f"layout {self.value} has no column {column!r}") from exc


_LAYOUT_COLUMNS: dict[StateLayout, tuple[str, ...]] = {
    StateLayout.FULL: ("phi1", "phi2", "v1", "v2"),
    StateLayout.REDUCED: ("phi1", "v1", "v2"),
    StateLayout.PLANAR: ("phi1", "v1"),
}


def ensure_finite(values: Iterable[float], label: str) -> None:
    """Raise NonFiniteStateError when any value is NaN or infinite."""

    for value in values:
        if not math.isfinite(value):
            raise NonFiniteStateError(f"{label} has a non-finite component: {value!r}")


def wrap_angle(angle: float) -> float:
    """Reduce an angle to [0, 2*pi)."""

    wrapped = math.fmod(angle, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    return 0.0 if wrapped == TWO_PI else wrapped


@dataclass(frozen=True, slots=True)
class FullState:
    """Point (phi1, phi2, v1, v2) of the 4D system, angles unwrapped."""

    phi1: float
    phi2: float
    v1: float
    v2: float

    def __post_init__(self) -> None:
        ensure_finite((self.phi1, self.phi2, self.v1, self.v2), "FullState")

    def to_array(self) -> np.ndarray:
        return np.array([self.phi1, self.phi2, self.v1, self.v2], dtype=float)

    @classmethod
    def from_array(cls, values: Sequence[float] | np.ndarray) -> FullState:
        if len(values) != 4:
            raise ValueError(f"FullState needs 4 components, got {len(values)}")
        return cls(float(values[0]), float(values[1]), float(values[2]), float(values[3]))

    def wrapped(self) -> FullState:
        """Copy with both angles reduced mod 2*pi."""

        return FullState(wrap_angle(self.phi1), wrap_angle(self.phi2), self.v1, self.v2)

    def reduced(self) -> ReducedState:
        return ReducedState(self.phi1, self.v1, self.v2)


@dataclass(frozen=True, slots=True)
class ReducedState:
    """Point (phi1, v1, v2) of the third-order system."""

    phi1: float
    v1: float
    v2: float

    def __post_init__(self) -> None:
        ensure_finite((self.phi1, self.v1, self.v2), "ReducedState")

    def to_array(self) -> np.ndarray:
        return np.array([self.phi1, self.v1, self.v2], dtype=float)

    @classmethod
    def from_array(cls, values: Sequence[float] | np.ndarray) -> ReducedState:
        if len(values) != 3:
            raise ValueError(f"ReducedState needs 3 components, got {len(values)}")
        return cls(float(values[0]), float(values[1]), float(values[2]))

    def reflected(self) -> ReducedState:
        """Image under the reversing involution (phi1, v1, v2) -> (-phi1, v1, v2)."""

        return ReducedState(-self.phi1, self.v1, self.v2)

    def wrapped(self) -> ReducedState:
        return ReducedState(wrap_angle(self.phi1), self.v1, self.v2)

    def lifted(self, phi2: float = 0.0) -> FullState:
        return FullState(self.phi1, phi2, self.v1, self.v2)


@dataclass(frozen=True, slots=True)
class InertiaAndForce:
    """Inertia coefficients (kg*m^2) and generalized forces (N*m) at a state."""

    a11: float
    a12: float
    a21: float
    a22: float
    r1: float
    r2: float

    @property
    def determinant(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    def matrix(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=float)

    def forces(self) -> np.ndarray:
        return np.array([self.r1, self.r2], dtype=float)


__all__ = [
    "FullState",
    "InertiaAndForce",
    "ReducedState",
    "StateLayout",
    "TWO_PI",
    "ensure_finite",
    "wrap_angle",
]
