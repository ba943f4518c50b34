"""Integrator configuration, event and trajectory models."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any, Protocol

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from model.params import Params
from model.states import StateLayout


class IntegratorMethod(StrEnum):
    """Embedded explicit Runge-Kutta pairs available to integrate()."""

    DOP853 = "DOP853"
    RK45 = "RK45"


class IntegratorConfig(BaseModel):
    """Tolerances, step bounds and horizon for one integration."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    rel_tol: float = Field(default=1e-10, gt=0.0)
    abs_tol: float = Field(default=1e-12, gt=0.0)
    h_init: float = Field(default=1e-3, gt=0.0)
    h_min: float = Field(default=1e-12, gt=0.0)
    h_max: float = Field(default=0.25, gt=0.0)
    t_max: float = Field(default=100.0, ge=0.0)
    max_steps: int = Field(default=5_000_000, gt=0)
    method: IntegratorMethod = IntegratorMethod.DOP853
    crossing_tol: float = Field(default=1e-10, gt=0.0)
    transversality_tol: float = Field(default=1e-6, gt=0.0)

    @model_validator(mode="after")
    def ensure_step_order(self) -> IntegratorConfig:
        if not self.h_min <= self.h_init <= self.h_max:
            raise ValueError(
                f"step bounds must satisfy h_min <= h_init <= h_max, got "
                f"{self.h_min!r}, {self.h_init!r}, {self.h_max!r}"
            )
        return self

    def with_updates(self, **changes: Any) -> IntegratorConfig:
        return IntegratorConfig.model_validate({**self.model_dump(), **changes})


class EventKind(StrEnum):
    """Coordinate planes whose crossings are located."""

    PHI1_ZERO = "phi1_zero"
    V1_ZERO = "v1_zero"
    PHI2_MOD_PI = "phi2_mod_pi"


@dataclass(frozen=True, slots=True)
class EventSpec:
    """Plane to watch; direction +1/-1 keeps only upward/downward crossings, 0 keeps both."""

    kind: EventKind
    direction: int = 0


@dataclass(frozen=True, slots=True)
class Event:
    """A located crossing; `rate` is the time derivative of the crossed coordinate."""

    kind: EventKind
    t: float
    state: tuple[float, ...]
    direction: int
    rate: float
    residual: float
    transversal: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "t": self.t,
            "state": list(self.state),
            "direction": self.direction,
            "rate": self.rate,
            "residual": self.residual,
            "transversal": self.transversal,
        }


class VectorField(Protocol):
    """Autonomous right-hand side over numpy state arrays."""

    layout: StateLayout
    dimension: int

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray: ...


class NegatedField:
    """-f; integrating it forward traces the original flow backward in time."""

    def __init__(self, field: VectorField) -> None:
        self.inner = field
        self.layout = field.layout
        self.dimension = field.dimension

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        return -self.inner(t, y)


@dataclass(slots=True)
class Trajectory:
    """Accepted steps of one integration, with the events found along them."""

    times: np.ndarray
    states: np.ndarray
    layout: StateLayout
    config: IntegratorConfig
    params: Params | None = None
    events: list[Event] = field(default_factory=list)
    truncated: bool = False
    n_steps: int = 0

    def __post_init__(self) -> None:
        if self.times.ndim != 1 or self.states.ndim != 2 or len(self.times) != len(self.states):
            raise ValueError("times and states must have matching lengths")
        if len(self.times) > 1 and not bool(np.all(np.diff(self.times) > 0.0)):
            raise ValueError("trajectory times must be strictly increasing")

    @property
    def t_final(self) -> float:
        return float(self.times[-1])

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1].copy()

    def column(self, name: str) -> np.ndarray:
        return self.states[:, self.layout.index(name)]

    def events_of(self, kind: EventKind) -> list[Event]:
        return [event for event in self.events if event.kind is kind]


__all__ = [
    "Event",
    "EventKind",
    "EventSpec",
    "IntegratorConfig",
    "IntegratorMethod",
    "NegatedField",
    "Trajectory",
    "VectorField",
]
