"""Adaptive integration, event location and the reversibility check."""

from integrator.integrator_models import (
    Event,
    EventKind,
    EventSpec,
    IntegratorConfig,
    IntegratorMethod,
    Trajectory,
    VectorField,
)
from integrator.reflection import flow_with_reflection_check
from integrator.runge_kutta import advance, integrate, refine_event, resample

__all__ = [
    "Event",
    "EventKind",
    "EventSpec",
    "IntegratorConfig",
    "IntegratorMethod",
    "Trajectory",
    "VectorField",
    "advance",
    "flow_with_reflection_check",
    "integrate",
    "refine_event",
    "resample",
]
