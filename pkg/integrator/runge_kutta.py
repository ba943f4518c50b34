"""Adaptive Runge-Kutta integration with plane-crossing events."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
from scipy.integrate import DOP853, RK45, OdeSolver
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from core.errors import IntegrationError
from core.logger import get_logger
from integrator.integrator_models import (
    Event,
    EventKind,
    EventSpec,
    IntegratorConfig,
    IntegratorMethod,
    Trajectory,
    VectorField,
)
from model.params import Params
from model.states import FullState, ReducedState, StateLayout, ensure_finite

MAX_POLISH_ITERATIONS = 12

_SOLVERS: dict[IntegratorMethod, type[OdeSolver]] = {
    IntegratorMethod.DOP853: DOP853,
    IntegratorMethod.RK45: RK45,
}

_EVENT_COLUMNS: dict[EventKind, str] = {
    EventKind.PHI1_ZERO: "phi1",
    EventKind.V1_ZERO: "v1",
    EventKind.PHI2_MOD_PI: "phi2",
}


def event_value(kind: EventKind, layout: StateLayout, y: np.ndarray) -> float:
    """Signed distance-like function whose zeros are the plane."""

    value = float(y[layout.index(_EVENT_COLUMNS[kind])])
    if kind is EventKind.PHI2_MOD_PI:
        # zero exactly at phi2 = pi (mod 2*pi), simple roots only
        return math.sin(0.5 * (value - math.pi))
    return value


def _event_slope(kind: EventKind, layout: StateLayout, y: np.ndarray, dy: np.ndarray) -> tuple[float, float]:
    """(d coordinate/dt, d g/dt) at y."""

    index = layout.index(_EVENT_COLUMNS[kind])
    rate = float(dy[index])
    if kind is EventKind.PHI2_MOD_PI:
        return rate, 0.5 * math.cos(0.5 * (float(y[index]) - math.pi)) * rate
    return rate, rate


def _as_array(s0: FullState | ReducedState | Sequence[float] | np.ndarray) -> np.ndarray:
    if isinstance(s0, FullState | ReducedState):
        return s0.to_array()
    y0 = np.array(s0, dtype=float)
    ensure_finite(y0.tolist(), "initial state")
    return y0


def _make_solver(
    field: VectorField,
    t0: float,
    y0: np.ndarray,
    t_end: float,
    cfg: IntegratorConfig,
    first_step: float | None = None,
) -> OdeSolver:
    span = abs(t_end - t0)
    step = min(first_step if first_step is not None else cfg.h_init, cfg.h_max, span)
    return _SOLVERS[cfg.method](
        field,
        t0,
        y0,
        t_end,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.h_max,
        first_step=step,
    )


def advance(
    field: VectorField,
    t0: float,
    y0: np.ndarray,
    t1: float,
    cfg: IntegratorConfig,
    first_step: float | None = None,
) -> tuple[np.ndarray, float]:
    """State at t1 (either direction) and the step size the solver would try next."""

    if t1 == t0:
        return np.array(y0, dtype=float), first_step if first_step is not None else cfg.h_init
    solver = _make_solver(field, t0, np.array(y0, dtype=float), t1, cfg, first_step)
    next_step = cfg.h_init
    steps = 0
    while solver.status == "running":
        t_old = solver.t
        message = solver.step()
        steps += 1
        if solver.status == "failed":
            raise IntegrationError(f"solver failed near t={t_old!r}: {message}")
        if abs(solver.t - t_old) < cfg.h_min and solver.t != t1:
            raise IntegrationError(f"step underflow near t={t_old!r}")
        if steps > cfg.max_steps:
            raise IntegrationError(f"advance from t={t0!r} to t={t1!r} exceeded {cfg.max_steps} steps")
        next_step = float(getattr(solver, "h_abs", abs(solver.t - t_old)))
    return solver.y.copy(), max(min(next_step, cfg.h_max), cfg.h_min)


def refine_event(
    field: VectorField,
    t0: float,
    y0: np.ndarray,
    t_guess: float,
    spec: EventSpec,
    cfg: IntegratorConfig,
) -> Event:
    """Re-integrate from (t0, y0) to t_guess, then Newton-polish until |g| < crossing_tol."""

    layout = field.layout
    t = float(t_guess)
    y, _ = advance(field, t0, y0, t, cfg)
    g = event_value(spec.kind, layout, y)
    dy = field(t, y)
    rate, slope = _event_slope(spec.kind, layout, y, dy)
    for _ in range(MAX_POLISH_ITERATIONS):
        if abs(g) < cfg.crossing_tol or slope == 0.0:
            break
        dt = -g / slope
        y, _ = advance(field, t, y, t + dt, cfg, first_step=min(abs(dt), cfg.h_init))
        t += dt
        g = event_value(spec.kind, layout, y)
        dy = field(t, y)
        rate, slope = _event_slope(spec.kind, layout, y, dy)
    return Event(
        kind=spec.kind,
        t=t,
        state=tuple(float(value) for value in y),
        direction=1 if rate > 0.0 else (-1 if rate < 0.0 else 0),
        rate=rate,
        residual=g,
        transversal=abs(rate) > cfg.transversality_tol,
    )


def _bracket_root(
    spec: EventSpec,
    layout: StateLayout,
    solver: OdeSolver,
    t_old: float,
    g_old: float,
    g_new: float,
) -> float:
    dense = solver.dense_output()

    def g_of_t(t: float) -> float:
        return event_value(spec.kind, layout, dense(t))

    lo, hi = (t_old, solver.t) if t_old < solver.t else (solver.t, t_old)
    g_lo, g_hi = g_of_t(lo), g_of_t(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if g_lo * g_hi > 0.0:
        return t_old + (solver.t - t_old) * g_old / (g_old - g_new)
    return float(brentq(g_of_t, lo, hi, xtol=1e-15, rtol=4.0 * np.finfo(float).eps))


def integrate(
    field: VectorField,
    s0: FullState | ReducedState | Sequence[float] | np.ndarray,
    cfg: IntegratorConfig,
    events: Sequence[EventSpec] = (),
    *,
    params: Params | None = None,
    stop_after_events: int | None = None,
    t0: float = 0.0,
) -> Trajectory:
    """Integrate `field` from s0 over [t0, t0 + cfg.t_max], recording every accepted step.

    Sign changes of each event function on an accepted step are bracketed on the
    step's dense output, then refined by re-integrating the substep. A zero at the
    very first point is not an event. Exceeding max_steps truncates the trajectory
    and logs a warning; step underflow raises IntegrationError with the partial
    trajectory attached.
    """

    y0 = _as_array(s0)
    if len(y0) != field.dimension:
        raise ValueError(f"state has {len(y0)} components, field expects {field.dimension}")
    layout = field.layout
    times: list[float] = [float(t0)]
    states: list[np.ndarray] = [y0.copy()]
    found: list[Event] = []

    def build(truncated: bool = False, n_steps: int = 0) -> Trajectory:
        return Trajectory(
            times=np.array(times, dtype=float),
            states=np.vstack(states),
            layout=layout,
            config=cfg,
            params=params,
            events=list(found),
            truncated=truncated,
            n_steps=n_steps,
        )

    t_end = float(t0) + cfg.t_max
    if t_end == float(t0):
        return build()

    solver = _make_solver(field, float(t0), y0, t_end, cfg)
    g_prev = [event_value(spec.kind, layout, y0) for spec in events]
    steps = 0
    truncated = False
    while solver.status == "running":
        if steps >= cfg.max_steps:
            truncated = True
            get_logger("integrator.runge_kutta").warning(
                "integration_truncated",
                max_steps=cfg.max_steps,
                t_reached=solver.t,
                t_max=t_end,
            )
            break
        t_old = solver.t
        y_old = solver.y.copy()
        message = solver.step()
        steps += 1
        if solver.status == "failed":
            raise IntegrationError(f"solver failed near t={t_old!r}: {message}", partial=build(n_steps=steps))
        if solver.t - t_old < cfg.h_min and solver.t < t_end:
            raise IntegrationError(
                f"step underflow near t={t_old!r} (h={solver.t - t_old!r} < h_min={cfg.h_min!r})",
                partial=build(n_steps=steps),
            )
        y_new = solver.y.copy()
        if not np.all(np.isfinite(y_new)):
            raise IntegrationError(f"non-finite state near t={t_old!r}", partial=build(n_steps=steps))

        step_events: list[Event] = []
        for index, spec in enumerate(events):
            g_old = g_prev[index]
            g_new = event_value(spec.kind, layout, y_new)
            g_prev[index] = g_new
            if g_old == 0.0 or g_old * g_new > 0.0:
                continue
            t_guess = _bracket_root(spec, layout, solver, t_old, g_old, g_new)
            event = refine_event(field, t_old, y_old, t_guess, spec, cfg)
            if spec.direction and event.direction != spec.direction:
                continue
            step_events.append(event)

        times.append(float(solver.t))
        states.append(y_new)
        if step_events:
            step_events.sort(key=lambda item: item.t)
            found.extend(step_events)
        if stop_after_events is not None and len(found) >= stop_after_events:
            break

    return build(truncated=truncated, n_steps=steps)


def resample(trajectory: Trajectory, field: VectorField, grid: np.ndarray) -> np.ndarray:
    """Cubic Hermite interpolation of the accepted steps at the given times."""

    grid = np.asarray(grid, dtype=float)
    if len(trajectory.times) == 1:
        return np.tile(trajectory.states[0], (len(grid), 1))
    slopes = np.vstack([field(float(t), y) for t, y in zip(trajectory.times, trajectory.states, strict=True)])
    spline = CubicHermiteSpline(trajectory.times, trajectory.states, slopes, axis=0)
    return np.asarray(spline(grid))


__all__ = ["advance", "event_value", "integrate", "refine_event", "resample"]
