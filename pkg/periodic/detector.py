"""Reversibility-based periodic-orbit detection on the plane phi1 = 0."""

from __future__ import annotations

import numpy as np

from core.errors import ParameterDomainError
from integrator.integrator_models import (
    EventKind,
    EventSpec,
    IntegratorConfig,
    NegatedField,
    VectorField,
)
from integrator.reflection import backward_flow, resampling_config
from integrator.runge_kutta import integrate, resample
from model.equations import FieldKind, ZieglerField
from model.params import Params
from model.states import ReducedState, StateLayout
from periodic.periodic_models import NotPeriodicReason, NotPeriodicReport, PeriodicOrbit

DEFAULT_HORIZON = 500.0
DEFAULT_DEFECT_TOL = 1e-6

_PLANE = (EventSpec(EventKind.PHI1_ZERO),)


def _reduced_field(p: Params, vector_field: VectorField | None) -> VectorField:
    if p.k2 != 0.0:
        raise ParameterDomainError(f"reduction invalid: periodic detection requires k2 == 0, got k2={p.k2!r}")
    field = vector_field if vector_field is not None else ZieglerField(p, FieldKind.REDUCED)
    if field.layout is not StateLayout.REDUCED:
        raise ParameterDomainError(f"periodic detection needs a reduced-system field, got {field.layout.value}")
    return field


def detect_periodic(
    p: Params,
    s0: ReducedState,
    cfg: IntegratorConfig,
    *,
    horizon: float = DEFAULT_HORIZON,
    defect_tol: float = DEFAULT_DEFECT_TOL,
    vector_field: VectorField | None = None,
) -> PeriodicOrbit | NotPeriodicReport:
    """Search two transversal crossings of phi1 = 0, then certify the orbit by its return defect.

    Two crossings at t_a < t_b imply a symmetric orbit of period 2*(t_b - t_a). The
    candidate is integrated once over that period from the first crossing; it is
    accepted when it comes back within `defect_tol` having crossed the plane exactly
    once in between. An initial state already on the plane is the first crossing.
    """

    field = _reduced_field(p, vector_field)
    y0 = s0.to_array()
    crossings: list[tuple[float, np.ndarray, float, bool]] = []
    if abs(s0.phi1) < cfg.crossing_tol:
        y0[0] = 0.0
        rate = float(field(0.0, y0)[0])
        crossings.append((0.0, y0.copy(), rate, abs(rate) > cfg.transversality_tol))

    needed = 2 - len(crossings)
    search = integrate(
        field,
        y0,
        cfg.with_updates(t_max=horizon),
        _PLANE,
        params=p,
        stop_after_events=needed,
    )
    for event in search.events[:needed]:
        crossings.append((event.t, np.array(event.state), event.rate, event.transversal))
    times = tuple(item[0] for item in crossings)

    if len(crossings) < 2:
        return NotPeriodicReport(
            reason=NotPeriodicReason.NO_SECOND_CROSSING,
            crossing_count=len(crossings),
            horizon=horizon,
            params=p,
            crossing_times=times,
            message="trajectory truncated by max_steps" if search.truncated else "",
        )
    if not all(item[3] for item in crossings):
        rates = ", ".join(f"{item[2]:.3e}" for item in crossings)
        return NotPeriodicReport(
            reason=NotPeriodicReason.NON_TRANSVERSAL,
            crossing_count=len(crossings),
            horizon=horizon,
            params=p,
            crossing_times=times,
            message=f"crossing rates {rates} below transversality threshold",
        )

    (t_a, y_a, _, _), (t_b, y_b, _, _) = crossings[:2]
    period = 2.0 * (t_b - t_a)
    check = integrate(field, y_a, cfg.with_updates(t_max=period), _PLANE, params=p)
    defect = float(np.max(np.abs(check.final_state - y_a)))
    margin = 1e-6 * period
    interior = [event for event in check.events if margin < event.t < period - margin]

    if check.truncated or defect >= defect_tol or len(interior) != 1:
        return NotPeriodicReport(
            reason=NotPeriodicReason.DEFECT_TOO_LARGE,
            crossing_count=2,
            horizon=horizon,
            params=p,
            crossing_times=times,
            return_defect=defect,
            message=f"{len(interior)} interior crossings over one candidate period",
        )

    return PeriodicOrbit(
        anchor=ReducedState.from_array(y_a),
        period=period,
        crossing_times=(t_a, t_b),
        crossing_states=(ReducedState.from_array(y_a), ReducedState.from_array(y_b)),
        return_defect=defect,
        params=p,
    )


def mirror_symmetry_defect(
    p: Params,
    orbit: PeriodicOrbit,
    cfg: IntegratorConfig,
    *,
    vector_field: VectorField | None = None,
    grid_points: int = 2001,
) -> float:
    """sup |phi1(s) + phi1(-s)| over half a period around the anchor crossing."""

    field = _reduced_field(p, vector_field)
    half = resampling_config(cfg).with_updates(t_max=0.5 * orbit.period)
    forward = integrate(field, orbit.anchor, half)
    backward = backward_flow(field, orbit.anchor, half)
    grid = np.linspace(0.0, min(forward.t_final, backward.t_final), grid_points)
    ahead = resample(forward, field, grid)[:, 0]
    behind = resample(backward, NegatedField(field), grid)[:, 0]
    return float(np.max(np.abs(ahead + behind)))


__all__ = ["DEFAULT_DEFECT_TOL", "DEFAULT_HORIZON", "detect_periodic", "mirror_symmetry_defect"]
