"""Sections of trajectory projections and the geometry tests run on them."""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import ConvexHull, QhullError, cKDTree
from scipy.spatial.distance import pdist

from analysis.analysis_models import (
    Classification,
    ClassificationResult,
    CloudGeometry,
    SectionPlane,
    SectionPointSet,
)
from core.errors import IntegrationError
from integrator.integrator_models import Event, EventSpec, IntegratorConfig, VectorField
from integrator.runge_kutta import integrate
from model.equations import FieldKind, ZieglerField
from model.params import Params
from model.states import FullState, StateLayout, wrap_angle

DEFAULT_MIN_CROSSINGS = 500


def _project(plane: SectionPlane, layout: StateLayout, state: tuple[float, ...]) -> tuple[float, float]:
    phi1 = state[layout.index("phi1")]
    v1 = state[layout.index("v1")]
    v2 = state[layout.index("v2")]
    if plane is SectionPlane.V1_ZERO:
        return wrap_angle(phi1), v2
    if plane is SectionPlane.PHI2_EQUALS_PI:
        return phi1, v1
    return v1, v2


def _point_set(
    plane: SectionPlane,
    layout: StateLayout,
    events: list[Event],
    s0: FullState,
    p: Params,
    truncated: bool,
) -> SectionPointSet:
    points = np.array([_project(plane, layout, event.state) for event in events], dtype=float).reshape(-1, 2)
    return SectionPointSet(
        plane=plane,
        points=points,
        directions=np.array([event.direction for event in events], dtype=int),
        times=np.array([event.t for event in events], dtype=float),
        residuals=np.array([event.residual for event in events], dtype=float),
        source=(s0.phi1, s0.phi2, s0.v1, s0.v2),
        params=p,
        truncated=truncated,
    )


def section(
    p: Params,
    s0: FullState,
    cfg: IntegratorConfig,
    plane: SectionPlane,
    *,
    min_crossings: int = DEFAULT_MIN_CROSSINGS,
    vector_field: VectorField | None = None,
) -> SectionPointSet:
    """Integrate the full system until `min_crossings` plane crossings (or cfg.t_max).

    This slices a projection of the 4D flow, so points from different sheets may
    overlay; it is not a return map.
    """

    field = vector_field if vector_field is not None else ZieglerField(p, FieldKind.FULL)
    specs = (EventSpec(plane.event_kind),)
    try:
        trajectory = integrate(field, s0, cfg, specs, params=p, stop_after_events=min_crossings)
    except IntegrationError as exc:
        events = exc.partial.events if exc.partial is not None else []
        partial = _point_set(plane, field.layout, events, s0, p, truncated=True)
        raise IntegrationError(f"section integration failed: {exc}", partial=partial) from exc
    truncated = trajectory.truncated or len(trajectory.events) < min_crossings
    return _point_set(plane, field.layout, trajectory.events, s0, p, truncated)


def _diameter(points: np.ndarray, hull: ConvexHull | None) -> float:
    if len(points) < 2:
        return 0.0
    candidates = points[hull.vertices] if hull is not None else points
    return float(np.max(pdist(candidates)))


def point_cloud_geometry(points: np.ndarray, *, curve_quantile: float = 1.0) -> CloudGeometry:
    """Diameter, local-collinearity ratio, hull area and recurrence scatter.

    curve_ratio is the `curve_quantile` quantile, over all points, of the distance
    from a point to the line through its two nearest neighbours, divided by the
    cloud diameter. Points on a smooth curve give a ratio near zero.
    """

    points = np.asarray(points, dtype=float).reshape(-1, 2)
    count = len(points)
    hull: ConvexHull | None = None
    hull_area = 0.0
    if count >= 3:
        try:
            hull = ConvexHull(points)
            hull_area = float(hull.volume)
        except QhullError:
            hull = None
    diameter = _diameter(points, hull)
    if count < 3:
        return CloudGeometry(count, diameter, 0.0, hull_area, diameter)

    distances, neighbours = cKDTree(points).query(points, k=3)
    first = points[neighbours[:, 1]]
    second = points[neighbours[:, 2]]
    chord = second - first
    offset = points - first
    chord_length = np.hypot(chord[:, 0], chord[:, 1])
    cross = np.abs(chord[:, 0] * offset[:, 1] - chord[:, 1] * offset[:, 0])
    line_distance = np.where(
        chord_length > 0.0,
        cross / np.where(chord_length > 0.0, chord_length, 1.0),
        np.hypot(offset[:, 0], offset[:, 1]),
    )
    curve_ratio = float(np.quantile(line_distance, curve_quantile)) / diameter if diameter > 0.0 else 0.0
    return CloudGeometry(
        count=count,
        diameter=diameter,
        curve_ratio=curve_ratio,
        hull_area=hull_area,
        recurrence_scatter=float(np.max(distances[:, 1])),
    )


def classify(
    chi: float,
    geometry: CloudGeometry,
    *,
    chi_threshold: float = 0.01,
    curve_threshold: float = 0.01,
    reference_hull_area: float | None = None,
    hull_ratio: float = 10.0,
) -> ClassificationResult:
    """Regular only when the exponent is small and the section lies on a curve.

    With a positive `reference_hull_area` (the section of a known regular start),
    a hull more than `hull_ratio` times larger also marks the cloud as spread.
    """

    chi_regular = math.isfinite(chi) and chi < chi_threshold
    curve_regular = geometry.curve_ratio < curve_threshold
    hull_spread = (
        reference_hull_area is not None
        and reference_hull_area > 0.0
        and geometry.hull_area > hull_ratio * reference_hull_area
    )
    cloud_regular = curve_regular and not hull_spread
    label = Classification.REGULAR if chi_regular and cloud_regular else Classification.CHAOTIC
    return ClassificationResult(
        label=label,
        chi=chi,
        curve_ratio=geometry.curve_ratio,
        chi_regular=chi_regular,
        curve_regular=curve_regular,
        hull_spread=hull_spread,
    )


__all__ = ["DEFAULT_MIN_CROSSINGS", "classify", "point_cloud_geometry", "section"]
