"""Sections, sweeps and regular/chaotic classification."""

from analysis.analysis_models import (
    Classification,
    ClassificationResult,
    CloudGeometry,
    SectionPlane,
    SectionPointSet,
    SweepOutcome,
    SweepResult,
)
from analysis.sections import classify, point_cloud_geometry, section
from analysis.sweeps import force_sweep, ic_sweep

__all__ = [
    "Classification",
    "ClassificationResult",
    "CloudGeometry",
    "SectionPlane",
    "SectionPointSet",
    "SweepOutcome",
    "SweepResult",
    "classify",
    "force_sweep",
    "ic_sweep",
    "point_cloud_geometry",
    "section",
]
