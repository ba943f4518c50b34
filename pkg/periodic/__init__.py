"""Symmetric periodic orbits of the reduced system and their two-parameter families."""

from periodic.detector import detect_periodic, mirror_symmetry_defect
from periodic.periodic_models import (
    CellStatus,
    FamilyCell,
    FamilyCoherence,
    FamilyGrid,
    GridAxis,
    GridSpec,
    NotPeriodicReason,
    NotPeriodicReport,
    PeriodicOrbit,
)
from periodic.symmetric_families import (
    UVariant,
    critical_v1,
    family_coherence,
    map_family,
    reduced_energy,
    uv_functions,
)

__all__ = [
    "CellStatus",
    "FamilyCell",
    "FamilyCoherence",
    "FamilyGrid",
    "GridAxis",
    "GridSpec",
    "NotPeriodicReason",
    "NotPeriodicReport",
    "PeriodicOrbit",
    "UVariant",
    "critical_v1",
    "detect_periodic",
    "family_coherence",
    "map_family",
    "mirror_symmetry_defect",
    "reduced_energy",
    "uv_functions",
]
