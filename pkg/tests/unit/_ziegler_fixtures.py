from __future__ import annotations

import math
from pathlib import Path
from typing import Any

import numpy as np

from integrator.integrator_models import IntegratorConfig
from model.params import Params, reference_params
from model.states import FullState, ReducedState, StateLayout

PROJECT_ROOT = Path(__file__).resolve().parents[2]
DEFAULTS_FILE = PROJECT_ROOT / "config" / "defaults.yaml"
RUNS_DIR = PROJECT_ROOT / "config" / "runs"


def unit_params(**overrides: Any) -> Params:
    """All masses and lengths 1, no springs, no force."""

    values: dict[str, Any] = {"m1": 1.0, "m2": 1.0, "m3": 1.0, "l1": 1.0, "l2": 1.0, "l3": 1.0}
    values.update(overrides)
    return Params.model_validate(values)


def reduced_reference_params(**overrides: Any) -> Params:
    return reference_params(k2=0.0, **overrides)


def separable_params(**overrides: Any) -> Params:
    """m1*l1 == m3*l3 with k2 = 0."""

    values: dict[str, Any] = {"k1": 1.0, "k2": 0.0, "F": 2.0}
    values.update(overrides)
    return unit_params(**values)


def tight_config(**changes: Any) -> IntegratorConfig:
    return IntegratorConfig().with_updates(**changes)


def random_full_states(seed: int, count: int, speed: float = 2.0) -> list[FullState]:
    rng = np.random.default_rng(seed)
    return [
        FullState(
            float(rng.uniform(-math.pi, math.pi)),
            float(rng.uniform(-math.pi, math.pi)),
            float(rng.uniform(-speed, speed)),
            float(rng.uniform(-speed, speed)),
        )
        for _ in range(count)
    ]


def random_reduced_states(seed: int, count: int, speed: float = 1.0) -> list[ReducedState]:
    return [state.reduced() for state in random_full_states(seed, count, speed)]


def random_params(seed: int) -> Params:
    rng = np.random.default_rng(seed)
    masses = rng.uniform(0.5, 2.0, size=3)
    lengths = rng.uniform(0.5, 2.0, size=3)
    return Params(
        m1=float(masses[0]),
        m2=float(masses[1]),
        m3=float(masses[2]),
        l1=float(lengths[0]),
        l2=float(lengths[1]),
        l3=float(lengths[2]),
        k1=float(rng.uniform(0.0, 3.0)),
        k2=float(rng.uniform(0.0, 3.0)),
        F=float(rng.uniform(-3.0, 3.0)),
    )


class HarmonicField:
    """x' = v, v' = -x over the planar layout (phi1, v1)."""

    layout = StateLayout.PLANAR
    dimension = 2

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        return np.array([y[1], -y[0]])
