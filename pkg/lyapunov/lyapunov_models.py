"""Records produced by the Lyapunov exponent estimators."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import Any

import numpy as np

from model.params import Params


class ExponentVerdict(StrEnum):
    REGULAR = "regular"
    CHAOTIC = "chaotic"
    UNDECIDED = "undecided"


@dataclass(slots=True)
class LyapunovRecord:
    """Running mLCE estimate sampled at every renormalization.

    `accumulated[i]` is the sum of `renorm_log[:i + 1]` and `chi[i]` is
    `accumulated[i] / times[i]`. Times are in the time of the integrated field.
    """

    times: np.ndarray
    chi: np.ndarray
    renorm_log: np.ndarray
    accumulated: np.ndarray
    seed: int | None
    initial_state: np.ndarray
    initial_vector: np.ndarray
    final_state: np.ndarray
    density_min: float
    density_max: float
    params: Params | None = None

    @property
    def final_chi(self) -> float:
        return float(self.chi[-1]) if len(self.chi) else float("nan")

    def last_decade_min(self) -> float:
        """Minimum of chi over the final decade [t_end / 10, t_end]."""

        if not len(self.times):
            return float("nan")
        window = self.times >= self.times[-1] / 10.0
        return float(np.min(self.chi[window]))

    def summary(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "t_total": float(self.times[-1]) if len(self.times) else 0.0,
            "renormalizations": int(len(self.times)),
            "final_chi": self.final_chi,
            "last_decade_min": self.last_decade_min(),
            "density_min": self.density_min,
            "density_max": self.density_max,
            "initial_state": self.initial_state.tolist(),
            "initial_vector": self.initial_vector.tolist(),
        }


@dataclass(slots=True)
class SeedStabilityReport:
    """Spread of the final exponent over several tangent seeds."""

    seeds: list[int]
    final_chi: list[float]
    spread: float
    relative_spread: float
    all_regular: bool
    stable: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "seeds": list(self.seeds),
            "final_chi": list(self.final_chi),
            "spread": self.spread,
            "relative_spread": self.relative_spread,
            "all_regular": self.all_regular,
            "stable": self.stable,
        }


__all__ = ["ExponentVerdict", "LyapunovRecord", "SeedStabilityReport"]
