"""Legendre transform and phase-space divergence in momentum and velocity coordinates."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from model.equations import FieldKind, ZieglerField
from model.params import Params
from model.states import FullState, ensure_finite

DIVERGENCE_STEP = 1e-6


@dataclass(frozen=True, slots=True)
class MomentumState:
    """Angles (rad) and generalized momenta p_i = dL/d(phi_i') (kg*m^2/s)."""

    phi1: float
    phi2: float
    p1: float
    p2: float

    def __post_init__(self) -> None:
        ensure_finite((self.phi1, self.phi2, self.p1, self.p2), "MomentumState")

    def to_array(self) -> np.ndarray:
        return np.array([self.phi1, self.phi2, self.p1, self.p2], dtype=float)

    @classmethod
    def from_array(cls, values: np.ndarray) -> MomentumState:
        return cls(float(values[0]), float(values[1]), float(values[2]), float(values[3]))


def _inertia(field: ZieglerField, phi1: float) -> np.ndarray:
    a11, a12, a22, _, _ = field.terms(phi1, 0.0, 0.0, 0.0)
    return np.array([[a11, a12], [a12, a22]])


def to_momenta(p: Params, s: FullState) -> MomentumState:
    momenta = _inertia(ZieglerField(p), s.phi1) @ np.array([s.v1, s.v2])
    return MomentumState(s.phi1, s.phi2, float(momenta[0]), float(momenta[1]))


def from_momenta(p: Params, ms: MomentumState) -> FullState:
    velocities = np.linalg.solve(_inertia(ZieglerField(p), ms.phi1), np.array([ms.p1, ms.p2]))
    return FullState(ms.phi1, ms.phi2, float(velocities[0]), float(velocities[1]))


def momentum_field(p: Params) -> Callable[[np.ndarray], np.ndarray]:
    """Pushforward of the full field through the Legendre map, over (phi1, phi2, p1, p2)."""

    field = ZieglerField(p, FieldKind.FULL)
    coupling = p.coupling

    def evaluate(x: np.ndarray) -> np.ndarray:
        phi1, phi2 = float(x[0]), float(x[1])
        inertia = _inertia(field, phi1)
        v1, v2 = np.linalg.solve(inertia, x[2:4])
        _, _, acc1, acc2 = field.full(np.array([phi1, phi2, v1, v2]))
        sin_phi = np.sin(phi1)
        # d/dt (A v) = A a + phi1' (dA/dphi1) v
        d_inertia = np.array([[0.0, -coupling * sin_phi], [-coupling * sin_phi, -2.0 * coupling * sin_phi]])
        p_dot = inertia @ np.array([acc1, acc2]) + v1 * (d_inertia @ np.array([v1, v2]))
        return np.array([v1, v2, p_dot[0], p_dot[1]])

    return evaluate


def _central_divergence(func: Callable[[np.ndarray], np.ndarray], x: np.ndarray, step: float) -> float:
    total = 0.0
    for index in range(len(x)):
        h = step * max(1.0, abs(float(x[index])))
        upper = x.copy()
        lower = x.copy()
        upper[index] += h
        lower[index] -= h
        total += (func(upper)[index] - func(lower)[index]) / (upper[index] - lower[index])
    return float(total)


def hamiltonian_divergence(p: Params, ms: MomentumState, step: float = DIVERGENCE_STEP) -> float:
    """Divergence of the flow in (phi, p) coordinates by central differences; ~0 for any F."""

    return _central_divergence(momentum_field(p), ms.to_array(), step)


def velocity_divergence(p: Params, s: FullState, step: float = DIVERGENCE_STEP) -> float:
    """Same finite-difference divergence in (phi, v) coordinates; generically nonzero."""

    field = ZieglerField(p, FieldKind.FULL)
    return _central_divergence(field.full, s.to_array(), step)


__all__ = [
    "DIVERGENCE_STEP",
    "MomentumState",
    "from_momenta",
    "hamiltonian_divergence",
    "momentum_field",
    "to_momenta",
    "velocity_divergence",
]
