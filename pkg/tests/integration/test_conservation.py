from __future__ import annotations

import numpy as np

from integrator.integrator_models import IntegratorConfig
from integrator.runge_kutta import integrate
from model.equations import FieldKind, ZieglerField
from model.params import reference_params
from model.states import FullState
from observables import energy, momentum_integral


def _drift(values: np.ndarray) -> float:
    return float(np.max(np.abs(values - values[0])) / max(abs(values[0]), 1.0))


def _invariants(p, trajectory) -> tuple[np.ndarray, np.ndarray]:
    states = [FullState.from_array(row) for row in trajectory.states]
    return (
        np.array([energy(p, state) for state in states]),
        np.array([momentum_integral(p, state) for state in states]),
    )


def test_energy_and_momentum_conserved_over_long_run() -> None:
    p = reference_params(F=0.0, k2=0.0)
    trajectory = integrate(ZieglerField(p, FieldKind.FULL), FullState(0.3, 0.0, 0.2, 0.1), IntegratorConfig(t_max=1000.0))
    assert trajectory.t_final == 1000.0
    H, K = _invariants(p, trajectory)
    assert _drift(H) < 1e-7
    assert _drift(K) < 1e-7


def test_outer_spring_alone_keeps_energy() -> None:
    p = reference_params(F=0.0)
    trajectory = integrate(ZieglerField(p, FieldKind.FULL), FullState(0.3, 0.4, 0.2, 0.1), IntegratorConfig(t_max=200.0))
    H, K = _invariants(p, trajectory)
    assert _drift(H) < 1e-7
    assert _drift(K) > 1e-3


def test_follower_force_does_work() -> None:
    p = reference_params(k2=0.0)
    trajectory = integrate(ZieglerField(p, FieldKind.FULL), FullState(0.3, 0.0, 0.2, 0.1), IntegratorConfig(t_max=100.0))
    H, _ = _invariants(p, trajectory)
    assert _drift(H) > 1e-6
