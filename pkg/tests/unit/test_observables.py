from __future__ import annotations

import math

import numpy as np
import pytest

from core.errors import NonFiniteStateError
from model.params import reference_params
from model.states import FullState
from observables import (
    MomentumState,
    energy,
    from_momenta,
    hamiltonian_divergence,
    kinetic_energy,
    momentum_integral,
    potential_energy,
    to_momenta,
    velocity_divergence,
)
from tests.unit._ziegler_fixtures import random_full_states, random_params, unit_params


def test_zero_state_has_zero_energy() -> None:
    assert energy(reference_params(), FullState(0.0, 0.0, 0.0, 0.0)) == 0.0


def test_energy_of_pure_outer_rotation() -> None:
    assert energy(unit_params(), FullState(0.0, 0.0, 0.0, 1.0)) == pytest.approx(2.5, abs=1e-15)


def test_potential_energy_uses_both_springs() -> None:
    p = reference_params(k1=2.0, k2=3.0)
    assert potential_energy(p, FullState(0.5, -1.0, 4.0, 4.0)) == pytest.approx(0.25 + 1.5)


def test_momentum_integral_with_balanced_lever() -> None:
    p = unit_params()
    for phi1 in (0.0, 0.4, 2.0, -3.0):
        assert momentum_integral(p, FullState(phi1, 0.0, 1.0, 0.0)) == pytest.approx(2.0, abs=1e-14)


def test_momentum_integral_vanishes_at_rest() -> None:
    assert momentum_integral(reference_params(), FullState(1.2, -0.3, 0.0, 0.0)) == 0.0


@pytest.mark.parametrize("scale", [-1.0, 0.5, 3.0])
def test_momentum_integral_is_linear_in_velocities(scale: float) -> None:
    p = reference_params()
    for s in random_full_states(seed=11, count=20):
        scaled = FullState(s.phi1, s.phi2, scale * s.v1, scale * s.v2)
        assert momentum_integral(p, scaled) == pytest.approx(scale * momentum_integral(p, s), rel=1e-13, abs=1e-13)


def test_momentum_integral_equals_second_momentum() -> None:
    p = reference_params()
    for s in random_full_states(seed=12, count=20):
        assert momentum_integral(p, s) == pytest.approx(to_momenta(p, s).p2, rel=1e-12, abs=1e-12)


def test_zero_velocities_give_zero_momenta() -> None:
    ms = to_momenta(reference_params(), FullState(0.8, 1.0, 0.0, 0.0))
    assert (ms.p1, ms.p2) == (0.0, 0.0)


def test_momenta_round_trip() -> None:
    worst = 0.0
    for index, s in enumerate(random_full_states(seed=13, count=1000)):
        p = random_params(seed=index)
        back = from_momenta(p, to_momenta(p, s))
        worst = max(worst, float(np.max(np.abs(back.to_array() - s.to_array()))))
    assert worst < 1e-12


def test_first_momentum_is_kinetic_gradient() -> None:
    p = reference_params()
    h = 1e-4
    for s in random_full_states(seed=14, count=25):
        upper = kinetic_energy(p, FullState(s.phi1, s.phi2, s.v1 + h, s.v2))
        lower = kinetic_energy(p, FullState(s.phi1, s.phi2, s.v1 - h, s.v2))
        assert to_momenta(p, s).p1 == pytest.approx((upper - lower) / (2.0 * h), abs=1e-6)


def test_momentum_state_rejects_nan() -> None:
    with pytest.raises(NonFiniteStateError):
        MomentumState(0.0, 0.0, math.nan, 1.0)


@pytest.mark.parametrize("force", [0.0, 2.0, -3.5])
def test_flow_preserves_volume_in_momentum_coordinates(force: float) -> None:
    p = reference_params(F=force)
    for s in random_full_states(seed=15, count=100):
        assert abs(hamiltonian_divergence(p, to_momenta(p, s))) < 1e-5


def test_velocity_coordinates_are_not_volume_preserving() -> None:
    p = reference_params()
    divergences = [abs(velocity_divergence(p, s)) for s in random_full_states(seed=16, count=50)]
    assert max(divergences) > 1e-3
