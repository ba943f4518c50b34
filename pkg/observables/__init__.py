"""Conserved and diagnostic quantities of the pendulum."""

from observables.invariants import energy, kinetic_energy, momentum_integral, potential_energy
from observables.momenta import (
    MomentumState,
    from_momenta,
    hamiltonian_divergence,
    momentum_field,
    to_momenta,
    velocity_divergence,
)

__all__ = [
    "MomentumState",
    "energy",
    "from_momenta",
    "hamiltonian_divergence",
    "kinetic_energy",
    "momentum_field",
    "momentum_integral",
    "potential_energy",
    "to_momenta",
    "velocity_divergence",
]
