"""Mechanical parameters, state types and right-hand sides of the Ziegler pendulum."""

from model.equations import (
    FieldKind,
    SeparableForm,
    ZieglerField,
    full_rhs,
    inertia_and_force,
    perturbed_rhs,
    reduced_rhs,
    rescaled_rhs,
    separable_potential,
    separable_rhs,
)
from model.params import FollowerLever, Params, reference_params
from model.states import FullState, InertiaAndForce, ReducedState

__all__ = [
    "FieldKind",
    "FollowerLever",
    "FullState",
    "InertiaAndForce",
    "Params",
    "ReducedState",
    "SeparableForm",
    "ZieglerField",
    "full_rhs",
    "inertia_and_force",
    "reference_params",
    "perturbed_rhs",
    "reduced_rhs",
    "rescaled_rhs",
    "separable_potential",
    "separable_rhs",
]
