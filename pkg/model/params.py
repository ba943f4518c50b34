"""Mechanical constants of the pendulum."""

from __future__ import annotations

import math
from enum import StrEnum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

SEPARABLE_RTOL = 1e-12


class FollowerLever(StrEnum):
    """Lever arm of the follower torque in the pivot equation."""

    L1 = "L1"
    L2 = "L2"


class Params(BaseModel):
    """Masses (kg), lengths (m), stiffnesses (N*m/rad) and the signed follower force (N)."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    m1: float = Field(gt=0.0)
    m2: float = Field(gt=0.0)
    m3: float = Field(gt=0.0)
    l1: float = Field(gt=0.0)
    l2: float = Field(gt=0.0)
    l3: float = Field(gt=0.0)
    k1: float = Field(default=0.0, ge=0.0)
    k2: float = Field(default=0.0, ge=0.0)
    F: float = 0.0
    follower_lever: FollowerLever = FollowerLever.L1

    @model_validator(mode="after")
    def ensure_positive_definite_inertia(self) -> Params:
        # det(A) = I*M*l2^2 - c^2*cos^2(phi1) is smallest where cos^2 = 1
        worst = self.inertia_sum * self.total_mass * self.l2**2 - self.coupling**2
        if not worst > 0.0:
            raise ValueError(f"inertia matrix not positive definite (min det={worst!r})")
        return self

    @property
    def inertia_sum(self) -> float:
        """m1*l1^2 + m3*l3^2, the constant A11."""

        return self.m1 * self.l1**2 + self.m3 * self.l3**2

    @property
    def coupling(self) -> float:
        """m1*l1*l2 - m3*l2*l3, the amplitude of the cos(phi1) terms."""

        return self.m1 * self.l1 * self.l2 - self.m3 * self.l2 * self.l3

    @property
    def total_mass(self) -> float:
        return self.m1 + self.m2 + self.m3

    @property
    def follower_arm(self) -> float:
        return self.l1 if self.follower_lever is FollowerLever.L1 else self.l2

    @property
    def is_separable(self) -> bool:
        """True when m1*l1 equals m3*l3 within relative 1e-12."""

        a = self.m1 * self.l1
        b = self.m3 * self.l3
        return math.isclose(a, b, rel_tol=SEPARABLE_RTOL, abs_tol=0.0)

    def inertia_determinant(self, phi1: float) -> float:
        cos_phi = math.cos(phi1)
        a11 = self.inertia_sum
        a12 = a11 + self.coupling * cos_phi
        a22 = self.total_mass * self.l2**2 + a11 + 2.0 * self.coupling * cos_phi
        return a11 * a22 - a12 * a12

    def with_updates(self, **changes: Any) -> Params:
        """Validated copy with some fields replaced."""

        return Params.model_validate({**self.model_dump(), **changes})


def reference_params(**overrides: Any) -> Params:
    """The experimental set: m=(1, 1, 3/2), l=(1, 1, 1), k1=k2=1, F=2."""

    values: dict[str, Any] = {
        "m1": 1.0,
        "m2": 1.0,
        "m3": 1.5,
        "l1": 1.0,
        "l2": 1.0,
        "l3": 1.0,
        "k1": 1.0,
        "k2": 1.0,
        "F": 2.0,
    }
    values.update(overrides)
    return Params.model_validate(values)


__all__ = ["FollowerLever", "Params", "SEPARABLE_RTOL", "reference_params"]
