"""Right-hand sides of the Ziegler pendulum in its full, reduced, separable, perturbed and rescaled forms."""

from __future__ import annotations

import math
from enum import StrEnum

import numpy as np

from core.errors import ParameterDomainError, SingularInertiaError
from model.params import Params
from model.states import FullState, InertiaAndForce, ReducedState, StateLayout, ensure_finite

SINGULAR_DET_RTOL = 1e-12


class FieldKind(StrEnum):
    """Which formulation a ZieglerField evaluates."""

    FULL = "full"
    REDUCED = "reduced"
    RESCALED = "rescaled"
    SEPARABLE = "separable"
    PERTURBED = "perturbed"


class SeparableForm(StrEnum):
    """Variant of the decoupled phi1 equation used when m1*l1 == m3*l3.

    DERIVED follows from the Lagrange equations by substitution. PRINTED drops the
    -k1*phi1/(m1*l1^2 + m3*l3^2) term from phi1''; both coincide when k1 == 0.
    """

    DERIVED = "derived"
    PRINTED = "printed"


_REDUCED_KINDS = frozenset({FieldKind.REDUCED, FieldKind.SEPARABLE, FieldKind.PERTURBED})


class ZieglerField:
    """Vector field f(t, y) over numpy state arrays, constants folded at construction."""

    def __init__(
        self,
        params: Params,
        kind: FieldKind = FieldKind.FULL,
        *,
        alpha: float = 0.0,
        separable_form: SeparableForm = SeparableForm.DERIVED,
    ) -> None:
        kind = FieldKind(kind)
        if kind in _REDUCED_KINDS and params.k2 != 0.0:
            raise ParameterDomainError(f"reduction invalid: {kind.value} field requires k2 == 0, got k2={params.k2!r}")
        if kind is FieldKind.SEPARABLE and not params.is_separable:
            raise ParameterDomainError(
                "separable field requires m1*l1 == m3*l3, "
                f"got {params.m1 * params.l1!r} vs {params.m3 * params.l3!r}"
            )
        if kind is FieldKind.PERTURBED and params.F != 0.0:
            raise ParameterDomainError(f"perturbed field requires F == 0, got F={params.F!r}")
        if not math.isfinite(alpha):
            raise ParameterDomainError(f"alpha must be finite, got {alpha!r}")

        self.params = params
        self.kind = kind
        self.alpha = float(alpha)
        self.separable_form = SeparableForm(separable_form)
        self.layout = StateLayout.REDUCED if kind in _REDUCED_KINDS else StateLayout.FULL
        self.dimension = len(self.layout.columns)

        self._inertia = params.inertia_sum
        self._coupling = params.coupling
        self._outer = params.total_mass * params.l2**2
        self._follower = params.F * params.follower_arm
        self._k1 = params.k1
        self._k2 = params.k2
        self._rhs = {
            FieldKind.FULL: self.full,
            FieldKind.REDUCED: self.reduced,
            FieldKind.RESCALED: self.rescaled,
            FieldKind.SEPARABLE: self.separable,
            FieldKind.PERTURBED: self.perturbed,
        }[kind]

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        return self._rhs(y)

    def __repr__(self) -> str:
        return f"ZieglerField(kind={self.kind.value}, alpha={self.alpha!r})"

    def terms(self, phi1: float, phi2: float, v1: float, v2: float) -> tuple[float, float, float, float, float]:
        """(A11, A12, A22, r1, r2); A21 is A12."""

        cos_phi = math.cos(phi1)
        sin_phi = math.sin(phi1)
        c = self._coupling
        a11 = self._inertia
        a12 = a11 + c * cos_phi
        a22 = self._outer + a11 + 2.0 * c * cos_phi
        r1 = -self._k1 * phi1 - c * v2 * v2 * sin_phi
        r2 = -self._follower * sin_phi - self._k2 * phi2 + c * v1 * (v1 + 2.0 * v2) * sin_phi
        return a11, a12, a22, r1, r2

    def accelerations(self, phi1: float, phi2: float, v1: float, v2: float) -> tuple[float, float]:
        a11, a12, a22, r1, r2 = self.terms(phi1, phi2, v1, v2)
        det = a11 * a22 - a12 * a12
        if det < SINGULAR_DET_RTOL * a11 * a22:
            raise SingularInertiaError(det, phi1)
        return (a22 * r1 - a12 * r2) / det, (a11 * r2 - a12 * r1) / det

    def full(self, y: np.ndarray) -> np.ndarray:
        phi1, phi2, v1, v2 = float(y[0]), float(y[1]), float(y[2]), float(y[3])
        acc1, acc2 = self.accelerations(phi1, phi2, v1, v2)
        return np.array([v1, v2, acc1, acc2])

    def reduced(self, y: np.ndarray) -> np.ndarray:
        phi1, v1, v2 = float(y[0]), float(y[1]), float(y[2])
        a11, a12, a22, r1, r2 = self.terms(phi1, 0.0, v1, v2)
        dv1 = (r1 - a12 / a22 * r2) / (a11 - a12 * a12 / a22)
        dv2 = (r2 - a12 / a11 * r1) / (a22 - a12 * a12 / a11)
        return np.array([v1, dv1, dv2])

    def perturbed(self, y: np.ndarray) -> np.ndarray:
        base = self.reduced(y)
        f1, f2 = symmetric_perturbation(self.alpha, float(y[0]), float(y[1]), float(y[2]))
        base[1] += f1
        base[2] += f2
        return base

    def separable(self, y: np.ndarray) -> np.ndarray:
        phi1, v1 = float(y[0]), float(y[1])
        spring = self._k1 * phi1
        acc1 = (self._follower * math.sin(phi1) - spring) / self._outer
        if self.separable_form is SeparableForm.DERIVED:
            acc1 -= spring / self._inertia
        return np.array([v1, acc1, -acc1 - spring / self._inertia])

    def rescaled(self, y: np.ndarray) -> np.ndarray:
        phi1, phi2, v1, v2 = float(y[0]), float(y[1]), float(y[2]), float(y[3])
        a11, a12, a22, r1, r2 = self.terms(phi1, phi2, v1, v2)
        det = a11 * a22 - a12 * a12
        return np.array([v1 * det, v2 * det, a22 * r1 - a12 * r2, a11 * r2 - a12 * r1])

    def density(self, phi1: float) -> float:
        """Time-rescaling factor D = A11*A22 - A12^2."""

        a11, a12, a22, _, _ = self.terms(phi1, 0.0, 0.0, 0.0)
        return a11 * a22 - a12 * a12


def symmetric_perturbation(alpha: float, phi1: float, v1: float, v2: float) -> tuple[float, float]:
    """Odd-in-phi1 forcing (f1, f2) = (-alpha*phi1*sin v2, alpha*phi1*sin v1)."""

    return -alpha * phi1 * math.sin(v2), alpha * phi1 * math.sin(v1)


def inertia_and_force(p: Params, s: FullState) -> InertiaAndForce:
    """Inertia coefficients and generalized forces of the Lagrange equations at s."""

    ensure_finite((s.phi1, s.phi2, s.v1, s.v2), "FullState")
    a11, a12, a22, r1, r2 = ZieglerField(p).terms(s.phi1, s.phi2, s.v1, s.v2)
    return InertiaAndForce(a11=a11, a12=a12, a21=a12, a22=a22, r1=r1, r2=r2)


def full_rhs(p: Params, s: FullState) -> FullState:
    """(v1, v2, phi1'', phi2'') from the 2x2 Lagrange system."""

    return FullState.from_array(ZieglerField(p, FieldKind.FULL).full(s.to_array()))


def reduced_rhs(p: Params, s: ReducedState) -> ReducedState:
    """Third-order system in (phi1, v1, v2); requires k2 == 0."""

    return ReducedState.from_array(ZieglerField(p, FieldKind.REDUCED).reduced(s.to_array()))


def separable_rhs(
    p: Params,
    s: ReducedState,
    form: SeparableForm = SeparableForm.DERIVED,
) -> ReducedState:
    """Decoupled phi1 oscillator plus the v2 balance; requires m1*l1 == m3*l3 and k2 == 0."""

    field = ZieglerField(p, FieldKind.SEPARABLE, separable_form=form)
    return ReducedState.from_array(field.separable(s.to_array()))


def perturbed_rhs(p: Params, s: ReducedState, alpha: float) -> ReducedState:
    """Reduced system plus the reversible forcing; requires F == 0 and k2 == 0."""

    field = ZieglerField(p, FieldKind.PERTURBED, alpha=alpha)
    return ReducedState.from_array(field.perturbed(s.to_array()))


def rescaled_rhs(p: Params, s: FullState) -> FullState:
    """Full system multiplied by D = A11*A22 - A12^2 (new time d tau = dt / D)."""

    return FullState.from_array(ZieglerField(p, FieldKind.RESCALED).rescaled(s.to_array()))


def separable_potential(
    p: Params,
    phi1: float,
    form: SeparableForm = SeparableForm.DERIVED,
) -> float:
    """Potential of the decoupled phi1 equation, zero at phi1 = 0."""

    outer = p.total_mass * p.l2**2
    follower = p.F * p.follower_arm
    value = (follower * (math.cos(phi1) - 1.0) + 0.5 * p.k1 * phi1 * phi1) / outer
    if form is SeparableForm.DERIVED:
        value += 0.5 * p.k1 * phi1 * phi1 / p.inertia_sum
    return value


__all__ = [
    "FieldKind",
    "SINGULAR_DET_RTOL",
    "SeparableForm",
    "ZieglerField",
    "full_rhs",
    "inertia_and_force",
    "perturbed_rhs",
    "reduced_rhs",
    "rescaled_rhs",
    "separable_potential",
    "separable_rhs",
    "symmetric_perturbation",
]
