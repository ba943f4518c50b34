"""Jacobian of the time-rescaled field, analytic and by central differences."""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np

from model.params import Params
from model.states import FullState

FD_STEP = 1e-6


class RescaledJacobian:
    """d/dy of (v1*D, v2*D, A22*r1 - A12*r2, A11*r2 - A12*r1), columns (phi1, phi2, v1, v2)."""

    def __init__(self, params: Params) -> None:
        self._inertia = params.inertia_sum
        self._coupling = params.coupling
        self._outer = params.total_mass * params.l2**2
        self._follower = params.F * params.follower_arm
        self._k1 = params.k1
        self._k2 = params.k2

    def __call__(self, y: np.ndarray) -> np.ndarray:
        phi1, phi2, v1, v2 = float(y[0]), float(y[1]), float(y[2]), float(y[3])
        cos_phi = math.cos(phi1)
        sin_phi = math.sin(phi1)
        c = self._coupling
        k2 = self._k2

        a11 = self._inertia
        a12 = a11 + c * cos_phi
        a22 = self._outer + a11 + 2.0 * c * cos_phi
        d_a12 = -c * sin_phi
        d_a22 = -2.0 * c * sin_phi
        det = a11 * a22 - a12 * a12
        d_det = a11 * d_a22 - 2.0 * a12 * d_a12

        r1 = -self._k1 * phi1 - c * v2 * v2 * sin_phi
        r2 = -self._follower * sin_phi - k2 * phi2 + c * v1 * (v1 + 2.0 * v2) * sin_phi
        r1_phi1 = -self._k1 - c * v2 * v2 * cos_phi
        r1_v2 = -2.0 * c * v2 * sin_phi
        r2_phi1 = -self._follower * cos_phi + c * v1 * (v1 + 2.0 * v2) * cos_phi
        r2_v1 = 2.0 * c * (v1 + v2) * sin_phi
        r2_v2 = 2.0 * c * v1 * sin_phi

        return np.array(
            [
                [v1 * d_det, 0.0, det, 0.0],
                [v2 * d_det, 0.0, 0.0, det],
                [
                    d_a22 * r1 + a22 * r1_phi1 - d_a12 * r2 - a12 * r2_phi1,
                    a12 * k2,
                    -a12 * r2_v1,
                    a22 * r1_v2 - a12 * r2_v2,
                ],
                [
                    a11 * r2_phi1 - d_a12 * r1 - a12 * r1_phi1,
                    -a11 * k2,
                    a11 * r2_v1,
                    a11 * r2_v2 - a12 * r1_v2,
                ],
            ]
        )


def jacobian(p: Params, s: FullState) -> np.ndarray:
    """Exact 4x4 Jacobian of the rescaled field at s."""

    return RescaledJacobian(p)(s.to_array())


def finite_difference_jacobian(
    f: Callable[[np.ndarray], np.ndarray],
    y: np.ndarray,
    step: float = FD_STEP,
) -> np.ndarray:
    """Central differences, column j perturbed by step * max(1, |y_j|)."""

    y = np.asarray(y, dtype=float)
    columns = []
    for index in range(len(y)):
        h = step * max(1.0, abs(float(y[index])))
        upper = y.copy()
        lower = y.copy()
        upper[index] += h
        lower[index] -= h
        columns.append((np.asarray(f(upper)) - np.asarray(f(lower))) / (upper[index] - lower[index]))
    return np.column_stack(columns)


__all__ = ["FD_STEP", "RescaledJacobian", "finite_difference_jacobian", "jacobian"]
