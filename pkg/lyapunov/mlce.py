"""Maximum Lyapunov characteristic exponent by the single-vector Benettin method."""

from __future__ import annotations

import math
from typing import Protocol

import numpy as np
from joblib import Parallel, delayed

from core.errors import IntegrationError, ParameterDomainError
from core.logger import get_logger
from integrator.integrator_models import IntegratorConfig
from integrator.runge_kutta import advance
from lyapunov.jacobian import RescaledJacobian
from lyapunov.lyapunov_models import ExponentVerdict, LyapunovRecord, SeedStabilityReport
from model.equations import FieldKind, ZieglerField
from model.params import Params
from model.states import FullState, StateLayout

MIN_SEEDS = 3
TANGENT_JITTER = 1e-10


class TangentSystem(Protocol):
    """Base field together with its Jacobian."""

    dimension: int
    layout: StateLayout

    def base(self, y: np.ndarray) -> np.ndarray: ...

    def tangent(self, y: np.ndarray) -> np.ndarray: ...

    def density(self, y: np.ndarray) -> float: ...


class RescaledZieglerTangent:
    """Time-rescaled pendulum field with its analytic Jacobian."""

    dimension = 4
    layout = StateLayout.FULL

    def __init__(self, params: Params) -> None:
        self._field = ZieglerField(params, FieldKind.RESCALED)
        self._jacobian = RescaledJacobian(params)

    def base(self, y: np.ndarray) -> np.ndarray:
        return self._field.rescaled(y)

    def tangent(self, y: np.ndarray) -> np.ndarray:
        return self._jacobian(y)

    def density(self, y: np.ndarray) -> float:
        return self._field.density(float(y[0]))


class LinearTangentSystem:
    """x' = M x with the base point held at the origin; exponents are the real parts of eig(M)."""

    layout = StateLayout.PLANAR

    def __init__(self, matrix: np.ndarray) -> None:
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"linear tangent system needs a square matrix, got shape {matrix.shape}")
        self.matrix = matrix
        self.dimension = matrix.shape[0]

    def base(self, y: np.ndarray) -> np.ndarray:
        return np.zeros(self.dimension)

    def tangent(self, y: np.ndarray) -> np.ndarray:
        return self.matrix

    def density(self, y: np.ndarray) -> float:
        return 1.0


class _VariationalField:
    """State and tangent vector co-evolved as one 2n-dimensional system."""

    def __init__(self, system: TangentSystem) -> None:
        self.system = system
        self.layout = system.layout
        self.dimension = 2 * system.dimension
        self._n = system.dimension

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        state = y[: self._n]
        return np.concatenate((self.system.base(state), self.system.tangent(state) @ y[self._n :]))


def initial_tangent(dimension: int, seed: int) -> np.ndarray:
    """Unit vector drawn from numpy's PCG64 stream for `seed`."""

    vector = np.random.default_rng(seed).standard_normal(dimension)
    return vector / np.linalg.norm(vector)


def benettin(
    system: TangentSystem,
    y0: np.ndarray,
    cfg: IntegratorConfig,
    *,
    t_total: float,
    renorm_interval: float,
    seed: int | None = None,
    initial_vector: np.ndarray | None = None,
    params: Params | None = None,
) -> LyapunovRecord:
    """Co-integrate state and tangent vector, renormalizing every `renorm_interval`.

    An explicit `initial_vector` receives a component of relative size
    TANGENT_JITTER drawn from the PCG64 stream for `seed` (0 when no seed is
    given), so a start exactly on a contracting eigenvector still picks up the
    growing direction.
    """

    if not t_total > 0.0 or not renorm_interval > 0.0:
        raise ParameterDomainError(
            f"t_total and renorm_interval must be positive, got {t_total!r}, {renorm_interval!r}"
        )
    n = system.dimension
    y0 = np.asarray(y0, dtype=float)
    if initial_vector is None:
        if seed is None:
            raise ParameterDomainError("either seed or initial_vector is required")
        vector = initial_tangent(n, seed)
    else:
        vector = np.asarray(initial_vector, dtype=float)
        vector = vector / np.linalg.norm(vector)
        vector = vector + TANGENT_JITTER * initial_tangent(n, 0 if seed is None else seed)
        vector = vector / np.linalg.norm(vector)

    field = _VariationalField(system)
    augmented = np.concatenate((y0, vector))
    intervals = max(1, math.ceil(t_total / renorm_interval - 1e-9))
    times: list[float] = []
    logs: list[float] = []
    sums: list[float] = []
    accumulated = 0.0
    density_min = density_max = system.density(y0)
    t = 0.0
    step: float | None = None

    def record() -> LyapunovRecord:
        time_array = np.array(times, dtype=float)
        sum_array = np.array(sums, dtype=float)
        return LyapunovRecord(
            times=time_array,
            chi=sum_array / time_array if len(time_array) else sum_array,
            renorm_log=np.array(logs, dtype=float),
            accumulated=sum_array,
            seed=seed if initial_vector is None else None,
            initial_state=y0.copy(),
            initial_vector=vector.copy(),
            final_state=augmented[:n].copy(),
            density_min=density_min,
            density_max=density_max,
            params=params,
        )

    for index in range(1, intervals + 1):
        t_next = min(index * renorm_interval, t_total)
        try:
            augmented, step = advance(field, t, augmented, t_next, cfg, first_step=step)
        except IntegrationError as exc:
            raise IntegrationError(f"mlce integration failed near t={t!r}: {exc}", partial=record()) from exc
        norm = float(np.linalg.norm(augmented[n:]))
        if not math.isfinite(norm) or norm == 0.0:
            raise IntegrationError(f"tangent vector degenerated at t={t_next!r} (norm={norm!r})", partial=record())
        log_norm = math.log(norm)
        augmented[n:] /= norm
        accumulated += log_norm
        t = t_next
        times.append(t)
        logs.append(log_norm)
        sums.append(accumulated)
        density = system.density(augmented[:n])
        density_min = min(density_min, density)
        density_max = max(density_max, density)

    result = record()
    get_logger("lyapunov.mlce").info(
        "mlce_finished",
        seed=result.seed,
        t_total=t,
        final_chi=result.final_chi,
        density_min=density_min,
        density_max=density_max,
    )
    return result


def mlce(
    p: Params,
    s0: FullState,
    cfg: IntegratorConfig,
    seed: int,
    t_total: float,
    renorm_interval: float,
    *,
    initial_vector: np.ndarray | None = None,
) -> LyapunovRecord:
    """Maximum exponent of the rescaled pendulum flow through s0, in rescaled time."""

    return benettin(
        RescaledZieglerTangent(p),
        s0.to_array(),
        cfg,
        t_total=t_total,
        renorm_interval=renorm_interval,
        seed=seed,
        initial_vector=initial_vector,
        params=p,
    )


def exponent_verdict(chi: float, *, regular_threshold: float = 0.01, chaotic_ratio: float = 5.0) -> ExponentVerdict:
    """Regular below the threshold, chaotic above `chaotic_ratio` times it, undecided between."""

    if not math.isfinite(chi) or chi > chaotic_ratio * regular_threshold:
        return ExponentVerdict.CHAOTIC
    if chi < regular_threshold:
        return ExponentVerdict.REGULAR
    return ExponentVerdict.UNDECIDED


def chi_vs_seed_stability(
    p: Params,
    s0: FullState,
    cfg: IntegratorConfig,
    seeds: list[int],
    *,
    t_total: float,
    renorm_interval: float,
    regular_threshold: float = 0.01,
    max_spread: float = 0.10,
    jobs: int = 1,
) -> SeedStabilityReport:
    """Final exponent per seed; stable when all are regular or their spread is within max_spread of the largest."""

    if len(seeds) < MIN_SEEDS:
        raise ParameterDomainError(f"seed stability needs at least {MIN_SEEDS} seeds, got {len(seeds)}")
    records = Parallel(n_jobs=jobs)(
        delayed(mlce)(p, s0, cfg, seed, t_total, renorm_interval) for seed in seeds
    )
    finals = [record.final_chi for record in records]
    largest = max(finals)
    spread = largest - min(finals)
    relative = spread / largest if largest > 0.0 else math.inf
    all_regular = all(value < regular_threshold for value in finals)
    return SeedStabilityReport(
        seeds=list(seeds),
        final_chi=finals,
        spread=spread,
        relative_spread=relative,
        all_regular=all_regular,
        stable=all_regular or relative < max_spread,
    )


__all__ = [
    "LinearTangentSystem",
    "MIN_SEEDS",
    "RescaledZieglerTangent",
    "TangentSystem",
    "benettin",
    "chi_vs_seed_stability",
    "exponent_verdict",
    "initial_tangent",
    "mlce",
]
