"""Lab-wide configuration models."""

from __future__ import annotations

from enum import StrEnum
from uuid import uuid4

from pydantic import BaseModel, ConfigDict, Field, model_validator

from integrator.integrator_models import IntegratorConfig

U64_MAX = 2**64 - 1


class Environment(StrEnum):
    """Logging environment: rich console or JSON lines."""

    DEVELOPMENT = "development"
    PRODUCTION = "production"


class LogLevel(StrEnum):
    """Supported logging levels."""

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


class SystemConfig(BaseModel):
    """Process-level settings; never echoed into run artifacts."""

    model_config = ConfigDict(extra="forbid")

    run_id: str | None = None
    environment: Environment = Environment.DEVELOPMENT
    log_level: LogLevel = LogLevel.INFO
    log_dir: str = "logs"

    @model_validator(mode="after")
    def ensure_run_id(self) -> SystemConfig:
        if not self.run_id:
            self.run_id = f"ziegler-{uuid4().hex[:12]}"
        return self


class PeriodicSettings(BaseModel):
    """Crossing-search horizon and acceptance thresholds of the periodic-orbit detector."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    horizon: float = Field(default=500.0, gt=0.0)
    return_defect_tol: float = Field(default=1e-6, gt=0.0)
    jump_factor: float = Field(default=10.0, gt=1.0)
    min_region_cells: int = Field(default=50, ge=1)


class LyapunovSettings(BaseModel):
    """Benettin run length, renormalization and classification thresholds."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    t_total: float = Field(default=1e4, gt=0.0)
    renorm_interval: float = Field(default=1.0, gt=0.0)
    seed: int = Field(default=20_240_601, ge=0, le=U64_MAX)
    seeds: list[int] = Field(default_factory=lambda: [11, 23, 37, 41, 59])
    regular_threshold: float = Field(default=0.01, gt=0.0)
    chaotic_ratio: float = Field(default=5.0, gt=0.0)
    max_seed_spread: float = Field(default=0.10, gt=0.0)
    check_seeds: bool = False


class AnalysisSettings(BaseModel):
    """Section sizes and point-cloud thresholds."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    min_crossings: int = Field(default=500, ge=3)
    curve_threshold: float = Field(default=0.01, gt=0.0)
    curve_quantile: float = Field(default=1.0, gt=0.0, le=1.0)
    hull_ratio: float = Field(default=10.0, gt=0.0)
    recurrence_tol: float = Field(default=1e-6, gt=0.0)
    bracket_width: float = Field(default=0.05, gt=0.0)
    sampling_factor: int = Field(default=1, ge=1)


class LabConfig(BaseModel):
    """Defaults shared by every run, loaded from config/defaults.yaml."""

    model_config = ConfigDict(extra="forbid")

    system: SystemConfig = Field(default_factory=SystemConfig)
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)
    periodic: PeriodicSettings = Field(default_factory=PeriodicSettings)
    lyapunov: LyapunovSettings = Field(default_factory=LyapunovSettings)
    analysis: AnalysisSettings = Field(default_factory=AnalysisSettings)


__all__ = [
    "AnalysisSettings",
    "Environment",
    "LabConfig",
    "LogLevel",
    "LyapunovSettings",
    "PeriodicSettings",
    "SystemConfig",
    "U64_MAX",
]
