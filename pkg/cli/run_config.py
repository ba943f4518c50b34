"""Schema-versioned run configuration and its loader."""

from __future__ import annotations

from enum import StrEnum
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from analysis.analysis_models import SectionPlane
from core.config_loader import DEFAULTS_PATH, deep_merge, load_lab_config, log_validation_error, read_mapping
from core.config_models import AnalysisSettings, LabConfig, LyapunovSettings, PeriodicSettings
from integrator.integrator_models import EventKind, IntegratorConfig
from model.equations import FieldKind, SeparableForm, ZieglerField
from model.params import Params
from model.states import FullState, ReducedState, StateLayout
from periodic.periodic_models import GridSpec

SCHEMA_VERSION = 1


class Command(StrEnum):
    SIMULATE = "simulate"
    OBSERVE = "observe"
    PERIODIC = "periodic"
    MLCE = "mlce"
    SECTION = "section"
    SWEEP = "sweep"


class SweepKind(StrEnum):
    FORCE = "force"
    IC = "ic"
    FAMILY = "family"


class SweepSettings(BaseModel):
    """Swept axis: force values, IC indices n (v2 = (n + 1) * v2_step) or an anchor grid."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    kind: SweepKind
    values: list[float] = Field(default_factory=list)
    n_values: list[int] = Field(default_factory=lambda: list(range(10)))
    v2_step: float = Field(default=0.1, gt=0.0)
    grid: GridSpec | None = None

    @model_validator(mode="after")
    def ensure_axis(self) -> SweepSettings:
        if self.kind is SweepKind.FORCE and not self.values:
            raise ValueError("force sweep needs a non-empty 'values' list")
        if self.kind is SweepKind.IC and not self.n_values:
            raise ValueError("ic sweep needs a non-empty 'n_values' list")
        if self.kind is SweepKind.FAMILY and self.grid is None:
            raise ValueError("family sweep needs a 'grid'")
        return self


_REDUCED_FORMULATIONS = {FieldKind.REDUCED, FieldKind.SEPARABLE, FieldKind.PERTURBED}


class RunConfig(BaseModel):
    """Everything one CLI run needs; a sidecar's `config` block is a valid RunConfig."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    schema_version: Literal[1] = SCHEMA_VERSION
    command: Command
    params: Params
    formulation: FieldKind = FieldKind.FULL
    alpha: float = 0.0
    separable_form: SeparableForm = SeparableForm.DERIVED
    initial_state: list[float] = Field(default_factory=list)
    plane: SectionPlane = SectionPlane.V1_ZERO
    events: list[EventKind] = Field(default_factory=list)
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)
    periodic: PeriodicSettings = Field(default_factory=PeriodicSettings)
    lyapunov: LyapunovSettings = Field(default_factory=LyapunovSettings)
    analysis: AnalysisSettings = Field(default_factory=AnalysisSettings)
    sweep: SweepSettings | None = None
    input_trajectory: str | None = None
    output_stem: str | None = None

    @model_validator(mode="after")
    def ensure_command_inputs(self) -> RunConfig:
        if self.formulation in _REDUCED_FORMULATIONS:
            # ParameterDomainError is a ValueError, reported as a validation error
            self.field()
        command = self.command
        if command is Command.OBSERVE:
            if not self.input_trajectory:
                raise ValueError("observe needs 'input_trajectory'")
            return self
        if command is Command.SWEEP:
            if self.sweep is None:
                raise ValueError("sweep needs a 'sweep' block")
            if self.sweep.kind is SweepKind.IC and len(self.initial_state) != 4:
                raise ValueError("ic sweep needs a 4-component 'initial_state' base")
            if self.sweep.kind is SweepKind.FORCE and len(self.initial_state) != 3:
                raise ValueError("force sweep needs a 3-component reduced 'initial_state'")
            if self.sweep.kind is SweepKind.FAMILY and self.formulation not in _REDUCED_FORMULATIONS:
                raise ValueError("family sweep needs formulation reduced, separable or perturbed")
            return self
        if command is Command.PERIODIC and self.formulation not in _REDUCED_FORMULATIONS:
            raise ValueError("periodic needs formulation reduced, separable or perturbed")
        if command in {Command.MLCE, Command.SECTION} and self.formulation in _REDUCED_FORMULATIONS:
            raise ValueError(f"{command.value} needs the full or rescaled formulation")
        if self.formulation in _REDUCED_FORMULATIONS and EventKind.PHI2_MOD_PI in self.events:
            raise ValueError("phi2 events need the full or rescaled formulation")
        expected = 3 if self.formulation in _REDUCED_FORMULATIONS else 4
        if len(self.initial_state) != expected:
            raise ValueError(
                f"{self.formulation.value} formulation needs {expected} initial_state components, "
                f"got {len(self.initial_state)}"
            )
        return self

    @property
    def layout(self) -> StateLayout:
        return StateLayout.REDUCED if self.formulation in _REDUCED_FORMULATIONS else StateLayout.FULL

    @property
    def stem(self) -> str:
        return self.output_stem or self.command.value

    def field(self) -> ZieglerField:
        return ZieglerField(self.params, self.formulation, alpha=self.alpha, separable_form=self.separable_form)

    def full_state(self) -> FullState:
        return FullState.from_array(self.initial_state)

    def reduced_state(self) -> ReducedState:
        return ReducedState.from_array(self.initial_state)

    def echo(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


def load_run_config(
    path: Path,
    *,
    defaults_path: Path = DEFAULTS_PATH,
    lab: LabConfig | None = None,
    overrides: dict[str, Any] | None = None,
) -> RunConfig:
    """Merge the run file (or a sidecar's `config` block) over the lab defaults."""

    lab = lab if lab is not None else load_lab_config(defaults_path)
    payload = read_mapping(path)
    if isinstance(payload.get("config"), dict) and "schema_version" in payload:
        payload = payload["config"]

    merged: dict[str, Any] = {
        "integrator": lab.integrator.model_dump(mode="json"),
        "periodic": lab.periodic.model_dump(mode="json"),
        "lyapunov": lab.lyapunov.model_dump(mode="json"),
        "analysis": lab.analysis.model_dump(mode="json"),
    }
    deep_merge(merged, payload)
    if overrides:
        deep_merge(merged, overrides)
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as exc:
        log_validation_error(exc, source=str(path))
        raise


__all__ = ["Command", "RunConfig", "SCHEMA_VERSION", "SweepKind", "SweepSettings", "load_run_config"]
