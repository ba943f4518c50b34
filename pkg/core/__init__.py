"""Core plumbing for the Ziegler pendulum lab: logging, configuration, errors, artifacts."""

from core.errors import (
    ConfigError,
    IntegrationError,
    NonFiniteStateError,
    ParameterDomainError,
    SingularInertiaError,
    ZieglerError,
)

__all__ = [
    "ConfigError",
    "IntegrationError",
    "NonFiniteStateError",
    "ParameterDomainError",
    "SingularInertiaError",
    "ZieglerError",
]
