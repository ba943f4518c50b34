"""Exception hierarchy shared by every lab package."""

from __future__ import annotations

from typing import Any


class ZieglerError(Exception):
    """Base class for lab failures."""


class ParameterDomainError(ZieglerError, ValueError):
    """Parameters outside the regime an operation is defined for."""


class NonFiniteStateError(ZieglerError, ValueError):
    """A state or parameter carries NaN or infinity."""


class SingularInertiaError(ZieglerError, ArithmeticError):
    """Inertia determinant collapsed; unreachable for valid parameters."""

    def __init__(self, determinant: float, phi1: float) -> None:
        super().__init__(f"inertia matrix singular at phi1={phi1!r} (det={determinant!r})")
        self.determinant = determinant
        self.phi1 = phi1


class IntegrationError(ZieglerError, RuntimeError):
    """Solver failure; `partial` holds the trajectory accepted so far."""

    def __init__(self, message: str, partial: Any = None) -> None:
        super().__init__(message)
        self.partial = partial


class ConfigError(ZieglerError, ValueError):
    """Run configuration cannot be used as given."""

    def __init__(self, message: str, details: list[dict[str, Any]] | None = None) -> None:
        super().__init__(message)
        self.details = details or []


__all__ = [
    "ConfigError",
    "IntegrationError",
    "NonFiniteStateError",
    "ParameterDomainError",
    "SingularInertiaError",
    "ZieglerError",
]
