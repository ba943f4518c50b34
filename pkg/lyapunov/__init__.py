"""Maximum Lyapunov exponent of the rescaled flow and the Jacobian it relies on."""

from lyapunov.jacobian import RescaledJacobian, finite_difference_jacobian, jacobian
from lyapunov.lyapunov_models import ExponentVerdict, LyapunovRecord, SeedStabilityReport
from lyapunov.mlce import (
    LinearTangentSystem,
    RescaledZieglerTangent,
    TangentSystem,
    benettin,
    chi_vs_seed_stability,
    exponent_verdict,
    mlce,
)

__all__ = [
    "ExponentVerdict",
    "LinearTangentSystem",
    "LyapunovRecord",
    "RescaledJacobian",
    "RescaledZieglerTangent",
    "SeedStabilityReport",
    "TangentSystem",
    "benettin",
    "chi_vs_seed_stability",
    "exponent_verdict",
    "finite_difference_jacobian",
    "jacobian",
    "mlce",
]
