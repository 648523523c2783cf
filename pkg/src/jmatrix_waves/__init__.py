"""Series representations of free-wave reference solutions in 1D and 3D.

The regular (f) and complementary (g) solutions are expanded in a
parity-adapted Hermite basis (1D) or a Laguerre basis (3D radial problem),
with coefficients available both in closed form and from the three-term
recursion obeyed by the tridiagonal wave operator.
"""
from .analysis import (
    DeadZoneResult,
    PhaseFitResult,
    ResidualReport,
    SeriesQuery,
    convergence_profile,
    dead_zone_radius,
    phase_fit,
    recursion_residuals,
)
from .estimators import ReferenceWaves1D, ReferenceWaves3D
from .exceptions import ConvergenceError, IllConditionedFitError, QuadratureError, TurningPointError
from .waves1d import EVEN, ODD, CoefficientVector, Kind, Parity, ParityChannel, eval_series_1d
from .waves3d import AngularChannel, CoefficientVector3D, EnergyAngle, energy_angle, eval_series_3d

__version__ = "0.1.0"

__all__ = [
    "AngularChannel",
    "CoefficientVector",
    "CoefficientVector3D",
    "ConvergenceError",
    "DeadZoneResult",
    "EVEN",
    "EnergyAngle",
    "IllConditionedFitError",
    "Kind",
    "ODD",
    "Parity",
    "ParityChannel",
    "PhaseFitResult",
    "QuadratureError",
    "ReferenceWaves1D",
    "ReferenceWaves3D",
    "ResidualReport",
    "SeriesQuery",
    "TurningPointError",
    "convergence_profile",
    "dead_zone_radius",
    "energy_angle",
    "eval_series_1d",
    "eval_series_3d",
    "phase_fit",
    "recursion_residuals",
]
