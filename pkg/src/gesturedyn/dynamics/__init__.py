"""Gesture ODEs, scaling laws for the nonlinear coefficient, and the integrator."""

from .model import (
    ForceProfile,
    GestureParams,
    State,
    acceleration,
    critical_damping,
    force_components,
    force_profile,
    force_roots,
    restoring_force,
)
from .scaling import (
    EffectiveCoefficient,
    ScalingMode,
    effective_coefficient,
    inverse_square_curve,
    lambda_factor,
    movement_range,
    scale_global,
    scale_local,
    scale_proportional,
)
from .solver import (
    SimConfig,
    Trajectory,
    TrajectoryStatus,
    integrate,
    integrate_linear_analytic,
)

__all__ = [
    # model
    "ForceProfile",
    "GestureParams",
    "State",
    "acceleration",
    "critical_damping",
    "force_components",
    "force_profile",
    "force_roots",
    "restoring_force",
    # scaling
    "EffectiveCoefficient",
    "ScalingMode",
    "effective_coefficient",
    "inverse_square_curve",
    "lambda_factor",
    "movement_range",
    "scale_global",
    "scale_local",
    "scale_proportional",
    # solver
    "SimConfig",
    "Trajectory",
    "TrajectoryStatus",
    "integrate",
    "integrate_linear_analytic",
]
