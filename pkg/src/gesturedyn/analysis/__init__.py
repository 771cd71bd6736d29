"""Kinematic landmarks, sweeps, power laws, parameter fitting and figure datasets."""

from .fitting import (
    FitProblem,
    FitResult,
    FreeParameter,
    fit_gesture,
    fit_many,
    objective,
    synthesize_observation,
)
from .kinematics import (
    KinematicSummary,
    movement_window,
    peak_velocity,
    settling_duration,
    summarize,
    velocity_symmetry,
)
from .power_law import PowerLawFit, fit_power_law, fit_sweep_power_laws, fit_through_origin
from .sweeps import (
    SweepParameter,
    SweepRecord,
    linear_spaced,
    log_spaced,
    run_family,
    run_sweep,
    sweep_initial_positions,
    sweep_ratios,
    sweep_stiffness,
    sweep_targets,
)

__all__ = [
    # kinematics
    "KinematicSummary",
    "movement_window",
    "peak_velocity",
    "settling_duration",
    "summarize",
    "velocity_symmetry",
    # sweeps
    "SweepParameter",
    "SweepRecord",
    "linear_spaced",
    "log_spaced",
    "run_family",
    "run_sweep",
    "sweep_initial_positions",
    "sweep_ratios",
    "sweep_stiffness",
    "sweep_targets",
    # power laws
    "PowerLawFit",
    "fit_power_law",
    "fit_sweep_power_laws",
    "fit_through_origin",
    # fitting
    "FitProblem",
    "FitResult",
    "FreeParameter",
    "fit_gesture",
    "fit_many",
    "objective",
    "synthesize_observation",
]
