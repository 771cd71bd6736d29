"""
gesturedyn common utilities

Constants, errors, terminal output and file formats shared across modules.
"""

from .errors import (
    EXIT_DIVERGED,
    EXIT_INPUT,
    EXIT_OK,
    ConfigError,
    DegenerateMovementError,
    DivergenceError,
    GestureDynError,
    InputDataError,
    ParameterError,
    PowerLawError,
    SolverInstabilityError,
    handle_common_errors,
)
from .io import (
    TrajectoryLoader,
    read_json,
    read_table,
    read_trajectory_csv,
    write_csv,
    write_json,
    write_trajectory_csv,
    write_trajectory_family,
    write_trajectory_json,
)
from .output import (
    console,
    format_number,
    format_path,
    print_stats,
    print_summary,
    success,
    sweep_progress,
    warning,
)

__all__ = [
    # Error handling
    "EXIT_OK",
    "EXIT_INPUT",
    "EXIT_DIVERGED",
    "GestureDynError",
    "ParameterError",
    "ConfigError",
    "InputDataError",
    "DegenerateMovementError",
    "PowerLawError",
    "DivergenceError",
    "SolverInstabilityError",
    "handle_common_errors",
    # File formats
    "TrajectoryLoader",
    "read_json",
    "read_table",
    "read_trajectory_csv",
    "write_csv",
    "write_json",
    "write_trajectory_csv",
    "write_trajectory_family",
    "write_trajectory_json",
    # Output formatting
    "console",
    "success",
    "warning",
    "print_stats",
    "sweep_progress",
    "print_summary",
    "format_path",
    "format_number",
]
