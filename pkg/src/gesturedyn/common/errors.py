"""Error types and CLI error handling for gesturedyn.

Every library error carries a message, an optional suggestion, and the
process exit code the CLI should use when it escapes a command.
"""

import functools
import sys
from typing import Optional

# Process exit codes
EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DIVERGED = 3


class GestureDynError(Exception):
    """Base exception with actionable error messages."""

    exit_code = EXIT_INPUT

    def __init__(self, message: str, suggestion: Optional[str] = None):
        self.message = message
        self.suggestion = suggestion
        super().__init__(message)

    def print_error(self):
        """Print formatted error message with suggestions."""
        print(f"\n❌ Error: {self.message}\n", file=sys.stderr)

        if self.suggestion:
            print(f"💡 Suggestion: {self.suggestion}\n", file=sys.stderr)


class ParameterError(GestureDynError):
    """Raised when a model, scaling or solver parameter violates its invariants."""


class ConfigError(GestureDynError):
    """Raised when a run configuration cannot be parsed or validated."""

    def __init__(self, source: str, detail: str, line: Optional[int] = None):
        self.source = source
        self.line = line
        location = f"{source}:{line}" if line is not None else source
        super().__init__(
            message=f"Invalid configuration ({location}): {detail}",
            suggestion=(
                "Config files have the sections model, sim, output, sweep, "
                "forces, powerlaw and fit.\n"
                "   Override single values with --set section.key=value, e.g.\n"
                "      gesturedyn simulate --set model.k=4000 --set model.scaling=local"
            ),
        )


class InputDataError(GestureDynError):
    """Raised when an observed trajectory file is unusable."""

    def __init__(self, path: str, detail: str):
        self.path = path
        super().__init__(
            message=f"Unusable observed trajectory: {path}",
            suggestion=(
                f"Reason: {detail}\n\n"
                "Observed trajectories are CSV files with a header row\n"
                "   t,x or t,x,v sampled on a uniform time grid."
            ),
        )


class DegenerateMovementError(GestureDynError):
    """Raised when a landmark needs movement but the velocity is zero everywhere."""


class PowerLawError(ParameterError):
    """Raised when a log-log regression has unusable input."""


class DivergenceError(GestureDynError):
    """Raised when a trajectory left the divergence guard."""

    exit_code = EXIT_DIVERGED

    def __init__(self, blowup_time: Optional[float], detail: str = ""):
        self.blowup_time = blowup_time
        when = f" at t = {blowup_time:.6g} s" if blowup_time is not None else ""
        super().__init__(
            message=f"Simulation diverged{when}" + (f": {detail}" if detail else ""),
            suggestion=(
                "Proportional scaling (d' = d*k) is only stable for |x0 - T| <= 1.\n"
                "   Use --set model.scaling=local or --set model.scaling=global "
                "for larger distances."
            ),
        )


class SolverInstabilityError(GestureDynError):
    """Raised when the adaptive step size collapses before the guard trips."""

    exit_code = EXIT_DIVERGED

    def __init__(self, time: float, detail: str):
        self.time = time
        super().__init__(
            message=f"Integrator step size collapsed at t = {time:.6g} s",
            suggestion=f"Solver message: {detail}",
        )


def handle_common_errors(func):
    """Decorator to turn library errors into formatted messages and exit codes.

    Example:
        @handle_common_errors
        def simulate(...):
            ...
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except GestureDynError as e:
            e.print_error()
            sys.exit(e.exit_code)
        except (FileNotFoundError, PermissionError) as e:
            error = GestureDynError(
                message=f"Cannot access {getattr(e, 'filename', None) or 'file'}: {e.strerror or e}",
                suggestion="Check that the path exists and is readable/writable.",
            )
            error.print_error()
            sys.exit(EXIT_INPUT)

    return wrapper
