"""
Gesture dynamics: the critically damped point attractor with an optional
nonlinear restoring force.

    m*x'' + b*x' + k*(x - T) - d'*(x - T)^3 = 0,    b = 2*sqrt(m*k)

With d' = 0 this is the linear task-dynamic gesture. The raw ratio d is
converted to d' by :mod:`gesturedyn.dynamics.scaling`.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple, Union

import numpy as np

from gesturedyn.common.constants import DEFAULT_EXPONENT, DEFAULT_MASS
from gesturedyn.common.errors import ParameterError
from gesturedyn.dynamics.scaling import EffectiveCoefficient, ScalingMode, effective_coefficient

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class GestureParams:
    """Full specification of one gesture's dynamics.

    Attributes:
        k: Stiffness (1/s^2)
        d: Nonlinear ratio, the user-facing value before scaling
        target: Equilibrium position T
        scaling: Scaling law for d
        n: Exponent of the polynomial term
        movement_range: Global movement range D (global scaling only)
        m: Mass
    """

    k: float
    d: float = 0.0
    target: float = 0.0
    scaling: ScalingMode = ScalingMode.PROPORTIONAL
    n: int = DEFAULT_EXPONENT
    movement_range: Optional[float] = None
    m: float = DEFAULT_MASS

    def __post_init__(self):
        # Accept plain strings from config documents
        if not isinstance(self.scaling, ScalingMode):
            try:
                object.__setattr__(self, "scaling", ScalingMode(self.scaling))
            except ValueError:
                choices = ", ".join(mode.value for mode in ScalingMode)
                raise ParameterError(f"Unknown scaling mode '{self.scaling}' (choose from {choices})")

        if not (math.isfinite(self.m) and self.m > 0):
            raise ParameterError(f"Mass m must be finite and > 0 (got {self.m})")
        if not (math.isfinite(self.k) and self.k > 0):
            raise ParameterError(f"Stiffness k must be finite and > 0 (got {self.k})")
        if not math.isfinite(self.n) or int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"Exponent n must be an integer >= 1 (got {self.n})")
        object.__setattr__(self, "n", int(self.n))
        if not math.isfinite(self.target):
            raise ParameterError(f"Target T must be finite (got {self.target})")

        if self.scaling is ScalingMode.PROPORTIONAL:
            if not (math.isfinite(self.d) and self.d >= 0):
                raise ParameterError(f"Ratio d must be finite and >= 0 (got {self.d})")
        elif not 0 <= self.d < 1:
            raise ParameterError(
                f"Ratio d must satisfy 0 <= d < 1 under {self.scaling.value} scaling (got {self.d})"
            )

        if self.scaling is ScalingMode.GLOBAL:
            if self.movement_range is None or not (math.isfinite(self.movement_range) and self.movement_range > 0):
                raise ParameterError(
                    f"Global scaling needs a movement range D > 0 (got {self.movement_range})",
                    suggestion="Set model.D, e.g. --set model.D=10",
                )

    @property
    def damping(self) -> float:
        """Critical damping coefficient for this mass and stiffness."""
        return critical_damping(self.m, self.k)

    def coefficient(self, x0: float) -> EffectiveCoefficient:
        """Effective nonlinear coefficient for a gesture starting at x0."""
        return effective_coefficient(self, x0)

    def replace(self, **changes) -> "GestureParams":
        """Validated copy with some fields changed."""
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "d": self.d,
            "T": self.target,
            "scaling": self.scaling.value,
            "n": self.n,
            "D": self.movement_range,
            "m": self.m,
        }


@dataclass(frozen=True)
class State:
    """Instantaneous position and velocity."""

    x: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.v)):
            raise ParameterError(f"State must be finite (got x={self.x}, v={self.v})")


def critical_damping(m: float, k: float) -> float:
    """Damping b = 2*sqrt(m*k) of the critically damped oscillator."""
    if not m > 0 or not k > 0:
        raise ParameterError(f"Critical damping needs m > 0 and k > 0 (got m={m}, k={k})")
    return 2.0 * math.sqrt(m * k)


def odd_power(dx: ArrayLike, n: int) -> ArrayLike:
    """dx*|dx|^(n-1): equals dx^n for odd n and keeps the force odd for even n."""
    if n == 1:
        return dx
    if n == 3:
        return dx * dx * dx
    return dx * np.abs(dx) ** (n - 1)


def acceleration(
    state: State,
    target: float,
    k: float,
    b: float,
    d_eff: float,
    m: float = DEFAULT_MASS,
    n: int = DEFAULT_EXPONENT,
) -> float:
    """Acceleration (-b*v - k*(x - T) + d'*(x - T)^3) / m."""
    dx = state.x - target
    return (-b * state.v - k * dx + d_eff * odd_power(dx, n)) / m


def force_components(
    x: ArrayLike,
    target: float,
    k: float,
    d_eff: float,
    n: int = DEFAULT_EXPONENT,
) -> Tuple[ArrayLike, ArrayLike]:
    """Linear -k*(x - T) and nonlinear d'*(x - T)^n parts of the restoring force."""
    dx = np.asarray(x, dtype=float) - target
    return -k * dx, d_eff * odd_power(dx, n)


def restoring_force(
    x: ArrayLike,
    target: float,
    k: float,
    d_eff: float,
    n: int = DEFAULT_EXPONENT,
) -> ArrayLike:
    """Summed restoring force -k*(x - T) + d'*(x - T)^n."""
    linear, nonlinear = force_components(x, target, k, d_eff, n)
    return linear + nonlinear


def force_roots(
    k: float,
    d_eff: float,
    target: float = 0.0,
    n: int = DEFAULT_EXPONENT,
) -> Tuple[float, ...]:
    """Real zeros of the summed force, in increasing order."""
    if d_eff <= 0 or n == 1:
        return (target,)
    half_width = (k / d_eff) ** (1.0 / (n - 1))
    return (target - half_width, target, target + half_width)


@dataclass(frozen=True)
class ForceProfile:
    """Restoring force sampled on a uniform position grid.

    Attributes:
        x: Positions
        linear: Linear force component at each position
        nonlinear: Nonlinear force component at each position
        total: Summed force
        coefficient: Effective coefficient used for the nonlinear term
    """

    x: np.ndarray
    linear: np.ndarray
    nonlinear: np.ndarray
    total: np.ndarray
    coefficient: EffectiveCoefficient


def force_profile(
    params: GestureParams,
    x_min: float,
    x_max: float,
    n_points: int,
    x0: Optional[float] = None,
) -> ForceProfile:
    """Sample the linear, nonlinear and summed force over [x_min, x_max].

    Args:
        params: Gesture parameters
        x_min: Lower end of the grid
        x_max: Upper end of the grid
        n_points: Number of samples (>= 2)
        x0: Initial position; required for local and global scaling
    """
    if not x_min < x_max:
        raise ParameterError(f"Force range needs x_min < x_max (got {x_min} .. {x_max})")
    if n_points < 2:
        raise ParameterError(f"Force profile needs at least 2 points (got {n_points})")
    if x0 is None:
        if params.scaling is not ScalingMode.PROPORTIONAL:
            raise ParameterError(
                f"{params.scaling.value} scaling depends on |x0 - T|; an initial position is required"
            )
        x0 = params.target + 1.0

    coefficient = params.coefficient(x0)
    x = np.linspace(x_min, x_max, n_points)
    linear, nonlinear = force_components(x, params.target, params.k, coefficient.value, params.n)
    return ForceProfile(
        x=x,
        linear=linear,
        nonlinear=nonlinear,
        total=linear + nonlinear,
        coefficient=coefficient,
    )


def gesture_rhs(params: GestureParams, d_eff: float):
    """First-order right-hand side f(t, [x, v]) for the ODE solver."""
    k, b, m, n, target = params.k, params.damping, params.m, params.n, params.target

    def rhs(t, y):
        dx = y[0] - target
        return [y[1], (-b * y[1] - k * dx + d_eff * odd_power(dx, n)) / m]

    return rhs
