"""
Scaling laws for the nonlinear restoring coefficient.

The user-facing ratio d is never applied to the ODE directly. It is
converted into an effective coefficient d' by one of three laws:

- proportional: d' = d*k
- local:        d' = d*k / |x0 - T|^(n-1)
- global:       d' = lambda*d*k / |x0 - T|^(n-1),  lambda = min(1, |x0 - T| / D)

Under local and global scaling with n = 3 and 0 <= d < 1 the unstable
zeros of the summed force sit outside the initial displacement, so every
gesture starts inside the basin of attraction of its target.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Optional

import numpy as np

from gesturedyn.common.constants import DISTANCE_EPSILON
from gesturedyn.common.errors import ParameterError

if TYPE_CHECKING:
    from gesturedyn.dynamics.model import GestureParams

logger = logging.getLogger(__name__)


class ScalingMode(str, Enum):
    """Law used to turn the ratio d into an effective coefficient."""

    PROPORTIONAL = "proportional"
    LOCAL = "local"
    GLOBAL = "global"


@dataclass(frozen=True)
class EffectiveCoefficient:
    """Nonlinear force coefficient after scaling.

    Attributes:
        value: Effective coefficient d' (units of k / position^(n-1))
        mode: Scaling law that produced it
        lam: Range factor lambda in [0, 1]; 1 outside global scaling
        distance: Movement distance |x0 - T| used by the law
    """

    value: float
    mode: ScalingMode
    lam: float = 1.0
    distance: float = float("nan")

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0:
            raise ParameterError(f"Effective coefficient must be finite and >= 0 (got {self.value})")

    def basin_half_width(self, k: float) -> float:
        """Distance from T to the unstable zeros of the cubic force, sqrt(k/d')."""
        if self.value == 0:
            return math.inf
        return math.sqrt(k / self.value)

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "mode": self.mode.value,
            "lambda": self.lam,
            "distance": self.distance,
        }


def _check_stiffness(k: float):
    if not (math.isfinite(k) and k > 0):
        raise ParameterError(f"Stiffness k must be finite and > 0 (got {k})")


def _check_bounded_ratio(d: float):
    if not 0 <= d < 1:
        raise ParameterError(
            f"Ratio d must satisfy 0 <= d < 1 for local and global scaling (got {d})",
            suggestion="Values close to 1 (e.g. 0.95) give quasi-symmetric velocity profiles.",
        )


def _check_exponent(n: int):
    if n < 1:
        raise ParameterError(f"Polynomial exponent n must be >= 1 (got {n})")


def scale_proportional(d: float, k: float) -> EffectiveCoefficient:
    """Proportional scaling d' = d*k.

    No upper bound on d: unstable configurations stay reproducible and the
    solver guard reports them.
    """
    _check_stiffness(k)
    if not (math.isfinite(d) and d >= 0):
        raise ParameterError(f"Ratio d must be finite and >= 0 (got {d})")
    return EffectiveCoefficient(value=d * k, mode=ScalingMode.PROPORTIONAL)


def scale_local(d: float, k: float, x0: float, target: float, n: int = 3) -> EffectiveCoefficient:
    """Local (inverse power) scaling d' = d*k / |x0 - T|^(n-1).

    A gesture that starts on its target gets d' = 0 when n > 1.
    """
    _check_stiffness(k)
    _check_bounded_ratio(d)
    _check_exponent(n)

    distance = abs(x0 - target)
    if n == 1:
        value = d * k
    elif distance < DISTANCE_EPSILON:
        logger.debug("Degenerate distance %.3g, effective coefficient set to 0", distance)
        value = 0.0
    else:
        value = d * k / distance ** (n - 1)
    return EffectiveCoefficient(value=value, mode=ScalingMode.LOCAL, distance=distance)


def movement_range(x_min: float, x_max: float) -> float:
    """Total possible range D = |x_max - x_min| of an articulator."""
    if x_max == x_min:
        raise ParameterError(f"Movement range has zero width ({x_min} .. {x_max})")
    return abs(x_max - x_min)


def lambda_factor(x0: float, target: float, movement_range: float) -> float:
    """Range factor lambda = min(1, |x0 - T| / D)."""
    if not movement_range > 0:
        raise ParameterError(f"Movement range D must be > 0 (got {movement_range})")
    return min(1.0, abs(x0 - target) / movement_range)


def scale_global(
    d: float,
    k: float,
    x0: float,
    target: float,
    n: int,
    movement_range: float,
) -> EffectiveCoefficient:
    """Global scaling d' = lambda*d*k / |x0 - T|^(n-1).

    D may be smaller than |x0 - T|; lambda then clamps at 1 and the result
    equals local scaling.
    """
    lam = lambda_factor(x0, target, movement_range)
    local = scale_local(d, k, x0, target, n)
    return EffectiveCoefficient(
        value=lam * local.value,
        mode=ScalingMode.GLOBAL,
        lam=lam,
        distance=local.distance,
    )


def effective_coefficient(params: "GestureParams", x0: float) -> EffectiveCoefficient:
    """Effective coefficient for a gesture starting at x0."""
    if params.scaling is ScalingMode.PROPORTIONAL:
        coefficient = scale_proportional(params.d, params.k)
        return EffectiveCoefficient(
            value=coefficient.value,
            mode=coefficient.mode,
            distance=abs(x0 - params.target),
        )
    if params.scaling is ScalingMode.LOCAL:
        return scale_local(params.d, params.k, x0, params.target, params.n)
    return scale_global(params.d, params.k, x0, params.target, params.n, params.movement_range)


def inverse_square_curve(
    d: float,
    k: float,
    distances: Iterable[float],
    n: int = 3,
) -> np.ndarray:
    """Effective coefficient required at each distance to keep the velocity shape.

    Example:
        >>> inverse_square_curve(0.95, 1.0, [0.5, 1.0])
        array([3.8 , 0.95])
    """
    return np.array([scale_local(d, k, dist, 0.0, n).value for dist in distances])


def describe(coefficient: EffectiveCoefficient, k: Optional[float] = None) -> str:
    """One-line human description used by the CLI."""
    text = f"d' = {coefficient.value:.6g} ({coefficient.mode.value}, lambda = {coefficient.lam:.4g})"
    if k is not None and coefficient.value > 0:
        text += f", basin +/-{coefficient.basin_half_width(k):.4g}"
    return text
