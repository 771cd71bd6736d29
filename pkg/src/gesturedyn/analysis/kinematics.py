"""Kinematic landmarks of simulated or observed gestures.

Extracts peak velocity, time-to-peak velocity, the movement window defined
by a fraction of peak speed, settling duration and the velocity-profile
symmetry ratio. All landmarks use speed |v|, so the direction of movement
does not matter.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from gesturedyn.common.constants import SETTLING_FRACTION, VELOCITY_THRESHOLD_FRACTION
from gesturedyn.common.errors import DegenerateMovementError, DivergenceError, ParameterError
from gesturedyn.dynamics.solver import Trajectory

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KinematicSummary:
    """Landmarks of one movement.

    Attributes:
        pv: Peak speed
        t_pv: Time-to-peak velocity, measured from t = 0
        t_onset: Time |v| first rises through the threshold
        t_offset: Time |v| last falls through the threshold
        settle: Settling duration, None if the movement never settles
        symmetry: (t_pv - t_onset) / (t_offset - t_onset)
    """

    pv: float
    t_pv: float
    t_onset: float
    t_offset: float
    settle: Optional[float]
    symmetry: float

    @property
    def settled(self) -> bool:
        return self.settle is not None

    def as_dict(self) -> dict:
        return {
            "pv": self.pv,
            "t_pv": self.t_pv,
            "t_onset": self.t_onset,
            "t_offset": self.t_offset,
            "settle": self.settle,
            "symmetry": self.symmetry,
        }


def _require_usable(traj: Trajectory, minimum: int):
    if traj.diverged:
        raise DivergenceError(traj.blowup_time, "landmarks are undefined for a diverged trajectory")
    if len(traj) < minimum:
        raise ParameterError(f"Trajectory needs at least {minimum} samples (got {len(traj)})")


def peak_velocity(traj: Trajectory) -> Tuple[float, float]:
    """Peak speed and its time, refined by a parabola through the bracketing samples.

    Returns:
        (t_pv, pv); (0.0, 0.0) when the trajectory never moves
    """
    _require_usable(traj, 3)
    speed = np.abs(traj.v)
    i = int(np.argmax(speed))
    if speed[i] == 0:
        return 0.0, 0.0

    t_pv, pv = float(traj.t[i]), float(speed[i])
    if 0 < i < speed.size - 1:
        s0, s1, s2 = speed[i - 1], speed[i], speed[i + 1]
        curvature = s0 - 2.0 * s1 + s2
        if curvature < 0:
            offset = 0.5 * (s0 - s2) / curvature
            t_pv = float(traj.t[i] + offset * (traj.t[i + 1] - traj.t[i]))
            pv = float(s1 - 0.25 * (s0 - s2) * offset)
    return t_pv, pv


def _crossing(t_a: float, t_b: float, s_a: float, s_b: float, level: float) -> float:
    if s_b == s_a:
        return t_a
    return t_a + (level - s_a) / (s_b - s_a) * (t_b - t_a)


def movement_window(traj: Trajectory, frac: float = VELOCITY_THRESHOLD_FRACTION) -> Tuple[float, float]:
    """Onset and offset times where |v| crosses frac * peak speed.

    Raises:
        DegenerateMovementError: If the velocity is zero everywhere
    """
    if not 0 < frac < 1:
        raise ParameterError(f"Threshold fraction must be in (0, 1) (got {frac})")
    _, pv = peak_velocity(traj)
    if pv == 0:
        raise DegenerateMovementError(
            "Movement window is undefined: velocity is zero everywhere",
            suggestion="The gesture starts at rest on its target (x0 = T, v0 = 0).",
        )

    t, speed = traj.t, np.abs(traj.v)
    level = frac * pv
    above = np.flatnonzero(speed >= level)
    first, last = int(above[0]), int(above[-1])

    if first == 0:
        t_onset = float(t[0])
    else:
        t_onset = _crossing(t[first - 1], t[first], speed[first - 1], speed[first], level)

    if last == speed.size - 1:
        t_offset = float(t[-1])
    else:
        t_offset = _crossing(t[last], t[last + 1], speed[last], speed[last + 1], level)

    return float(t_onset), float(t_offset)


def velocity_symmetry(t_pv: float, t_onset: float, t_offset: float) -> float:
    """Relative position of the velocity peak inside the movement window, in [0, 1]."""
    span = t_offset - t_onset
    if span <= 0:
        return 0.0
    return float(min(1.0, max(0.0, (t_pv - t_onset) / span)))


def settling_duration(traj: Trajectory, eps: float = SETTLING_FRACTION) -> Optional[float]:
    """First grid time after which |x - T| stays within eps * |x0 - T|.

    Returns:
        Settling time, or None if the trajectory is still outside the band at its end
    """
    if not 0 < eps < 1:
        raise ParameterError(f"Settling fraction must be in (0, 1) (got {eps})")
    if traj.diverged:
        return None

    error = np.abs(traj.x - traj.target)
    scale = error[0]
    if scale == 0:
        # Starts on target; a launch velocity still makes it move
        scale = float(error.max())
    if scale == 0:
        return 0.0

    outside = np.flatnonzero(error > eps * scale)
    if outside.size == 0:
        return float(traj.t[0])
    last = int(outside[-1])
    if last == error.size - 1:
        logger.debug("Trajectory did not settle within %.4gs", traj.t[-1])
        return None
    return float(traj.t[last + 1])


def summarize(
    traj: Trajectory,
    frac: float = VELOCITY_THRESHOLD_FRACTION,
    eps: float = SETTLING_FRACTION,
) -> KinematicSummary:
    """All landmarks of a trajectory with default thresholds.

    A trajectory that never moves summarizes to zeros rather than raising.
    """
    t_pv, pv = peak_velocity(traj)
    settle = settling_duration(traj, eps)
    if pv == 0:
        return KinematicSummary(pv=0.0, t_pv=0.0, t_onset=0.0, t_offset=0.0, settle=settle, symmetry=0.0)

    t_onset, t_offset = movement_window(traj, frac)
    # Keep the refined peak inside the sampled window
    t_pv = min(max(t_pv, t_onset), t_offset)
    return KinematicSummary(
        pv=pv,
        t_pv=t_pv,
        t_onset=t_onset,
        t_offset=t_offset,
        settle=settle,
        symmetry=velocity_symmetry(t_pv, t_onset, t_offset),
    )
