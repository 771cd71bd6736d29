"""
Numerical integration of the gesture ODE.

The second-order model is integrated as the first-order system
(x, v)' = (v, a(x, v)) with SciPy's explicit Runge-Kutta 5(4) pair
(Dormand-Prince, ``solve_ivp(method="RK45")``). Internal steps are adaptive;
samples are reported on a uniform output grid t_i = i*dt_out.

Two terminal events stop the run when |x| or |v| reaches the divergence
guard. A collapsing step size is reported separately as
:class:`SolverInstabilityError`.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from gesturedyn.common.constants import (
    DEFAULT_ATOL,
    DEFAULT_DT_OUT,
    DEFAULT_RTOL,
    DURATION_FACTOR,
    GUARD_FACTOR,
    SETTLING_FRACTION,
)
from gesturedyn.common.errors import ParameterError, SolverInstabilityError
from gesturedyn.dynamics.model import GestureParams, gesture_rhs
from gesturedyn.dynamics.scaling import EffectiveCoefficient, scale_proportional

logger = logging.getLogger(__name__)


class TrajectoryStatus(str, Enum):
    """Outcome of an integration."""

    CONVERGED = "converged"  # finished inside the settling band
    COMPLETED = "completed"  # finished, not yet settled
    DIVERGED = "diverged"  # guard tripped


@dataclass(frozen=True)
class SimConfig:
    """Initial conditions, time span and solver settings.

    Attributes:
        x0: Initial position
        v0: Initial velocity
        t_end: Duration in seconds (None: DURATION_FACTOR / sqrt(k))
        dt_out: Output grid step in seconds
        rtol: Relative tolerance of the adaptive stepper
        atol: Absolute tolerance of the adaptive stepper
        guard: Divergence bound on |x| and |v| (None: GUARD_FACTOR * max(|x0|, |T|, 1))
    """

    x0: float = 1.0
    v0: float = 0.0
    t_end: Optional[float] = None
    dt_out: float = DEFAULT_DT_OUT
    rtol: float = DEFAULT_RTOL
    atol: float = DEFAULT_ATOL
    guard: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.x0) and math.isfinite(self.v0)):
            raise ParameterError(f"Initial state must be finite (got x0={self.x0}, v0={self.v0})")
        if self.t_end is not None and not self.t_end > 0:
            raise ParameterError(f"t_end must be > 0 (got {self.t_end})")
        if not self.dt_out > 0:
            raise ParameterError(f"dt_out must be > 0 (got {self.dt_out})")
        if not (self.rtol > 0 and self.atol > 0):
            raise ParameterError(f"Tolerances must be > 0 (got rtol={self.rtol}, atol={self.atol})")
        if self.guard is not None and not self.guard > 0:
            raise ParameterError(f"Divergence guard must be > 0 (got {self.guard})")

    def resolve_t_end(self, k: float) -> float:
        if self.t_end is not None:
            return self.t_end
        return DURATION_FACTOR / math.sqrt(k)

    def resolve_guard(self, target: float) -> float:
        if self.guard is not None:
            return self.guard
        return GUARD_FACTOR * max(abs(self.x0), abs(target), 1.0)

    def time_grid(self, k: float) -> np.ndarray:
        """Uniform output grid i*dt_out, computed by index rather than accumulation."""
        n_steps = int(math.floor(self.resolve_t_end(k) / self.dt_out + 1e-9))
        if n_steps < 1:
            raise ParameterError(
                f"t_end shorter than one output step (t_end={self.resolve_t_end(k)}, dt_out={self.dt_out})"
            )
        return np.arange(n_steps + 1) * self.dt_out

    def replace(self, **changes) -> "SimConfig":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {
            "x0": self.x0,
            "v0": self.v0,
            "t_end": self.t_end,
            "dt_out": self.dt_out,
            "rtol": self.rtol,
            "atol": self.atol,
            "guard": self.guard,
        }


@dataclass
class Trajectory:
    """Position and velocity samples on a uniform time grid.

    Attributes:
        t: Sample times (s)
        x: Positions
        v: Velocities
        target: Target position the gesture moves toward
        status: Integration outcome
        params: Gesture parameters used (None for observed data)
        coefficient: Effective nonlinear coefficient used
        config: Simulation settings used
        blowup_time: Time the divergence guard tripped
        n_evaluations: Right-hand-side evaluations spent by the solver
    """

    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    target: float = 0.0
    status: TrajectoryStatus = TrajectoryStatus.COMPLETED
    params: Optional[GestureParams] = None
    coefficient: Optional[EffectiveCoefficient] = None
    config: Optional[SimConfig] = None
    blowup_time: Optional[float] = None
    n_evaluations: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.t)

    @property
    def dt(self) -> float:
        if self.config is not None:
            return self.config.dt_out
        return float(self.t[1] - self.t[0])

    @property
    def diverged(self) -> bool:
        return self.status is TrajectoryStatus.DIVERGED

    @property
    def distance(self) -> float:
        return abs(float(self.x[0]) - self.target)


def _settled(x: np.ndarray, target: float, x0: float) -> bool:
    scale = abs(x0 - target)
    return abs(x[-1] - target) <= SETTLING_FRACTION * scale


def integrate(
    params: GestureParams,
    cfg: SimConfig,
    coefficient: Optional[EffectiveCoefficient] = None,
) -> Trajectory:
    """Integrate one gesture and sample it on the uniform output grid.

    Args:
        params: Gesture parameters
        cfg: Initial conditions and solver settings
        coefficient: Precomputed effective coefficient (default: from params and cfg.x0)

    Returns:
        Trajectory; status DIVERGED with truncated samples if the guard tripped

    Raises:
        SolverInstabilityError: If the adaptive step size collapsed
    """
    if coefficient is None:
        coefficient = params.coefficient(cfg.x0)

    grid = cfg.time_grid(params.k)
    guard = cfg.resolve_guard(params.target)

    def position_guard(t, y):
        return guard - abs(y[0])

    def velocity_guard(t, y):
        return guard - abs(y[1])

    position_guard.terminal = True
    velocity_guard.terminal = True

    logger.debug(
        "Integrating k=%g d'=%g T=%g from x0=%g over %.4gs (%d samples)",
        params.k, coefficient.value, params.target, cfg.x0, grid[-1], grid.size,
    )

    solution = solve_ivp(
        gesture_rhs(params, coefficient.value),
        (0.0, float(grid[-1])),
        [cfg.x0, cfg.v0],
        method="RK45",
        t_eval=grid,
        events=(position_guard, velocity_guard),
        rtol=cfg.rtol,
        atol=cfg.atol,
    )

    if solution.status == -1:
        reached = float(solution.t[-1]) if solution.t.size else 0.0
        raise SolverInstabilityError(reached, solution.message)

    n_samples = solution.t.size
    x = solution.y[0] if n_samples else np.empty(0)
    v = solution.y[1] if n_samples else np.empty(0)

    if solution.status == 1:
        blowup_time = min(float(times[0]) for times in solution.t_events if times.size)
        logger.info("Guard %.3g exceeded at t=%.6gs", guard, blowup_time)
        status = TrajectoryStatus.DIVERGED
    else:
        blowup_time = None
        status = (
            TrajectoryStatus.CONVERGED
            if _settled(x, params.target, cfg.x0)
            else TrajectoryStatus.COMPLETED
        )

    return Trajectory(
        t=grid[:n_samples].copy(),
        x=np.asarray(x, dtype=float),
        v=np.asarray(v, dtype=float),
        target=params.target,
        status=status,
        params=params,
        coefficient=coefficient,
        config=cfg,
        blowup_time=blowup_time,
        n_evaluations=int(solution.nfev),
    )


def integrate_linear_analytic(
    k: float,
    x0: float,
    v0: float,
    target: float,
    grid: np.ndarray,
    m: float = 1.0,
) -> Trajectory:
    """Closed-form solution of the critically damped linear gesture.

    x(t) = T + (A + B*t)*exp(-w*t),  w = sqrt(k/m),  A = x0 - T,  B = v0 + w*A
    """
    if not k > 0:
        raise ParameterError(f"Stiffness k must be > 0 (got {k})")
    omega = math.sqrt(k / m)
    a = x0 - target
    b = v0 + omega * a
    t = np.asarray(grid, dtype=float)
    decay = np.exp(-omega * t)
    x = target + (a + b * t) * decay
    v = (b - omega * (a + b * t)) * decay

    params = GestureParams(k=k, target=target, m=m)
    status = TrajectoryStatus.CONVERGED if _settled(x, target, x0) else TrajectoryStatus.COMPLETED
    return Trajectory(
        t=t,
        x=x,
        v=v,
        target=target,
        status=status,
        params=params,
        coefficient=scale_proportional(0.0, k),
    )
