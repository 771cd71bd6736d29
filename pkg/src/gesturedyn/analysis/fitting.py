"""
Estimating gesture parameters from an observed trajectory.

The free parameters (any of k, d, T) are searched with SciPy's Nelder-Mead
simplex in an unbounded transformed space. Each transformed coordinate maps
through a logistic function onto its bounds (k on a log scale), so every
candidate the simplex proposes is strictly inside its bounds and d keeps its
natural [0, 1) parameterization.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize
from scipy.special import expit, logit

from gesturedyn.common.constants import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    DIVERGENCE_PENALTY_FACTOR,
    FIT_MAX_ITERATIONS,
    FIT_OBJECTIVE_SPREAD,
    FIT_SIMPLEX_STEP,
    FIT_TRANSFORM_LIMIT,
    RATIO_BOUNDS,
    STIFFNESS_BOUNDS,
)
from gesturedyn.common.errors import DivergenceError, ParameterError, SolverInstabilityError
from gesturedyn.dynamics.model import GestureParams
from gesturedyn.dynamics.scaling import ScalingMode
from gesturedyn.dynamics.solver import SimConfig, Trajectory, TrajectoryStatus, integrate

logger = logging.getLogger(__name__)


class FreeParameter(str, Enum):
    """Gesture parameters the fit can estimate."""

    K = "k"
    D = "d"
    T = "T"

    @property
    def field_name(self) -> str:
        """Matching GestureParams field."""
        return "target" if self is FreeParameter.T else self.value


@dataclass
class FitProblem:
    """An observed trajectory plus everything needed to fit the model to it.

    Attributes:
        observed: Observed trajectory on a uniform grid
        template: Gesture parameters; supplies fixed values, scaling law, n and D
        free: Parameters to estimate
        bounds: Search bounds per free parameter (defaults per parameter)
        initial: Initial guesses per free parameter (default: template values)
        x0: Initial position (default: first observed sample)
        v0: Initial velocity (default: first observed velocity)
        velocity_weight: Weight of the velocity mismatch in the objective
        max_iterations: Simplex iteration cap
        fatol: Objective spread across the simplex that counts as converged
        rtol: Solver relative tolerance for candidate simulations
        atol: Solver absolute tolerance for candidate simulations
    """

    observed: Trajectory
    template: GestureParams
    free: Sequence[FreeParameter] = (FreeParameter.K, FreeParameter.D)
    bounds: Dict[FreeParameter, Tuple[float, float]] = field(default_factory=dict)
    initial: Dict[FreeParameter, float] = field(default_factory=dict)
    x0: Optional[float] = None
    v0: Optional[float] = None
    velocity_weight: float = 0.0
    max_iterations: int = FIT_MAX_ITERATIONS
    fatol: float = FIT_OBJECTIVE_SPREAD
    rtol: float = DEFAULT_RTOL
    atol: float = DEFAULT_ATOL

    def __post_init__(self):
        self.free = tuple(dict.fromkeys(FreeParameter(p) for p in self.free))
        if not self.free:
            raise ParameterError("At least one of k, d, T must be free")

        t = np.asarray(self.observed.t, dtype=float)
        if t.size < 3:
            raise ParameterError(f"Observed trajectory needs at least 3 samples (got {t.size})")
        steps = np.diff(t)
        if not np.all(steps > 0) or np.ptp(steps) > 1e-6 * float(np.mean(steps)):
            raise ParameterError("Observed trajectory must be sampled on a uniform, increasing grid")

        if self.x0 is None:
            self.x0 = float(self.observed.x[0])
        if self.v0 is None:
            self.v0 = float(self.observed.v[0])
        if self.velocity_weight < 0:
            raise ParameterError(f"Velocity weight must be >= 0 (got {self.velocity_weight})")
        if self.max_iterations < 1:
            raise ParameterError(f"Iteration cap must be >= 1 (got {self.max_iterations})")

        self.bounds = {FreeParameter(p): tuple(map(float, b)) for p, b in self.bounds.items()}
        self.initial = {FreeParameter(p): float(v) for p, v in self.initial.items()}
        for parameter in self.free:
            lo, hi = self.bounds.setdefault(parameter, self.default_bounds(parameter))
            if not lo < hi:
                raise ParameterError(f"Bounds of {parameter.value} must be ordered (got {lo} .. {hi})")
            if parameter is FreeParameter.K and lo <= 0:
                raise ParameterError(f"Lower stiffness bound must be > 0 (got {lo})")
            guess = self.initial.get(parameter, getattr(self.template, parameter.field_name))
            if not lo <= guess <= hi:
                raise ParameterError(
                    f"Initial {parameter.value} = {guess} lies outside its bounds {lo} .. {hi}"
                )
            if guess in (lo, hi) and parameter not in self.initial:
                # A template value on a bound would pin the logistic coordinate at its limit
                guess = self.transform(parameter).to_value(0.0)
            self.initial[parameter] = guess

    def default_bounds(self, parameter: FreeParameter) -> Tuple[float, float]:
        if parameter is FreeParameter.K:
            return STIFFNESS_BOUNDS
        if parameter is FreeParameter.D:
            return RATIO_BOUNDS
        x = np.asarray(self.observed.x, dtype=float)
        span = float(np.ptp(x)) or 1.0
        return float(x.min()) - 0.5 * span, float(x.max()) + 0.5 * span

    def transform(self, parameter: FreeParameter) -> "BoundedTransform":
        lo, hi = self.bounds[parameter]
        return BoundedTransform(lo, hi, log_scale=parameter is FreeParameter.K)

    @property
    def dt(self) -> float:
        t = self.observed.t
        return float((t[-1] - t[0]) / (len(t) - 1))

    @property
    def duration(self) -> float:
        return float(self.observed.t[-1] - self.observed.t[0])

    @property
    def position_scale(self) -> float:
        """Movement amplitude used to scale the divergence penalty."""
        return float(np.ptp(self.observed.x)) or 1.0

    def sim_config(self) -> SimConfig:
        return SimConfig(
            x0=self.x0,
            v0=self.v0,
            t_end=self.duration,
            dt_out=self.dt,
            rtol=self.rtol,
            atol=self.atol,
        )

    def candidate(self, values: Dict[FreeParameter, float]) -> GestureParams:
        """Template with the free parameters replaced."""
        return self.template.replace(**{p.field_name: v for p, v in values.items()})


@dataclass(frozen=True)
class BoundedTransform:
    """Logistic map between an unbounded coordinate z and a value in (lo, hi)."""

    lo: float
    hi: float
    log_scale: bool = False

    def _ends(self) -> Tuple[float, float]:
        if self.log_scale:
            return math.log(self.lo), math.log(self.hi)
        return self.lo, self.hi

    def to_value(self, z: float) -> float:
        z = min(max(z, -FIT_TRANSFORM_LIMIT), FIT_TRANSFORM_LIMIT)
        a, b = self._ends()
        u = a + (b - a) * float(expit(z))
        return math.exp(u) if self.log_scale else u

    def to_coordinate(self, value: float) -> float:
        a, b = self._ends()
        u = math.log(value) if self.log_scale else value
        z = float(logit((u - a) / (b - a)))
        return min(max(z, -FIT_TRANSFORM_LIMIT), FIT_TRANSFORM_LIMIT)


@dataclass
class FitResult:
    """Outcome of a parameter fit.

    Attributes:
        params: Best-fitting gesture parameters (fixed values included)
        free: Parameters that were estimated
        objective: RMSE of the best vertex, in position units
        iterations: Simplex iterations used
        evaluations: Objective evaluations used
        converged: False when the iteration cap was reached first
        message: Optimizer termination message
    """

    params: GestureParams
    free: Tuple[FreeParameter, ...]
    objective: float
    iterations: int
    evaluations: int
    converged: bool
    message: str = ""

    @property
    def estimates(self) -> Dict[str, float]:
        return {p.value: getattr(self.params, p.field_name) for p in self.free}

    def as_dict(self) -> dict:
        return {
            "estimates": self.estimates,
            "params": self.params.as_dict(),
            "free": [p.value for p in self.free],
            "objective": self.objective,
            "iterations": self.iterations,
            "evaluations": self.evaluations,
            "converged": self.converged,
            "message": self.message,
        }


def divergence_penalty(problem: FitProblem, blowup_time: Optional[float]) -> float:
    """Large objective for a diverged candidate; later blow-up scores lower."""
    fraction = 0.0 if blowup_time is None else min(max(blowup_time / problem.duration, 0.0), 1.0)
    return DIVERGENCE_PENALTY_FACTOR * problem.position_scale * (2.0 - fraction)


def objective(candidate: GestureParams, problem: FitProblem) -> float:
    """RMSE between the candidate's simulation and the observed trajectory.

    The velocity mismatch enters with ``problem.velocity_weight``. Diverged
    candidates return :func:`divergence_penalty` instead of raising.
    """
    try:
        traj = integrate(candidate, problem.sim_config())
    except SolverInstabilityError as e:
        return divergence_penalty(problem, e.time)

    n = len(problem.observed)
    if traj.status is TrajectoryStatus.DIVERGED or len(traj) < n:
        return divergence_penalty(problem, traj.blowup_time)

    squared = float(np.mean((traj.x[:n] - problem.observed.x) ** 2))
    if problem.velocity_weight > 0:
        squared += problem.velocity_weight * float(np.mean((traj.v[:n] - problem.observed.v) ** 2))
    return math.sqrt(squared)


def initial_simplex(z0: np.ndarray) -> np.ndarray:
    """Initial guess plus one vertex per coordinate, each perturbed by 10%."""
    simplex = np.tile(z0, (z0.size + 1, 1))
    for i, z in enumerate(z0):
        simplex[i + 1, i] = z + FIT_SIMPLEX_STEP * max(abs(z), 1.0)
    return simplex


def fit_gesture(
    problem: FitProblem,
    on_candidate: Optional[Callable[[GestureParams], None]] = None,
) -> FitResult:
    """Fit the free parameters of ``problem`` with the Nelder-Mead simplex.

    Args:
        problem: Observed data, template parameters and search settings
        on_candidate: Optional callback receiving every evaluated candidate

    Returns:
        FitResult; ``converged`` is False when the iteration cap was hit
    """
    transforms = [problem.transform(p) for p in problem.free]
    z0 = np.array([tr.to_coordinate(problem.initial[p]) for p, tr in zip(problem.free, transforms)])

    def decode(z: np.ndarray) -> GestureParams:
        values = {p: tr.to_value(float(zi)) for p, tr, zi in zip(problem.free, transforms, z)}
        return problem.candidate(values)

    def transformed_objective(z: np.ndarray) -> float:
        candidate = decode(z)
        if on_candidate:
            on_candidate(candidate)
        return objective(candidate, problem)

    logger.info(
        "Fitting %s from %s",
        ", ".join(p.value for p in problem.free),
        ", ".join(f"{p.value}={problem.initial[p]:.6g}" for p in problem.free),
    )
    result = minimize(
        transformed_objective,
        z0,
        method="Nelder-Mead",
        options={
            "initial_simplex": initial_simplex(z0),
            "maxiter": problem.max_iterations,
            "fatol": problem.fatol,
            "xatol": np.inf,
        },
    )
    if not result.success:
        logger.warning("Fit stopped without converging: %s", result.message)

    best = decode(result.x)
    logger.info("Fit objective %.3g after %d iterations", result.fun, result.nit)
    return FitResult(
        params=best,
        free=problem.free,
        objective=float(result.fun),
        iterations=int(result.nit),
        evaluations=int(result.nfev),
        converged=bool(result.success),
        message=str(result.message),
    )


def fit_many(problems: List[FitProblem], jobs: int = 1) -> List[FitResult]:
    """Fit independent problems, in a process pool when jobs > 1; order is preserved."""
    if jobs <= 1 or len(problems) <= 1:
        return [fit_gesture(problem) for problem in problems]
    with ProcessPoolExecutor(max_workers=min(jobs, len(problems))) as pool:
        return list(pool.map(fit_gesture, problems))


def synthesize_observation(
    params: GestureParams,
    cfg: SimConfig,
    noise: float = 0.0,
    rng: Optional[np.random.Generator] = None,
) -> Trajectory:
    """Simulated trajectory to fit against, with optional Gaussian position noise.

    Args:
        params: Generating parameters
        cfg: Initial conditions and grid
        noise: Noise standard deviation as a fraction of the movement amplitude
        rng: Random generator (required when noise > 0)

    Raises:
        DivergenceError: If the generating parameters diverge
    """
    traj = integrate(params, cfg)
    if traj.diverged:
        raise DivergenceError(traj.blowup_time, "cannot synthesize an observation from a diverged run")
    if noise < 0:
        raise ParameterError(f"Noise fraction must be >= 0 (got {noise})")

    x = traj.x.copy()
    if noise > 0:
        if rng is None:
            raise ParameterError("A random generator is needed to add noise")
        amplitude = abs(cfg.x0 - params.target) or float(np.ptp(x)) or 1.0
        x = x + noise * amplitude * rng.standard_normal(x.size)

    return Trajectory(
        t=traj.t.copy(),
        x=x,
        v=traj.v.copy(),
        target=params.target,
        status=traj.status,
        params=params,
        coefficient=traj.coefficient,
        config=cfg,
    )


def free_parameters(names: Union[str, Sequence[str]]) -> Tuple[FreeParameter, ...]:
    """Parse free-parameter names from config values; a single name is allowed."""
    if isinstance(names, str):
        names = [names]
    if not isinstance(names, (list, tuple)) or not all(isinstance(name, str) for name in names):
        raise ParameterError(f"Free parameters must be a list of names (got {names!r})")
    try:
        return tuple(FreeParameter(name) for name in names)
    except ValueError:
        choices = ", ".join(p.value for p in FreeParameter)
        raise ParameterError(f"Unknown free parameter in {list(names)} (choose from {choices})")


def scaling_label(params: GestureParams) -> str:
    if params.scaling is ScalingMode.GLOBAL:
        return f"{params.scaling.value} (D = {params.movement_range:g})"
    return params.scaling.value
