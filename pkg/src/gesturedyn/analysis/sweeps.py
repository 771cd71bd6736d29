"""
Parameter sweeps over stiffness, target, ratio or initial position.

Each sweep point is an independent integration followed by a kinematic
summary. Points can run in a process pool; records always come back
ordered by the swept value.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from gesturedyn.analysis.kinematics import KinematicSummary, summarize
from gesturedyn.common.errors import ParameterError, SolverInstabilityError
from gesturedyn.dynamics.model import GestureParams
from gesturedyn.dynamics.scaling import EffectiveCoefficient
from gesturedyn.dynamics.solver import SimConfig, Trajectory, TrajectoryStatus, integrate

logger = logging.getLogger(__name__)


class SweepParameter(str, Enum):
    """Quantity varied across a sweep."""

    K = "k"
    TARGET = "T"
    RATIO = "d"
    X0 = "x0"


@dataclass(frozen=True)
class SweepRecord:
    """Result of one sweep point.

    Attributes:
        parameter: Swept quantity
        value: Value of the swept quantity at this point
        summary: Kinematic landmarks (None when the run diverged)
        coefficient: Effective nonlinear coefficient used
        status: Integration outcome
        blowup_time: Time the divergence guard tripped, if it did
    """

    parameter: SweepParameter
    value: float
    summary: Optional[KinematicSummary]
    coefficient: EffectiveCoefficient
    status: TrajectoryStatus
    blowup_time: Optional[float] = None

    @property
    def flagged(self) -> bool:
        """Diverged points are kept for reporting but excluded from fits."""
        return self.summary is None

    def as_row(self) -> dict:
        summary = self.summary
        return {
            "value": self.value,
            "t_pv": summary.t_pv if summary else None,
            "pv": summary.pv if summary else None,
            "settle": summary.settle if summary else None,
            "symmetry": summary.symmetry if summary else None,
            "lambda": self.coefficient.lam,
            "d_eff": self.coefficient.value,
            "status": self.status.value,
        }


SWEEP_COLUMNS = ["value", "t_pv", "pv", "settle", "symmetry", "lambda", "d_eff", "status"]


def point_inputs(
    parameter: SweepParameter,
    value: float,
    params: GestureParams,
    cfg: SimConfig,
) -> tuple:
    """Gesture parameters and simulation settings for one sweep point."""
    if parameter is SweepParameter.K:
        return params.replace(k=value), cfg
    if parameter is SweepParameter.TARGET:
        return params.replace(target=value), cfg
    if parameter is SweepParameter.RATIO:
        return params.replace(d=value), cfg
    return params, cfg.replace(x0=value)


def simulate_point(
    parameter: SweepParameter,
    value: float,
    params: GestureParams,
    cfg: SimConfig,
) -> Tuple[SweepRecord, Optional[Trajectory]]:
    """Integrate and summarize one sweep point; divergence flags the record.

    Returns:
        (record, trajectory); the trajectory is None when the step size collapsed
    """
    point_params, point_cfg = point_inputs(parameter, value, params, cfg)
    coefficient = point_params.coefficient(point_cfg.x0)
    try:
        traj = integrate(point_params, point_cfg, coefficient)
    except SolverInstabilityError as e:
        logger.warning("%s=%g: %s", parameter.value, value, e.message)
        record = SweepRecord(parameter, value, None, coefficient, TrajectoryStatus.DIVERGED, e.time)
        return record, None

    if traj.diverged:
        logger.warning("%s=%g diverged at t=%.4gs", parameter.value, value, traj.blowup_time)
        return SweepRecord(parameter, value, None, coefficient, traj.status, traj.blowup_time), traj
    return SweepRecord(parameter, value, summarize(traj), coefficient, traj.status), traj


def evaluate_point(
    parameter: SweepParameter,
    value: float,
    params: GestureParams,
    cfg: SimConfig,
) -> SweepRecord:
    record, _ = simulate_point(parameter, value, params, cfg)
    return record


def _run_points(
    worker: Callable,
    parameter: SweepParameter,
    values: Iterable[float],
    params: GestureParams,
    cfg: SimConfig,
    jobs: int,
    on_result: Optional[Callable] = None,
) -> list:
    parameter = SweepParameter(parameter)
    values = [float(value) for value in values]
    if not values:
        raise ParameterError(f"Sweep over {parameter.value} needs at least one value")

    # Validate every point up front so bad values fail before any work starts
    for value in values:
        point_inputs(parameter, value, params, cfg)

    logger.info("Sweeping %s over %d values (jobs=%d)", parameter.value, len(values), jobs)
    n = len(values)
    results = []
    if jobs <= 1 or n == 1:
        outcomes = (worker(parameter, value, params, cfg) for value in values)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=min(jobs, n))
        outcomes = pool.map(worker, [parameter] * n, values, [params] * n, [cfg] * n)
    try:
        for outcome in outcomes:
            results.append(outcome)
            if on_result:
                on_result(outcome)
    finally:
        if pool is not None:
            pool.shutdown()
    return results


def run_sweep(
    parameter: SweepParameter,
    values: Iterable[float],
    params: GestureParams,
    cfg: SimConfig,
    jobs: int = 1,
    on_record: Optional[Callable[[SweepRecord], None]] = None,
) -> List[SweepRecord]:
    """Evaluate every sweep point and return the records ordered by value.

    Args:
        parameter: Quantity to vary
        values: Values of that quantity
        params: Template gesture parameters
        cfg: Template simulation settings
        jobs: Worker processes; 1 runs inline
        on_record: Optional callback after each finished point (progress bars)
    """
    records = _run_points(evaluate_point, parameter, values, params, cfg, jobs, on_record)
    return sorted(records, key=lambda record: record.value)


def run_family(
    parameter: SweepParameter,
    values: Iterable[float],
    params: GestureParams,
    cfg: SimConfig,
    jobs: int = 1,
    on_record: Optional[Callable[[SweepRecord], None]] = None,
) -> List[Tuple[SweepRecord, Optional[Trajectory]]]:
    """Like :func:`run_sweep`, but keeps every trajectory next to its record."""
    callback = (lambda outcome: on_record(outcome[0])) if on_record else None
    outcomes = _run_points(simulate_point, parameter, values, params, cfg, jobs, callback)
    return sorted(outcomes, key=lambda outcome: outcome[0].value)


def sweep_stiffness(
    ks: Sequence[float],
    params: GestureParams,
    cfg: SimConfig,
    jobs: int = 1,
    on_record: Optional[Callable[[SweepRecord], None]] = None,
) -> List[SweepRecord]:
    """Sweep k; damping follows as 2*sqrt(m*k) at every point."""
    return run_sweep(SweepParameter.K, ks, params, cfg, jobs, on_record)


def sweep_targets(
    targets: Sequence[float],
    params: GestureParams,
    cfg: SimConfig,
    jobs: int = 1,
    on_record: Optional[Callable[[SweepRecord], None]] = None,
) -> List[SweepRecord]:
    """Sweep T; the effective coefficient is rescaled for every target."""
    return run_sweep(SweepParameter.TARGET, targets, params, cfg, jobs, on_record)


def sweep_ratios(
    ratios: Sequence[float],
    params: GestureParams,
    cfg: SimConfig,
    jobs: int = 1,
    on_record: Optional[Callable[[SweepRecord], None]] = None,
) -> List[SweepRecord]:
    return run_sweep(SweepParameter.RATIO, ratios, params, cfg, jobs, on_record)


def sweep_initial_positions(
    positions: Sequence[float],
    params: GestureParams,
    cfg: SimConfig,
    jobs: int = 1,
    on_record: Optional[Callable[[SweepRecord], None]] = None,
) -> List[SweepRecord]:
    return run_sweep(SweepParameter.X0, positions, params, cfg, jobs, on_record)


def log_spaced(lo: float, hi: float, num: int) -> np.ndarray:
    """num log-spaced values in [lo, hi] (power-law grids)."""
    if not 0 < lo < hi or num < 1:
        raise ParameterError(f"Log grid needs 0 < lo < hi and num >= 1 (got {lo}, {hi}, {num})")
    return np.geomspace(lo, hi, num)


def linear_spaced(lo: float, hi: float, num: int) -> np.ndarray:
    """num evenly spaced values in [lo, hi] (target grids)."""
    if num < 1:
        raise ParameterError(f"Linear grid needs num >= 1 (got {num})")
    return np.linspace(lo, hi, num)
