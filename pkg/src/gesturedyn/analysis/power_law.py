"""
Power-law fits y = alpha * x^exponent by least squares in log-log space.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

from gesturedyn.common.errors import PowerLawError

logger = logging.getLogger(__name__)

# Quantities fitted against the swept value
POWER_LAW_QUANTITIES = ("t_pv", "pv")


@dataclass(frozen=True)
class PowerLawFit:
    """Result of a log-log regression.

    Attributes:
        alpha: Coefficient, exp(intercept)
        exponent: Power, the log-log slope
        r2: Coefficient of determination of the log-log regression
        n_points: Points used
        n_dropped: Points excluded before fitting (diverged or non-positive)
    """

    alpha: float
    exponent: float
    r2: float
    n_points: int
    n_dropped: int = 0

    def predict(self, x):
        return self.alpha * np.power(x, self.exponent)

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "exponent": self.exponent,
            "r2": self.r2,
            "n_points": self.n_points,
            "n_dropped": self.n_dropped,
        }


def fit_power_law(xs: Sequence[float], ys: Sequence[float], n_dropped: int = 0) -> PowerLawFit:
    """Fit y = alpha * x^exponent by ordinary least squares on (ln x, ln y).

    Raises:
        PowerLawError: If fewer than 3 points, any value is non-positive,
            or all x values coincide
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise PowerLawError(f"xs and ys must be 1-D of equal length (got {x.shape} and {y.shape})")
    if x.size < 3:
        raise PowerLawError(f"A power-law fit needs at least 3 points (got {x.size})")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise PowerLawError("Power-law inputs must be finite")
    if np.any(x <= 0) or np.any(y <= 0):
        raise PowerLawError(
            "Power-law inputs must be strictly positive",
            suggestion="Drop zero-motion or diverged points before fitting.",
        )
    if np.all(x == x[0]):
        raise PowerLawError("All x values are identical; the slope is undefined")

    result = linregress(np.log(x), np.log(y))
    fit = PowerLawFit(
        alpha=float(math.exp(result.intercept)),
        exponent=float(result.slope),
        r2=float(min(1.0, result.rvalue ** 2)),
        n_points=int(x.size),
        n_dropped=n_dropped,
    )
    logger.debug("Power law alpha=%.6g exponent=%.6g r2=%.6g", fit.alpha, fit.exponent, fit.r2)
    return fit


def fit_sweep_power_laws(records: Iterable) -> Dict[str, PowerLawFit]:
    """Fit t_pv and pv against the swept value of a sweep.

    Flagged (diverged) records and records with zero motion are dropped and
    counted in ``n_dropped``.
    """
    records = list(records)
    fits = {}
    for quantity in POWER_LAW_QUANTITIES:
        xs, ys = [], []
        for record in records:
            if record.flagged:
                continue
            y = getattr(record.summary, quantity)
            if record.value > 0 and y > 0:
                xs.append(record.value)
                ys.append(y)
        dropped = len(records) - len(xs)
        if dropped:
            logger.info("Dropped %d of %d points before fitting %s", dropped, len(records), quantity)
        fits[quantity] = fit_power_law(xs, ys, n_dropped=dropped)
    return fits


def fit_through_origin(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float]:
    """Least-squares slope of y = c*x and its uncentered r^2.

    Returns:
        (slope, r2)
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 2 or x.shape != y.shape:
        raise PowerLawError(f"A fit through the origin needs at least 2 paired points (got {x.size})")
    sxx = float(np.dot(x, x))
    syy = float(np.dot(y, y))
    if sxx == 0 or syy == 0:
        raise PowerLawError("A fit through the origin needs non-zero x and y values")
    slope = float(np.dot(x, y)) / sxx
    residual = y - slope * x
    return slope, 1.0 - float(np.dot(residual, residual)) / syy
