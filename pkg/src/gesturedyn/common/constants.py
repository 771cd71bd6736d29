"""gesturedyn configuration constants.

Centralized numeric defaults for the solver, kinematics and fitting.
Environment variables can override the ones users commonly tune.
"""

import os

# Reference stiffness: k = 2 / dt with dt = 0.001
DEFAULT_STIFFNESS = 2000.0
DEFAULT_MASS = 1.0
DEFAULT_EXPONENT = 3

# Solver configuration
DEFAULT_DT_OUT = float(os.environ.get("GESTUREDYN_DT_OUT", "0.001"))
DEFAULT_RTOL = float(os.environ.get("GESTUREDYN_RTOL", "1e-8"))
DEFAULT_ATOL = float(os.environ.get("GESTUREDYN_ATOL", "1e-10"))

# Default duration is DURATION_FACTOR / sqrt(k) seconds
DURATION_FACTOR = 20.0

# Divergence guard: GUARD_FACTOR * max(|x0|, |T|, 1)
GUARD_FACTOR = 1e3

# |x0 - T| below this is treated as "starts at target"
DISTANCE_EPSILON = 1e-12

# Kinematic landmarks
VELOCITY_THRESHOLD_FRACTION = 0.1
SETTLING_FRACTION = 0.01

# Sweep grids
STIFFNESS_GRID = (500.0, 8000.0, 20)
RATIO_FAMILY = (0.0, 0.25, 0.5, 0.75, 0.95)

# Parameter fitting
STIFFNESS_BOUNDS = (10.0, 1e5)
RATIO_BOUNDS = (0.0, 1.0 - 1e-6)
FIT_MAX_ITERATIONS = int(os.environ.get("GESTUREDYN_FIT_MAX_ITER", "2000"))
FIT_OBJECTIVE_SPREAD = 1e-10
FIT_SIMPLEX_STEP = 0.1
FIT_TRANSFORM_LIMIT = 30.0
DIVERGENCE_PENALTY_FACTOR = 1e6

# Worker pool size for sweeps and figure reproduction
DEFAULT_JOBS = int(os.environ.get("GESTUREDYN_JOBS", str(os.cpu_count() or 1)))

# 17 significant digits round-trips every float64
FLOAT_FORMAT = ".17g"
