"""
gesturedyn fit - Estimate gesture parameters from an observed trajectory.

OBSERVED is a CSV file with a header row ``t,x`` or ``t,x,v`` on a uniform
time grid. The model section supplies the scaling law, n, D and the values
of parameters that stay fixed; the fit section chooses the free
parameters, their bounds and initial guesses. A fit that hits the
iteration cap is still written (``converged: false``) and exits 0.
"""

import logging
from pathlib import Path

import click

from gesturedyn.analysis.fitting import FitProblem, fit_gesture, free_parameters, scaling_label
from gesturedyn.cli.options import output_dir, prepare_run, run_options
from gesturedyn.common.errors import ConfigError, handle_common_errors
from gesturedyn.common.io import TrajectoryLoader, write_json
from gesturedyn.common.output import console, format_number, print_stats, print_summary, warning

logger = logging.getLogger(__name__)


def _bounds(config) -> dict:
    bounds = {}
    for name, value in (config.section("fit")["bounds"] or {}).items():
        if not isinstance(value, (list, tuple)) or len(value) != 2:
            raise ConfigError(config.source, f"fit.bounds.{name} must be a [lo, hi] pair (got {value!r})")
        bounds[name] = tuple(float(config.as_number(f"fit.bounds.{name}", v)) for v in value)
    return bounds


def _search_rows(problem) -> list:
    """One row per free parameter: starting value and bounds."""
    rows = []
    for parameter in problem.free:
        lo, hi = problem.bounds[parameter]
        rows.append((
            parameter.value,
            f"start {format_number(problem.initial[parameter])}, bounds [{format_number(lo)}, {format_number(hi)}]",
        ))
    return rows


@click.command()
@click.argument("observed", type=click.Path(exists=True, dir_okay=False))
@run_options
@handle_common_errors
def fit(observed, config_path, overrides, jobs, out, verbose):
    """Fit k and d (optionally T) to the trajectory in OBSERVED.

    \b
    Examples:
        gesturedyn fit observed.csv --set model.scaling=global --set model.D=10
        gesturedyn fit observed.csv --set "fit.free=[k, d, T]"
        gesturedyn fit observed.csv --set fit.initial.k=4000 --set fit.initial.d=0.5
    """
    config = prepare_run(config_path, overrides, verbose)
    template = config.params()
    sim = config.sim_config()
    fit_section = config.section("fit")
    free = config.validated(lambda: free_parameters(fit_section["free"] or []))
    initial = {
        name: float(config.as_number(f"fit.initial.{name}", value))
        for name, value in (fit_section["initial"] or {}).items()
    }
    bounds = _bounds(config)

    observed_traj = TrajectoryLoader(observed, target=template.target).load()
    problem = config.validated(lambda: FitProblem(
        observed=observed_traj,
        template=template,
        free=free,
        bounds=bounds,
        initial=initial,
        velocity_weight=config.number("fit", "velocity_weight"),
        max_iterations=config.integer("fit", "max_iterations"),
        rtol=sim.rtol,
        atol=sim.atol,
    ))
    target_dir = output_dir(config, out)

    print_stats(_search_rows(problem))
    with console.status(f"Fitting {', '.join(p.value for p in problem.free)} to {len(observed_traj)} samples..."):
        result = fit_gesture(problem)

    fit_file = write_json(target_dir / "fit.json", {
        **result.as_dict(),
        "observed": Path(observed).name,
        "n_samples": len(observed_traj),
    })

    if not result.converged:
        warning(f"Iteration cap reached before convergence ({result.message})")

    print_summary(
        "Fit complete" if result.converged else "Fit stopped at the iteration cap",
        [(name, format_number(value)) for name, value in result.estimates.items()]
        + [
            ("Scaling", scaling_label(result.params)),
            ("RMSE", format_number(result.objective, 4)),
            ("Iterations", str(result.iterations)),
        ],
        files=[(str(fit_file), "estimates and fit diagnostics")],
    )
