"""
gesturedyn simulate - Integrate one gesture and write its trajectory.

Writes trajectory.csv (or trajectory.json) with one row per output grid
point and summary.json with the kinematic landmarks, the effective
coefficient actually used and the run status.
"""

import logging

import click

from gesturedyn.analysis.kinematics import summarize
from gesturedyn.cli.options import output_dir, prepare_run, run_options
from gesturedyn.common.errors import DivergenceError, handle_common_errors
from gesturedyn.common.io import write_json, write_trajectory_csv, write_trajectory_json
from gesturedyn.common.output import format_number, print_summary
from gesturedyn.dynamics.scaling import describe
from gesturedyn.dynamics.solver import integrate

logger = logging.getLogger(__name__)


@click.command()
@run_options
@handle_common_errors
def simulate(config_path, overrides, jobs, out, verbose):
    """Integrate one gesture.

    \b
    Examples:
        gesturedyn simulate
        gesturedyn simulate --set model.d=0 --out runs/linear
        gesturedyn simulate --set model.scaling=local --set sim.x0=10
        gesturedyn simulate -c gesture.yaml --set output.format=json
    """
    config = prepare_run(config_path, overrides, verbose)
    params = config.params()
    sim = config.sim_config()
    fmt = config.output_format
    target_dir = output_dir(config, out)

    coefficient = params.coefficient(sim.x0)
    traj = integrate(params, sim, coefficient)
    summary = None if traj.diverged else summarize(traj)

    trajectory_file = target_dir / f"trajectory.{fmt}"
    if fmt == "json":
        write_trajectory_json(trajectory_file, traj)
    else:
        write_trajectory_csv(trajectory_file, traj)

    summary_file = write_json(target_dir / "summary.json", {
        "params": params.as_dict(),
        "sim": sim.as_dict(),
        "t_end": sim.resolve_t_end(params.k),
        "coefficient": coefficient.as_dict(),
        "status": traj.status.value,
        "blowup_time": traj.blowup_time,
        "n_samples": len(traj),
        "summary": summary.as_dict() if summary else None,
    })

    if traj.diverged:
        # Partial data is already on disk
        raise DivergenceError(traj.blowup_time, f"partial trajectory written to {trajectory_file}")

    print_summary(
        "Simulation complete",
        [
            ("Effective coefficient", describe(coefficient, params.k)),
            ("Time-to-peak velocity", f"{format_number(summary.t_pv)} s"),
            ("Peak velocity", format_number(summary.pv)),
            ("Symmetry", format_number(summary.symmetry, 4)),
            ("Settling", f"{format_number(summary.settle)} s"),
            ("Status", traj.status.value),
        ],
        files=[
            (str(trajectory_file), f"{len(traj)} samples"),
            (str(summary_file), "kinematic summary"),
        ],
    )
