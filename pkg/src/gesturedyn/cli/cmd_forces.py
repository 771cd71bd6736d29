"""
gesturedyn forces - Sample the restoring forces of the configured gesture.
"""

import click

from gesturedyn.analysis.figures import FORCE_COLUMNS
from gesturedyn.cli.options import output_dir, prepare_run, run_options
from gesturedyn.common.errors import handle_common_errors
from gesturedyn.common.io import write_csv
from gesturedyn.common.output import print_summary
from gesturedyn.dynamics.model import force_profile, force_roots
from gesturedyn.dynamics.scaling import describe


@click.command()
@run_options
@handle_common_errors
def forces(config_path, overrides, jobs, out, verbose):
    """Write forces.csv with the linear, cubic and summed restoring force.

    The range comes from forces.x_min, forces.x_max and forces.n_points.
    Local and global scaling use forces.x0 (default: sim.x0) as the
    starting position of the gesture.

    \b
    Examples:
        gesturedyn forces --set model.k=1
        gesturedyn forces --set model.k=1 --set forces.x_min=-10 --set forces.x_max=10
    """
    config = prepare_run(config_path, overrides, verbose)
    params = config.params()
    sim = config.sim_config()
    x0 = config.number("forces", "x0", optional=True)
    x0 = sim.x0 if x0 is None else x0
    target_dir = output_dir(config, out)

    profile = config.validated(lambda: force_profile(
        params,
        config.number("forces", "x_min"),
        config.number("forces", "x_max"),
        config.integer("forces", "n_points"),
        x0=x0,
    ))

    forces_file = write_csv(
        target_dir / "forces.csv",
        FORCE_COLUMNS,
        zip(profile.x, profile.linear, profile.nonlinear, profile.total),
    )

    zeros = force_roots(params.k, profile.coefficient.value, params.target, params.n)
    roots = ", ".join(f"{root:.6g}" for root in zeros)
    print_summary(
        "Force profile written",
        [
            ("Effective coefficient", describe(profile.coefficient, params.k)),
            ("Zeros of the summed force", roots),
        ],
        files=[(str(forces_file), f"{profile.x.size} samples")],
    )
