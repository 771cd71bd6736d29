"""
gesturedyn CLI - unified entry point.

All commands are accessible via: gesturedyn <command>

Commands:
    simulate   - Integrate one gesture and write its trajectory
    sweep      - Vary k, T, d or x0 and tabulate the kinematics
    forces     - Sample the linear, cubic and summed restoring forces
    powerlaw   - Fit t_pv and pv power laws in k for several ratios
    fit        - Estimate k, d (and optionally T) from an observed trajectory
    reproduce  - Write every dataset behind one of the four reference figures
"""

import click

from gesturedyn import __version__


@click.group()
@click.version_option(version=__version__, prog_name="gesturedyn")
def cli():
    """gesturedyn - task-dynamic gestures with scaled nonlinear restoring forces."""
    pass


# Import and register subcommands
from .cmd_simulate import simulate
from .cmd_sweep import sweep
from .cmd_forces import forces
from .cmd_powerlaw import powerlaw
from .cmd_fit import fit
from .cmd_reproduce import reproduce

cli.add_command(simulate)
cli.add_command(sweep)
cli.add_command(forces)
cli.add_command(powerlaw)
cli.add_command(fit)
cli.add_command(reproduce)
