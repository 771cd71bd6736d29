"""
gesturedyn sweep - Vary one of k, T, d or x0 and tabulate the kinematics.

The sweep is taken from the ``sweep`` config section: ``sweep.parameter``
plus either ``sweep.values`` or ``sweep.range``. Diverged points stay in
sweep.csv with status ``diverged``; the command then exits with code 3.
"""

import logging

import click

from gesturedyn.analysis.sweeps import SWEEP_COLUMNS, run_sweep
from gesturedyn.cli.options import output_dir, prepare_run, run_options
from gesturedyn.common.errors import DivergenceError, handle_common_errors
from gesturedyn.common.io import write_csv
from gesturedyn.common.output import format_number, print_summary, sweep_progress, warning

logger = logging.getLogger(__name__)


@click.command()
@run_options
@handle_common_errors
def sweep(config_path, overrides, jobs, out, verbose):
    """Run a parameter sweep.

    \b
    Examples:
        gesturedyn sweep --set sweep.parameter=T --set "sweep.values=[0, 0.2, 0.4, 0.6, 0.8]"
        gesturedyn sweep --set "sweep.range={start: 500, stop: 8000, num: 20, spacing: log}"
        gesturedyn sweep -c restricted.yaml --jobs 4
    """
    config = prepare_run(config_path, overrides, verbose)
    params = config.params()
    sim = config.sim_config()
    parameter = config.sweep_parameter
    values = config.sweep_values()
    target_dir = output_dir(config, out)

    with sweep_progress() as progress:
        task = progress.add_task(f"Sweeping {parameter.value}...", total=len(values))
        records = run_sweep(
            parameter, values, params, sim, jobs,
            on_record=lambda _: progress.advance(task),
        )

    sweep_file = write_csv(target_dir / "sweep.csv", SWEEP_COLUMNS, [record.as_row() for record in records])

    flagged = [record for record in records if record.flagged]
    if flagged:
        for record in flagged:
            warning(f"{parameter.value} = {record.value:g} diverged")
        raise DivergenceError(
            flagged[0].blowup_time,
            f"{len(flagged)} of {len(records)} sweep points diverged; results written to {sweep_file}",
        )

    t_pv = [record.summary.t_pv for record in records]
    print_summary(
        f"Swept {parameter.value} over {len(records)} values",
        [
            ("Range", f"{format_number(records[0].value)} .. {format_number(records[-1].value)}"),
            ("Time-to-peak velocity", f"{format_number(min(t_pv))} .. {format_number(max(t_pv))} s"),
        ],
        files=[(str(sweep_file), "one row per sweep point")],
    )
