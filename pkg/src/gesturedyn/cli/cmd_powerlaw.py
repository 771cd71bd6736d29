"""
gesturedyn powerlaw - Power laws of t_pv and pv in k, one pair per ratio d.

For every d in ``powerlaw.d`` the command sweeps k over
``powerlaw.k_num`` log-spaced values in [k_min, k_max] and fits
alpha * k^exponent to the time-to-peak velocity and the peak velocity.
"""

import logging

import click

from gesturedyn.analysis.power_law import POWER_LAW_QUANTITIES, fit_sweep_power_laws
from gesturedyn.analysis.sweeps import SweepParameter, log_spaced, run_sweep
from gesturedyn.cli.options import output_dir, prepare_run, run_options
from gesturedyn.common.errors import PowerLawError, handle_common_errors
from gesturedyn.common.io import write_json
from gesturedyn.common.output import format_number, print_summary, sweep_progress, warning

logger = logging.getLogger(__name__)


def degenerate_entry(d: float, quantity: str, n_dropped: int) -> dict:
    return {
        "d": d,
        "quantity": quantity,
        "alpha": None,
        "exponent": None,
        "r2": None,
        "n_points": 0,
        "n_dropped": n_dropped,
        "degenerate": True,
    }


@click.command()
@run_options
@handle_common_errors
def powerlaw(config_path, overrides, jobs, out, verbose):
    """Fit t_pv and pv power laws in k.

    \b
    Examples:
        gesturedyn powerlaw
        gesturedyn powerlaw --set "powerlaw.d=[0, 0.95]" --set powerlaw.k_num=10
    """
    config = prepare_run(config_path, overrides, verbose)
    params = config.params()
    sim = config.sim_config()
    ratios = config.number_list("powerlaw", "d")
    ks = config.validated(lambda: log_spaced(
        config.number("powerlaw", "k_min"),
        config.number("powerlaw", "k_max"),
        config.integer("powerlaw", "k_num"),
    ))
    for d in ratios:
        config.validated(lambda: params.replace(d=d))
    target_dir = output_dir(config, out)

    entries = []
    with sweep_progress() as progress:
        task = progress.add_task("Sweeping k...", total=len(ratios) * len(ks))
        for d in ratios:
            records = run_sweep(
                SweepParameter.K, ks, params.replace(d=d), sim, jobs,
                on_record=lambda _: progress.advance(task),
            )
            try:
                fits = fit_sweep_power_laws(records)
            except PowerLawError as e:
                warning(f"d = {d:g}: {e.message}")
                dropped = sum(1 for record in records if record.flagged)
                entries.extend(degenerate_entry(d, quantity, dropped) for quantity in POWER_LAW_QUANTITIES)
                continue
            for quantity, fit in fits.items():
                entries.append({"d": d, "quantity": quantity, **fit.as_dict(), "degenerate": False})

    powerlaw_file = write_json(target_dir / "powerlaw.json", entries)

    stats = [
        (
            f"d = {entry['d']:g}, {entry['quantity']}",
            "degenerate" if entry["degenerate"]
            else f"alpha = {format_number(entry['alpha'], 4)}, exponent = {format_number(entry['exponent'], 4)}",
        )
        for entry in entries
    ]
    print_summary("Power laws fitted", stats, files=[(str(powerlaw_file), f"{len(entries)} fits")])
