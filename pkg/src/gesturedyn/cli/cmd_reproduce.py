"""
gesturedyn reproduce - Write the datasets behind one reference figure.

Creates ``<out>/figure<N>/`` with one CSV per panel dataset and a
manifest.json naming every file and the panel it belongs to.
"""

import logging

import click

from gesturedyn.analysis.figures import FIGURE_IDS, dataset_count, reproduce_figure
from gesturedyn.cli.options import output_dir, prepare_run, run_options
from gesturedyn.common.errors import handle_common_errors
from gesturedyn.common.output import print_summary, sweep_progress

logger = logging.getLogger(__name__)


@click.command()
@click.argument("figure", type=click.Choice([str(figure) for figure in FIGURE_IDS]))
@run_options
@handle_common_errors
def reproduce(figure, config_path, overrides, jobs, out, verbose):
    """Reproduce the datasets of FIGURE (1, 2, 3 or 4).

    Figure parameters are fixed; only output.path (or --out) and --jobs
    are taken from the configuration.

    \b
    Examples:
        gesturedyn reproduce 1 --out figures
        gesturedyn reproduce 4 --out figures --jobs 8
    """
    config = prepare_run(config_path, overrides, verbose)
    figure = int(figure)
    target_dir = output_dir(config, out)

    with sweep_progress() as progress:
        task = progress.add_task(f"Reproducing figure {figure}...", total=dataset_count(figure))
        figure_dir, datasets = reproduce_figure(
            figure, target_dir, jobs,
            on_dataset=lambda _: progress.advance(task),
        )

    print_summary(
        f"Figure {figure} datasets written",
        [("Datasets", str(len(datasets))), ("Directory", str(figure_dir))],
        files=[(str(figure_dir / dataset.file), dataset.panel) for dataset in datasets]
        + [(str(figure_dir / "manifest.json"), "files and panels")],
    )
