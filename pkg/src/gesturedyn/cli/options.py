"""Options shared by every gesturedyn subcommand."""

import functools
import logging
from pathlib import Path
from typing import Optional, Sequence

import click

from gesturedyn.cli.config import RunConfig, load_config
from gesturedyn.common.constants import DEFAULT_JOBS


def run_options(func):
    """Add --config, --set, --jobs, --out and -v/--verbose to a command."""

    @click.option(
        "-c", "--config", "config_path",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="Run configuration (.json, .yaml or .yml)",
    )
    @click.option(
        "--set", "overrides",
        multiple=True,
        metavar="KEY=VALUE",
        help="Override a config value, e.g. --set model.k=4000 (repeatable)",
    )
    @click.option(
        "-j", "--jobs",
        type=click.IntRange(min=1),
        default=DEFAULT_JOBS,
        show_default=True,
        help="Worker processes for sweeps",
    )
    @click.option("-o", "--out", type=click.Path(file_okay=False), default=None, help="Output directory")
    @click.option("-v", "--verbose", is_flag=True, help="Enable debug logging")
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)

    return wrapper


def setup_logging(verbose: bool):
    if verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(levelname)s: %(message)s")
    else:
        logging.basicConfig(level=logging.WARNING)


def prepare_run(config_path: Optional[str], overrides: Sequence[str], verbose: bool) -> RunConfig:
    """Configure logging, then load and validate the run configuration."""
    setup_logging(verbose)
    return load_config(config_path, overrides)


def output_dir(config: RunConfig, out: Optional[str]) -> Path:
    """--out wins over output.path; the directory is created."""
    path = Path(out) if out is not None else config.output_path
    path.mkdir(parents=True, exist_ok=True)
    return path
