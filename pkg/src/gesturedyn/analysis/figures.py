"""
Datasets behind the four reference figures.

Each builder writes CSV files into one directory and returns the list of
datasets it wrote; :func:`reproduce_figure` adds a ``manifest.json`` naming
every file and the panel it belongs to. Nothing is plotted here.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from gesturedyn import __version__
from gesturedyn.analysis.power_law import fit_sweep_power_laws
from gesturedyn.analysis.sweeps import (
    SWEEP_COLUMNS,
    SweepParameter,
    SweepRecord,
    linear_spaced,
    log_spaced,
    run_family,
    run_sweep,
)
from gesturedyn.common.constants import DEFAULT_STIFFNESS, RATIO_FAMILY, STIFFNESS_GRID
from gesturedyn.common.errors import ParameterError, PowerLawError
from gesturedyn.common.io import write_csv, write_json, write_trajectory_family
from gesturedyn.dynamics.model import GestureParams, force_profile
from gesturedyn.dynamics.scaling import ScalingMode, inverse_square_curve
from gesturedyn.dynamics.solver import SimConfig

logger = logging.getLogger(__name__)

FIGURE_IDS = (1, 2, 3, 4)

FORCE_COLUMNS = ["x", "f_linear", "f_cubic", "f_sum"]
FORCE_POINTS = 301

QUASI_SYMMETRIC_RATIO = 0.95
LOCAL_DISTANCES = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0)
MANIFEST_NAME = "manifest.json"


@dataclass
class Dataset:
    """One file written for a figure.

    Attributes:
        file: File name inside the figure directory
        panel: Panel the data belongs to
        columns: CSV header
        meta: Extra manifest fields (fit results, parameters)
    """

    file: str
    panel: str
    columns: List[str]
    meta: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"file": self.file, "panel": self.panel, "columns": self.columns, **self.meta}


class FigureBuilder:
    """Writes the datasets of one figure into ``out_dir``.

    Args:
        out_dir: Figure directory
        jobs: Worker processes for sweeps
        on_dataset: Callback after each dataset is written
    """

    def __init__(self, out_dir, jobs: int = 1, on_dataset: Optional[Callable[[Dataset], None]] = None):
        self.out_dir = Path(out_dir)
        self.jobs = jobs
        self.on_dataset = on_dataset
        self.datasets: List[Dataset] = []

    def add(self, dataset: Dataset) -> Dataset:
        self.datasets.append(dataset)
        logger.debug("Wrote %s (%s)", dataset.file, dataset.panel)
        if self.on_dataset:
            self.on_dataset(dataset)
        return dataset

    def forces(
        self,
        name: str,
        panel: str,
        members: Sequence[Tuple[float, GestureParams]],
        x_range: Tuple[float, float],
        key: Optional[str] = None,
        x0: Optional[float] = None,
    ) -> Dataset:
        """Force profiles; several members go to one long-format file keyed by ``key``."""
        rows = []
        for value, params in members:
            profile = force_profile(params, x_range[0], x_range[1], FORCE_POINTS, x0=x0)
            for row in zip(profile.x, profile.linear, profile.nonlinear, profile.total):
                rows.append(((value,) if key else ()) + tuple(row))
        columns = ([key] if key else []) + FORCE_COLUMNS
        write_csv(self.out_dir / name, columns, rows)
        return self.add(Dataset(name, panel, columns))

    def trajectories(
        self,
        name: str,
        panel: str,
        parameter: SweepParameter,
        values: Sequence[float],
        params: GestureParams,
        cfg: SimConfig,
    ) -> List[SweepRecord]:
        """Trajectories of a family in long format: <parameter>,t,x,v."""
        outcomes = run_family(parameter, values, params, cfg, self.jobs)
        members = [(record.value, traj) for record, traj in outcomes if traj is not None]
        write_trajectory_family(self.out_dir / name, parameter.value, members)
        self.add(Dataset(name, panel, [parameter.value, "t", "x", "v"], {"params": params.as_dict()}))
        return [record for record, _ in outcomes]

    def sweep(self, name: str, panel: str, records: List[SweepRecord]) -> Dataset:
        write_csv(self.out_dir / name, SWEEP_COLUMNS, [record.as_row() for record in records])
        parameter = records[0].parameter.value if records else ""
        return self.add(Dataset(name, panel, SWEEP_COLUMNS, {"swept": parameter}))

    def power_tables(self, ratios: Sequence[float], params: GestureParams, cfg: SimConfig):
        """k-sweep table per ratio plus its log-log table and fits."""
        ks = log_spaced(*STIFFNESS_GRID)
        power_rows, log_rows, fits = [], [], []
        for d in ratios:
            records = run_sweep(SweepParameter.K, ks, params.replace(d=d), cfg, self.jobs)
            for record in records:
                summary = record.summary
                power_rows.append((
                    d,
                    record.value,
                    summary.t_pv if summary else None,
                    summary.pv if summary else None,
                    record.status.value,
                ))
                if summary and summary.t_pv > 0 and summary.pv > 0:
                    log_rows.append((d, np.log(record.value), np.log(summary.t_pv), np.log(summary.pv)))
            try:
                for quantity, fit in fit_sweep_power_laws(records).items():
                    fits.append({"d": d, "quantity": quantity, **fit.as_dict()})
            except PowerLawError as e:
                logger.warning("No power law for d=%g: %s", d, e.message)

        power_columns = ["d", "k", "t_pv", "pv", "status"]
        write_csv(self.out_dir / "power_table.csv", power_columns, power_rows)
        self.add(Dataset("power_table.csv", "bottom-left: t_pv and pv against k", power_columns))

        log_columns = ["d", "ln_k", "ln_t_pv", "ln_pv"]
        write_csv(self.out_dir / "loglog_table.csv", log_columns, log_rows)
        self.add(Dataset(
            "loglog_table.csv",
            "bottom-right: natural logarithms of k, t_pv and pv",
            log_columns,
            {"fits": fits},
        ))


def _reference_config(x0: float = 1.0) -> SimConfig:
    return SimConfig(x0=x0, v0=0.0)


def build_figure_1(builder: FigureBuilder):
    """Linear against cubic model at unit distance, and the k power laws."""
    proportional = GestureParams(k=1.0, d=QUASI_SYMMETRIC_RATIO)
    builder.forces("forces.csv", "top-left: restoring forces, k = 1, d = 0.95k", [(0.95, proportional)], (-1.5, 1.5))

    params = GestureParams(k=DEFAULT_STIFFNESS)
    builder.trajectories(
        "trajectories.csv",
        "top-right: linear (d = 0) and cubic (d = 0.95k) trajectories",
        SweepParameter.RATIO,
        [0.0, QUASI_SYMMETRIC_RATIO],
        params,
        _reference_config(),
    )
    builder.power_tables(RATIO_FAMILY, params, _reference_config())


def build_figure_2(builder: FigureBuilder):
    """Ratio family at unit distance, target sweep, and unscaled forces."""
    params = GestureParams(k=DEFAULT_STIFFNESS)
    builder.trajectories(
        "ratio_trajectories.csv",
        "top-left: trajectories for d in {0, 0.25, 0.5, 0.75, 0.95}k",
        SweepParameter.RATIO,
        RATIO_FAMILY,
        params,
        _reference_config(),
    )

    records = builder.trajectories(
        "target_trajectories.csv",
        "top-right: trajectories for T in {0.0, 0.2, ..., 0.8}, d = 0.95k",
        SweepParameter.TARGET,
        linear_spaced(0.0, 0.8, 5),
        params.replace(d=QUASI_SYMMETRIC_RATIO),
        _reference_config(),
    )
    builder.sweep("target_sweep.csv", "top-right: kinematics per target", records)

    builder.forces(
        "ratio_forces.csv",
        "bottom-left: restoring forces, k = 1, per d",
        [(d, GestureParams(k=1.0, d=d)) for d in RATIO_FAMILY],
        (-1.5, 1.5),
        key="d",
    )
    builder.forces(
        "wide_forces.csv",
        "bottom-right: unscaled forces, d = 0.95k, over [-10, 10]",
        [(QUASI_SYMMETRIC_RATIO, GestureParams(k=1.0, d=QUASI_SYMMETRIC_RATIO))],
        (-10.0, 10.0),
    )


def build_figure_3(builder: FigureBuilder):
    """Inverse-square law, locally scaled ratio family, scaled and unscaled forces."""
    distances = linear_spaced(0.1, 1.0, 91)
    coefficients = inverse_square_curve(QUASI_SYMMETRIC_RATIO, 1.0, distances)
    write_csv(builder.out_dir / "inverse_square.csv", ["distance", "d_eff"], zip(distances, coefficients))
    builder.add(Dataset(
        "inverse_square.csv",
        "top-left: coefficient needed per distance, d = 0.95, k = 1",
        ["distance", "d_eff"],
    ))

    local = GestureParams(k=DEFAULT_STIFFNESS, scaling=ScalingMode.LOCAL)
    builder.trajectories(
        "local_ratio_trajectories.csv",
        "top-right: locally scaled trajectories, x0 = 10, T = 0, per d",
        SweepParameter.RATIO,
        RATIO_FAMILY,
        local,
        _reference_config(x0=10.0),
    )

    builder.forces(
        "unscaled_forces.csv",
        "bottom-left: unscaled forces, d = 0.95k, over [-10, 10]",
        [(QUASI_SYMMETRIC_RATIO, GestureParams(k=1.0, d=QUASI_SYMMETRIC_RATIO))],
        (-10.0, 10.0),
    )
    builder.forces(
        "scaled_forces.csv",
        "bottom-right: locally scaled forces, d = 0.95, x0 = 10, over [-10, 10]",
        [(QUASI_SYMMETRIC_RATIO, GestureParams(k=1.0, d=QUASI_SYMMETRIC_RATIO, scaling=ScalingMode.LOCAL))],
        (-10.0, 10.0),
        x0=10.0,
    )


def build_figure_4(builder: FigureBuilder):
    """Local scaling across targets and distances, global and restricted-range scaling."""
    local = GestureParams(k=DEFAULT_STIFFNESS, d=QUASI_SYMMETRIC_RATIO, scaling=ScalingMode.LOCAL)
    targets = linear_spaced(0.0, 0.8, 5)
    records = builder.trajectories(
        "local_target_trajectories.csv",
        "top-left: locally scaled trajectories, x0 = 1, T in [0, 0.8]",
        SweepParameter.TARGET,
        targets,
        local,
        _reference_config(),
    )
    builder.sweep("local_target_sweep.csv", "top-left: kinematics per target", records)
    builder.forces(
        "local_target_forces.csv",
        "top-right: locally scaled forces per target",
        [(float(target), local.replace(target=float(target))) for target in targets],
        (-1.5, 1.5),
        key="T",
        x0=1.0,
    )

    records = builder.trajectories(
        "local_distance_trajectories.csv",
        "top-left (distances): locally scaled trajectories, T = 0, |x0 - T| in {0.1, ..., 10}",
        SweepParameter.X0,
        LOCAL_DISTANCES,
        local,
        _reference_config(),
    )
    builder.sweep("local_distance_sweep.csv", "top-left (distances): kinematics per distance", records)

    for name, movement_range, panel in (
        ("global", 10.0, "bottom-left: global scaling, D = 10, x0 = 10, T in [0, 8]"),
        ("restricted", 8.0, "bottom-right: restricted global scaling, D = 8, x0 = 10, T in [0, 8]"),
    ):
        params = local.replace(scaling=ScalingMode.GLOBAL, movement_range=movement_range)
        records = builder.trajectories(
            f"{name}_target_trajectories.csv",
            panel,
            SweepParameter.TARGET,
            linear_spaced(0.0, 8.0, 9),
            params,
            _reference_config(x0=10.0),
        )
        builder.sweep(f"{name}_target_sweep.csv", panel, records)


FIGURE_BUILDERS: Dict[int, Callable[[FigureBuilder], None]] = {
    1: build_figure_1,
    2: build_figure_2,
    3: build_figure_3,
    4: build_figure_4,
}


def reproduce_figure(
    figure: int,
    out_dir,
    jobs: int = 1,
    on_dataset: Optional[Callable[[Dataset], None]] = None,
) -> Tuple[Path, List[Dataset]]:
    """Write every dataset of ``figure`` into ``out_dir/figure<N>``.

    Returns:
        (figure directory, datasets written)
    """
    if figure not in FIGURE_BUILDERS:
        raise ParameterError(
            f"Unknown figure {figure}",
            suggestion=f"Choose one of {', '.join(map(str, FIGURE_IDS))}.",
        )

    figure_dir = Path(out_dir) / f"figure{figure}"
    builder = FigureBuilder(figure_dir, jobs, on_dataset)
    logger.info("Reproducing figure %d into %s", figure, figure_dir)
    FIGURE_BUILDERS[figure](builder)

    write_json(figure_dir / MANIFEST_NAME, {
        "figure": figure,
        "generator": f"gesturedyn {__version__}",
        "datasets": [dataset.as_dict() for dataset in builder.datasets],
    })
    return figure_dir, builder.datasets


def dataset_count(figure: int) -> int:
    """Number of datasets a figure writes (for progress bars)."""
    return {1: 4, 2: 5, 3: 4, 4: 9}[figure]
