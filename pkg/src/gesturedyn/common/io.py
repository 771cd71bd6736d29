"""
File formats for gesturedyn.

CSV for arrays, JSON for scalars and metadata. Floats are written with 17
significant digits so every value parses back to the same float64; no
timestamps or console output ever end up in data files, which keeps
identical runs byte-identical.
"""

import csv
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from gesturedyn.common.constants import FLOAT_FORMAT
from gesturedyn.common.errors import InputDataError

logger = logging.getLogger(__name__)

TRAJECTORY_COLUMNS = ["t", "x", "v"]

# Relative deviation of a time step from the mean step that still counts as uniform
GRID_TOLERANCE = 1e-6


def format_value(value: Any) -> str:
    """Render one CSV cell: floats at full precision, None as an empty cell."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), FLOAT_FORMAT)
    return str(value)


def _jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays and non-finite floats into plain JSON values."""
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(item) for item in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def _ensure_parent(path: Path):
    path.parent.mkdir(parents=True, exist_ok=True)


def write_csv(path, columns: Sequence[str], rows: Iterable[Any]) -> Path:
    """Write a CSV file with a header row and LF line endings.

    Args:
        path: Destination file
        columns: Header names
        rows: Dicts keyed by column name, or sequences in column order

    Returns:
        Path written
    """
    output_file = Path(path)
    _ensure_parent(output_file)
    n_rows = 0
    with open(output_file, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            if isinstance(row, dict):
                row = [row.get(column) for column in columns]
            writer.writerow([format_value(value) for value in row])
            n_rows += 1

    logger.debug("Wrote %d rows to %s", n_rows, output_file)
    return output_file


def write_json(path, data: Any) -> Path:
    """Write JSON with sorted keys, two-space indent and UTF-8 encoding."""
    output_file = Path(path)
    _ensure_parent(output_file)
    text = json.dumps(_jsonable(data), indent=2, sort_keys=True, ensure_ascii=False)
    output_file.write_text(text + "\n", encoding="utf-8")
    logger.debug("Wrote %s", output_file)
    return output_file


def trajectory_rows(traj) -> List[Tuple[float, float, float]]:
    """One (t, x, v) row per grid point."""
    return list(zip(traj.t.tolist(), traj.x.tolist(), traj.v.tolist()))


def write_trajectory_csv(path, traj) -> Path:
    return write_csv(path, TRAJECTORY_COLUMNS, trajectory_rows(traj))


def write_trajectory_json(path, traj) -> Path:
    return write_json(path, {"t": traj.t, "x": traj.x, "v": traj.v})


def write_trajectory_family(path, parameter: str, members: Iterable[Tuple[float, Any]]) -> Path:
    """Long-format CSV of several trajectories: <parameter>,t,x,v.

    Args:
        path: Destination file
        parameter: Name of the quantity that distinguishes the members
        members: (parameter value, Trajectory) pairs
    """
    rows = []
    for value, traj in members:
        rows.extend((value, t, x, v) for t, x, v in trajectory_rows(traj))
    return write_csv(path, [parameter] + TRAJECTORY_COLUMNS, rows)


def _parse_cell(text: str) -> Any:
    if text == "":
        return None
    try:
        return float(text)
    except ValueError:
        return text


def read_table(path) -> Dict[str, List[Any]]:
    """Read a CSV written by :func:`write_csv` into columns.

    Numeric cells become floats, empty cells None, anything else stays text.
    """
    with open(Path(path), "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            return {}
        columns: Dict[str, List[Any]] = {name: [] for name in header}
        for row in reader:
            for name, cell in zip(header, row):
                columns[name].append(_parse_cell(cell))
    return columns


def read_json(path) -> Any:
    with open(Path(path), "r", encoding="utf-8") as f:
        return json.load(f)


class TrajectoryLoader:
    """
    Loader for observed trajectories.

    Accepts CSV files with a header row ``t,x`` or ``t,x,v`` (extra columns
    are ignored). Times must be finite, strictly increasing and uniformly
    spaced. A missing velocity column is estimated with second-order
    central differences.

    Example:
        loader = TrajectoryLoader("observed.csv")
        traj = loader.load()
        print(traj.dt, len(traj))
    """

    def __init__(self, file_path, target: Optional[float] = None):
        """
        Initialize trajectory loader.

        Args:
            file_path: Path to the observed CSV file
            target: Target position of the movement (default: last sample)
        """
        self.file_path = Path(file_path)
        self.target = target

    def _fail(self, detail: str):
        raise InputDataError(str(self.file_path), detail)

    def read_columns(self) -> Dict[str, np.ndarray]:
        """Parse the numeric columns t, x and (if present) v."""
        if not self.file_path.exists():
            raise FileNotFoundError(2, "No such file", str(self.file_path))

        with open(self.file_path, "r", encoding="utf-8", newline="") as f:
            reader = csv.reader(f)
            try:
                header = [name.strip() for name in next(reader)]
            except StopIteration:
                self._fail("file is empty")
            if "t" not in header or "x" not in header:
                self._fail(f"header must contain t and x (found {', '.join(header) or 'nothing'})")

            wanted = [name for name in TRAJECTORY_COLUMNS if name in header]
            indices = [header.index(name) for name in wanted]
            values: Dict[str, List[float]] = {name: [] for name in wanted}
            for line_number, row in enumerate(reader, start=2):
                if not row:
                    continue
                try:
                    for name, index in zip(wanted, indices):
                        values[name].append(float(row[index]))
                except (ValueError, IndexError):
                    self._fail(f"line {line_number} is not numeric in columns {', '.join(wanted)}")

        return {name: np.asarray(column, dtype=float) for name, column in values.items()}

    def check_grid(self, t: np.ndarray) -> float:
        """Validate the time column and return its step."""
        if t.size < 3:
            self._fail(f"at least 3 samples are needed (found {t.size})")
        steps = np.diff(t)
        if not np.all(steps > 0):
            self._fail("time column must be strictly increasing")
        dt = float((t[-1] - t[0]) / (t.size - 1))
        deviation = float(np.max(np.abs(steps - dt)))
        if deviation > GRID_TOLERANCE * dt:
            self._fail(f"time grid is not uniform (step varies by {deviation:.3g} around {dt:.6g})")
        return dt

    def load(self):
        """Load the observed trajectory.

        Returns:
            Trajectory with params/config unset

        Raises:
            FileNotFoundError: If the file doesn't exist
            InputDataError: If the header, values or time grid are unusable
        """
        from gesturedyn.dynamics.solver import Trajectory

        columns = self.read_columns()
        t, x = columns["t"], columns["x"]
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(x))):
            self._fail("t and x must be finite")
        dt = self.check_grid(t)

        v = columns.get("v")
        if v is None:
            logger.info("No velocity column in %s, estimating from positions", self.file_path)
            v = np.gradient(x, dt, edge_order=2)
        elif not np.all(np.isfinite(v)):
            self._fail("v must be finite")

        target = float(x[-1]) if self.target is None else float(self.target)
        return Trajectory(t=t, x=x, v=v, target=target)

    @staticmethod
    def load_from_file(file_path, target: Optional[float] = None):
        """
        Convenience method to load an observed trajectory in one call.

        Example:
            traj = TrajectoryLoader.load_from_file("observed.csv", target=0.0)
        """
        return TrajectoryLoader(file_path, target).load()


def read_trajectory_csv(path, target: Optional[float] = None):
    return TrajectoryLoader.load_from_file(path, target)
