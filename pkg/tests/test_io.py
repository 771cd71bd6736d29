"""
Tests for CSV/JSON writers and the observed-trajectory loader.
"""

import json

import numpy as np
import pytest

from gesturedyn.common.errors import InputDataError
from gesturedyn.common.io import (
    TrajectoryLoader,
    format_value,
    read_json,
    read_table,
    read_trajectory_csv,
    write_csv,
    write_json,
    write_trajectory_csv,
    write_trajectory_family,
    write_trajectory_json,
)
from gesturedyn.dynamics.model import GestureParams
from gesturedyn.dynamics.solver import SimConfig, integrate

SAMPLE_CSV = "t,x,v\n0,1,0\n0.001,0.99,-10\n0.002,0.97,-15\n0.003,0.94,-20\n"


@pytest.fixture
def trajectory():
    return integrate(GestureParams(k=2000, d=0.95), SimConfig(t_end=0.1))


class TestFormatValue:
    """Test CSV cell rendering."""

    def test_cells(self):
        """Test None, bools, ints, floats and strings."""
        assert format_value(None) == ""
        assert format_value(True) == "true"
        assert format_value(np.int64(7)) == "7"
        assert format_value(0.1) == "0.10000000000000001"
        assert format_value(np.float64(2.5)) == "2.5"
        assert format_value("diverged") == "diverged"


class TestWriters:
    """Test CSV and JSON writers."""

    def test_csv_layout(self, tmp_path):
        """Test header, LF line endings and dict rows."""
        path = write_csv(tmp_path / "sub" / "table.csv", ["a", "b"], [{"a": 1, "b": None}, (2.5, "x")])
        assert path.read_bytes() == b"a,b\n1,\n2.5,x\n"

    def test_trajectory_csv_round_trip(self, tmp_path, trajectory):
        """Test floats read back bit-for-bit."""
        path = write_trajectory_csv(tmp_path / "trajectory.csv", trajectory)
        table = read_table(path)
        assert list(table) == ["t", "x", "v"]
        assert np.array_equal(np.array(table["x"]), trajectory.x)
        assert np.array_equal(np.array(table["v"]), trajectory.v)

    def test_trajectory_json(self, tmp_path, trajectory):
        """Test JSON trajectories hold plain lists."""
        data = read_json(write_trajectory_json(tmp_path / "trajectory.json", trajectory))
        assert sorted(data) == ["t", "v", "x"]
        assert data["x"] == trajectory.x.tolist()

    def test_json_sorted_and_non_finite(self, tmp_path):
        """Test sorted keys, trailing newline and NaN as null."""
        path = write_json(tmp_path / "out.json", {"b": float("nan"), "a": np.int32(3), "c": [np.float64(1.5)]})
        text = path.read_text()
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"') < text.index('"c"')
        assert json.loads(text) == {"a": 3, "b": None, "c": [1.5]}

    def test_family_long_format(self, tmp_path, trajectory):
        """Test one block of rows per member with the parameter column first."""
        path = write_trajectory_family(tmp_path / "family.csv", "d", [(0.0, trajectory), (0.95, trajectory)])
        table = read_table(path)
        assert list(table) == ["d", "t", "x", "v"]
        assert len(table["d"]) == 2 * len(trajectory)
        assert table["d"][0] == 0.0 and table["d"][-1] == 0.95

    def test_identical_runs_identical_bytes(self, tmp_path):
        """Test two identical simulations write identical files."""
        params, cfg = GestureParams(k=3000, d=0.5), SimConfig(t_end=0.05)
        first = write_trajectory_csv(tmp_path / "a.csv", integrate(params, cfg))
        second = write_trajectory_csv(tmp_path / "b.csv", integrate(params, cfg))
        assert first.read_bytes() == second.read_bytes()

    def test_read_table_empty_cells(self, tmp_path):
        """Test empty cells read back as None and text stays text."""
        path = tmp_path / "table.csv"
        path.write_text("value,status\n1,\n,diverged\n")
        assert read_table(path) == {"value": [1.0, None], "status": [None, "diverged"]}


class TestTrajectoryLoader:
    """Test loading observed trajectories."""

    def test_load_with_velocity(self, tmp_path):
        """Test a t,x,v file loads as a Trajectory with target = last x."""
        path = tmp_path / "observed.csv"
        path.write_text(SAMPLE_CSV)
        traj = TrajectoryLoader(path).load()
        assert len(traj) == 4
        assert traj.v[1] == -10.0
        assert traj.target == 0.94
        assert traj.dt == pytest.approx(0.001)

    def test_explicit_target(self, tmp_path):
        """Test an explicit target overrides the last sample."""
        path = tmp_path / "observed.csv"
        path.write_text(SAMPLE_CSV)
        assert TrajectoryLoader.load_from_file(path, target=0.0).target == 0.0

    def test_velocity_estimated_when_missing(self, tmp_path):
        """Test v comes from second-order differences of x."""
        t = np.arange(11) * 0.01
        path = write_csv(tmp_path / "observed.csv", ["t", "x"], zip(t, 3.0 * t + 1.0))
        traj = read_trajectory_csv(path)
        np.testing.assert_allclose(traj.v, 3.0)

    def test_extra_columns_ignored(self, tmp_path):
        """Test unknown columns are skipped."""
        path = tmp_path / "observed.csv"
        path.write_text("label,t,x\na,0,1\nb,0.1,0.5\nc,0.2,0.2\n")
        traj = TrajectoryLoader(path).load()
        np.testing.assert_allclose(traj.x, [1.0, 0.5, 0.2])

    def test_round_trip_from_simulation(self, tmp_path, trajectory):
        """Test a written trajectory loads back unchanged."""
        traj = read_trajectory_csv(write_trajectory_csv(tmp_path / "t.csv", trajectory), target=0.0)
        assert np.array_equal(traj.x, trajectory.x)

    @pytest.mark.parametrize(
        "content, reason",
        [
            ("", "empty"),
            ("time,pos\n0,1\n", "header"),
            ("t,x\n0,1\n0.1,0.5\n", "at least 3"),
            ("t,x\n0,1\n0.1,0.5\n0.1,0.2\n", "increasing"),
            ("t,x\n0,1\n0.1,0.5\n0.3,0.2\n", "not uniform"),
            ("t,x\n0,1\n0.1,abc\n0.2,0.2\n", "line 3"),
            ("t,x\n0,1\n0.1,nan\n0.2,0.2\n", "finite"),
        ],
    )
    def test_unusable_files(self, tmp_path, content, reason):
        """Test unusable files raise InputDataError naming the reason."""
        path = tmp_path / "observed.csv"
        path.write_text(content)
        with pytest.raises(InputDataError) as excinfo:
            TrajectoryLoader(path).load()
        assert reason in excinfo.value.suggestion

    def test_missing_file(self, tmp_path):
        """Test a missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            TrajectoryLoader(tmp_path / "missing.csv").load()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
