"""
Tests for parameter sweeps and trajectory families.
"""

import math

import numpy as np
import pytest

from gesturedyn.analysis.sweeps import (
    SWEEP_COLUMNS,
    SweepParameter,
    linear_spaced,
    log_spaced,
    point_inputs,
    run_family,
    run_sweep,
    sweep_initial_positions,
    sweep_ratios,
    sweep_stiffness,
    sweep_targets,
)
from gesturedyn.common.errors import ParameterError
from gesturedyn.dynamics.model import GestureParams
from gesturedyn.dynamics.solver import SimConfig, TrajectoryStatus


@pytest.fixture
def cfg():
    return SimConfig(x0=1.0)


class TestPointInputs:
    """Test how a sweep value is applied to the template."""

    def test_each_parameter(self, cfg):
        """Test k, T, d and x0 land in the right place."""
        params = GestureParams(k=2000, d=0.5)
        assert point_inputs(SweepParameter.K, 500.0, params, cfg)[0].k == 500.0
        assert point_inputs(SweepParameter.TARGET, 0.3, params, cfg)[0].target == 0.3
        assert point_inputs(SweepParameter.RATIO, 0.9, params, cfg)[0].d == 0.9
        assert point_inputs(SweepParameter.X0, 4.0, params, cfg)[1].x0 == 4.0

    def test_invalid_point_fails_before_running(self, cfg):
        """Test one invalid value rejects the whole sweep."""
        params = GestureParams(k=2000, d=0.5, scaling="local")
        with pytest.raises(ParameterError):
            run_sweep(SweepParameter.RATIO, [0.2, 1.2], params, cfg)

    def test_empty_sweep(self, cfg):
        """Test an empty value list raises ParameterError."""
        with pytest.raises(ParameterError, match="at least one value"):
            run_sweep(SweepParameter.K, [], GestureParams(k=2000), cfg)


class TestStiffnessSweep:
    """Test sweeps over k."""

    def test_single_linear_point(self, cfg):
        """Test a one-point sweep reproduces t_pv = 1/sqrt(k)."""
        (record,) = sweep_stiffness([2000], GestureParams(k=1), cfg)
        assert record.parameter is SweepParameter.K
        assert record.summary.t_pv == pytest.approx(1 / math.sqrt(2000), abs=5e-5)
        assert record.status is TrajectoryStatus.CONVERGED
        assert not record.flagged

    def test_records_sorted_and_monotonic(self, cfg):
        """Test t_pv falls and pv rises with k."""
        records = sweep_stiffness([8000, 500, 2000, 1000], GestureParams(k=1, d=0.95), cfg)
        assert [r.value for r in records] == [500, 1000, 2000, 8000]
        t_pv = [r.summary.t_pv for r in records]
        pv = [r.summary.pv for r in records]
        assert all(a > b for a, b in zip(t_pv, t_pv[1:]))
        assert all(a < b for a, b in zip(pv, pv[1:]))

    def test_parallel_matches_inline(self, cfg):
        """Test a process pool gives the same records as an inline run."""
        ks = log_spaced(500, 8000, 4)
        params = GestureParams(k=1, d=0.5)
        inline = sweep_stiffness(ks, params, cfg, jobs=1)
        pooled = sweep_stiffness(ks, params, cfg, jobs=2)
        assert [r.as_row() for r in inline] == [r.as_row() for r in pooled]

    def test_progress_callback(self, cfg):
        """Test on_record fires once per point."""
        seen = []
        sweep_stiffness([500, 1000, 2000], GestureParams(k=1), cfg, on_record=seen.append)
        assert len(seen) == 3


class TestOtherSweeps:
    """Test sweeps over T, d and x0."""

    def test_proportional_targets_shorten_movements(self, cfg):
        """Test t_pv drops as T approaches x0 under proportional scaling."""
        records = sweep_targets(linear_spaced(0.0, 0.8, 5), GestureParams(k=2000, d=0.95), cfg)
        t_pv = [r.summary.t_pv for r in records]
        assert all(a > b for a, b in zip(t_pv, t_pv[1:]))

    def test_local_scaling_preserves_timing(self):
        """Test local scaling keeps t_pv fixed and pv proportional to distance."""
        params = GestureParams(k=2000, d=0.95, scaling="local")
        distances = [0.5, 1.0, 2.0, 5.0, 10.0]
        records = sweep_initial_positions(distances, params, SimConfig())
        t_pv = np.array([r.summary.t_pv for r in records])
        pv = np.array([r.summary.pv for r in records])
        assert np.ptp(t_pv) <= 1e-4
        np.testing.assert_allclose(pv / np.array(distances), pv[0] / distances[0], rtol=1e-4)

    def test_ratio_sweep_delays_peak(self, cfg):
        """Test larger d gives a later peak."""
        records = sweep_ratios([0.0, 0.5, 0.95], GestureParams(k=2000), cfg)
        t_pv = [r.summary.t_pv for r in records]
        assert t_pv[0] < t_pv[1] < t_pv[2]

    def test_diverged_points_are_flagged(self):
        """Test divergent points stay in the sweep with empty landmarks."""
        records = sweep_initial_positions([1.0, 10.0], GestureParams(k=2000, d=0.95), SimConfig())
        stable, diverged = records
        assert not stable.flagged
        assert diverged.flagged
        assert diverged.status is TrajectoryStatus.DIVERGED
        assert diverged.blowup_time > 0
        row = diverged.as_row()
        assert list(row) == SWEEP_COLUMNS
        assert row["t_pv"] is None and row["status"] == "diverged"

    def test_start_on_target_gives_zero_motion(self):
        """Test x0 == T is kept with a zero summary."""
        (record,) = sweep_initial_positions([0.0], GestureParams(k=2000, d=0.5, scaling="local"), SimConfig())
        assert record.summary.pv == 0.0
        assert record.coefficient.value == 0.0


class TestFamilies:
    """Test runs that keep their trajectories."""

    def test_family_keeps_trajectories(self, cfg):
        """Test each record comes with its trajectory."""
        family = run_family(SweepParameter.RATIO, [0.95, 0.0], GestureParams(k=2000), cfg)
        assert [record.value for record, _ in family] == [0.0, 0.95]
        for record, traj in family:
            assert traj.params.d == record.value
            assert traj.x[0] == 1.0


class TestGrids:
    """Test grid helpers."""

    def test_log_spaced(self):
        """Test endpoints and constant ratio."""
        grid = log_spaced(500, 8000, 5)
        assert grid[0] == pytest.approx(500) and grid[-1] == pytest.approx(8000)
        np.testing.assert_allclose(grid[1:] / grid[:-1], 2.0)

    def test_log_spaced_invalid(self):
        """Test non-positive or reversed bounds are rejected."""
        with pytest.raises(ParameterError):
            log_spaced(0, 10, 3)
        with pytest.raises(ParameterError):
            log_spaced(10, 1, 3)

    def test_linear_spaced(self):
        """Test evenly spaced targets."""
        np.testing.assert_allclose(linear_spaced(0, 0.8, 5), [0, 0.2, 0.4, 0.6, 0.8])
        with pytest.raises(ParameterError):
            linear_spaced(0, 1, 0)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
