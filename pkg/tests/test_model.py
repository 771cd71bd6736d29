"""
Tests for the gesture model: parameters, forces and the ODE right-hand side.
"""

import math

import numpy as np
import pytest

from gesturedyn.common.errors import ParameterError
from gesturedyn.dynamics.model import (
    GestureParams,
    State,
    acceleration,
    critical_damping,
    force_components,
    force_profile,
    force_roots,
    gesture_rhs,
    odd_power,
    restoring_force,
)
from gesturedyn.dynamics.scaling import ScalingMode


class TestGestureParams:
    """Test parameter validation and derived values."""

    def test_defaults_are_linear_proportional(self):
        """Test a bare stiffness gives the linear model."""
        params = GestureParams(k=2000)
        assert params.d == 0.0
        assert params.target == 0.0
        assert params.scaling is ScalingMode.PROPORTIONAL
        assert params.n == 3
        assert params.m == 1.0

    def test_damping_is_critical(self):
        """Test b = 2*sqrt(m*k) is derived, never configured."""
        assert GestureParams(k=2000).damping == pytest.approx(2 * math.sqrt(2000))
        assert GestureParams(k=100, m=4).damping == pytest.approx(40.0)

    def test_scaling_accepts_strings(self):
        """Test config strings are coerced to ScalingMode."""
        params = GestureParams(k=1, d=0.5, scaling="local")
        assert params.scaling is ScalingMode.LOCAL

    def test_unknown_scaling_rejected(self):
        """Test an unknown scaling name raises ParameterError."""
        with pytest.raises(ParameterError, match="Unknown scaling mode"):
            GestureParams(k=1, scaling="cubic")

    @pytest.mark.parametrize("k", [0, -1, float("nan"), float("inf")])
    def test_non_positive_stiffness_rejected(self, k):
        """Test k must be finite and > 0."""
        with pytest.raises(ParameterError):
            GestureParams(k=k)

    @pytest.mark.parametrize("d", [float("nan"), float("inf"), -0.1])
    def test_invalid_proportional_ratio_rejected(self, d):
        """Test NaN, infinite or negative d fails when the parameters are built."""
        with pytest.raises(ParameterError, match="Ratio d"):
            GestureParams(k=2000, d=d)

    @pytest.mark.parametrize("changes", [{"m": float("inf")}, {"n": float("nan")}, {"n": float("inf")}])
    def test_non_finite_mass_and_exponent_rejected(self, changes):
        """Test non-finite m or n raises ParameterError, not a conversion error."""
        with pytest.raises(ParameterError):
            GestureParams(k=1, **changes)

    def test_non_finite_movement_range_rejected(self):
        """Test global scaling needs a finite D."""
        with pytest.raises(ParameterError, match="movement range"):
            GestureParams(k=1, d=0.5, scaling="global", movement_range=float("inf"))

    def test_non_positive_mass_rejected(self):
        """Test m must be > 0."""
        with pytest.raises(ParameterError, match="Mass"):
            GestureParams(k=1, m=0)

    def test_exponent_must_be_positive_integer(self):
        """Test n is an integer >= 1."""
        with pytest.raises(ParameterError):
            GestureParams(k=1, n=0)
        with pytest.raises(ParameterError):
            GestureParams(k=1, n=2.5)
        assert GestureParams(k=1, n=5.0).n == 5

    def test_proportional_ratio_unbounded_above(self):
        """Test proportional scaling allows d >= 1 (the guard reports instability)."""
        assert GestureParams(k=1, d=3.0).d == 3.0
        with pytest.raises(ParameterError):
            GestureParams(k=1, d=-0.1)

    @pytest.mark.parametrize("scaling", ["local", "global"])
    def test_bounded_ratio_for_scaled_modes(self, scaling):
        """Test local and global scaling need 0 <= d < 1."""
        with pytest.raises(ParameterError, match="0 <= d < 1"):
            GestureParams(k=1, d=1.0, scaling=scaling, movement_range=10)

    def test_global_needs_movement_range(self):
        """Test global scaling without D fails with a suggestion."""
        with pytest.raises(ParameterError) as excinfo:
            GestureParams(k=1, d=0.5, scaling="global")
        assert "model.D" in excinfo.value.suggestion
        with pytest.raises(ParameterError):
            GestureParams(k=1, d=0.5, scaling="global", movement_range=0)

    def test_non_finite_target_rejected(self):
        """Test T must be finite."""
        with pytest.raises(ParameterError, match="Target"):
            GestureParams(k=1, target=float("inf"))

    def test_replace_validates(self):
        """Test replace() returns a validated copy."""
        params = GestureParams(k=2000, d=0.5, scaling="local")
        assert params.replace(k=500).k == 500
        assert params.k == 2000
        with pytest.raises(ParameterError):
            params.replace(d=1.5)

    def test_as_dict_uses_config_names(self):
        """Test as_dict keys match the config vocabulary."""
        data = GestureParams(k=2000, d=0.7, target=1.0, scaling="global", movement_range=10).as_dict()
        assert data == {"k": 2000, "d": 0.7, "T": 1.0, "scaling": "global", "n": 3, "D": 10, "m": 1.0}

    def test_state_must_be_finite(self):
        """Test State rejects non-finite values."""
        with pytest.raises(ParameterError):
            State(x=float("nan"), v=0.0)


class TestForces:
    """Test restoring forces and acceleration."""

    def test_critical_damping_requires_positive_inputs(self):
        """Test critical_damping rejects m <= 0 or k <= 0."""
        with pytest.raises(ParameterError):
            critical_damping(0, 1)
        assert critical_damping(1, 1) == 2.0

    def test_linear_force(self):
        """Test d' = 0 leaves only -k*(x - T)."""
        linear, nonlinear = force_components(np.array([-1.0, 0.5, 2.0]), 0.5, 4.0, 0.0)
        np.testing.assert_allclose(linear, [6.0, 0.0, -6.0])
        np.testing.assert_allclose(nonlinear, 0.0)

    def test_cubic_force_about_target(self):
        """Test the cubic term acts on x - T."""
        assert restoring_force(3.0, 1.0, 1.0, 0.5) == pytest.approx(-2.0 + 0.5 * 8.0)

    def test_odd_power_keeps_sign_for_even_exponents(self):
        """Test dx*|dx|^(n-1) stays odd for n = 2 and equals dx^n for odd n."""
        assert odd_power(-2.0, 2) == -4.0
        assert odd_power(-2.0, 3) == -8.0
        assert odd_power(-2.0, 5) == pytest.approx(-32.0)
        assert odd_power(1.5, 1) == 1.5

    def test_acceleration(self):
        """Test acceleration combines damping, linear and cubic terms."""
        state = State(x=1.0, v=-2.0)
        a = acceleration(state, target=0.0, k=4.0, b=4.0, d_eff=1.0)
        assert a == pytest.approx(8.0 - 4.0 + 1.0)
        assert acceleration(state, 0.0, 4.0, 4.0, 1.0, m=2.0) == pytest.approx(a / 2)

    def test_rhs_matches_acceleration(self):
        """Test the solver right-hand side returns [v, a]."""
        params = GestureParams(k=2000, target=0.2)
        rhs = gesture_rhs(params, d_eff=1900.0)
        dx, dv = rhs(0.0, [1.0, -3.0])
        expected = acceleration(State(1.0, -3.0), 0.2, 2000, params.damping, 1900.0)
        assert dx == -3.0
        assert dv == pytest.approx(expected)

    def test_restoring_force_is_odd_about_target(self):
        """Test F(T + delta) = -F(T - delta) for random gestures."""
        rng = np.random.default_rng(11)
        for _ in range(200):
            k, d_eff = rng.uniform(1, 1e4), rng.uniform(0, 1e4)
            target, delta = rng.uniform(-5, 5), rng.uniform(0, 3)
            above = restoring_force(target + delta, target, k, d_eff)
            below = restoring_force(target - delta, target, k, d_eff)
            assert above == pytest.approx(-below, rel=1e-12, abs=1e-9)

    def test_zero_coefficient_is_the_linear_model(self):
        """Test d' = 0 gives exactly (-b*v - k*(x - T)) / m over random draws."""
        rng = np.random.default_rng(3)
        for _ in range(1000):
            x, v, target = rng.uniform(-10, 10, 3)
            k, m = rng.uniform(1, 1e4), rng.uniform(0.1, 10)
            b = critical_damping(m, k)
            n = int(rng.integers(1, 6))
            linear = (-b * v - k * (x - target)) / m
            assert acceleration(State(x, v), target, k, b, 0.0, m=m, n=n) == linear

    def test_force_roots(self):
        """Test the summed cubic force vanishes at T and T +/- sqrt(k/d')."""
        roots = force_roots(1.0, 0.95)
        assert roots[1] == 0.0
        assert roots[2] == pytest.approx(1.0 / math.sqrt(0.95))
        assert roots[0] == pytest.approx(-roots[2])
        for root in roots:
            assert restoring_force(root, 0.0, 1.0, 0.95) == pytest.approx(0.0, abs=1e-12)
        assert force_roots(1.0, 0.0, target=2.0) == (2.0,)


class TestForceProfile:
    """Test force sampling over a position range."""

    def test_profile_columns(self):
        """Test the profile grid and its summed force."""
        profile = force_profile(GestureParams(k=1, d=0.95), -1.5, 1.5, 301)
        assert profile.x.size == 301
        assert profile.x[0] == -1.5 and profile.x[-1] == 1.5
        np.testing.assert_allclose(profile.total, profile.linear + profile.nonlinear)
        assert profile.coefficient.value == pytest.approx(0.95)

    def test_sum_crosses_zero_at_basin_edges(self):
        """Test sign changes of the summed force at 0 and about +/-1.026."""
        profile = force_profile(GestureParams(k=1, d=0.95), -1.5, 1.5, 3001)
        signs = np.sign(profile.total)
        crossings = profile.x[1:][np.diff(signs) != 0]
        edge = 1 / math.sqrt(0.95)
        assert any(abs(c - edge) < 2e-3 for c in crossings)
        assert any(abs(c + edge) < 2e-3 for c in crossings)

    def test_local_profile_needs_initial_position(self):
        """Test local scaling refuses to guess |x0 - T|."""
        params = GestureParams(k=1, d=0.95, scaling="local")
        with pytest.raises(ParameterError, match="initial position"):
            force_profile(params, -10, 10, 11)
        profile = force_profile(params, -10, 10, 11, x0=10.0)
        assert profile.coefficient.value == pytest.approx(0.95 / 100)

    def test_invalid_range(self):
        """Test reversed ranges and too few points are rejected."""
        with pytest.raises(ParameterError):
            force_profile(GestureParams(k=1), 1.0, -1.0, 10)
        with pytest.raises(ParameterError):
            force_profile(GestureParams(k=1), -1.0, 1.0, 1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
