"""
Tests for run configuration loading, merging and --set overrides.
"""

import pytest

from gesturedyn.analysis.sweeps import SweepParameter
from gesturedyn.cli.config import DEFAULTS, RunConfig, apply_override, load_config, parse_document
from gesturedyn.common.errors import ConfigError
from gesturedyn.dynamics.scaling import ScalingMode

SAMPLE_YAML = """\
model:
  k: 4000
  scaling: global
  D: 8
sim:
  x0: 10
  T: 2
  rtol: 1e-6
"""

SAMPLE_JSON = """{
  "model": {"k": 500, "d": 0},
  "output": {"format": "json"}
}
"""


@pytest.fixture
def yaml_file(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text(SAMPLE_YAML)
    return path


class TestDefaults:
    """Test the configuration without a file."""

    def test_defaults(self):
        """Test the reference gesture: k = 2000, d = 0.95, proportional, x0 = 1."""
        config = load_config()
        params = config.params()
        assert params.k == 2000.0
        assert params.d == 0.95
        assert params.scaling is ScalingMode.PROPORTIONAL
        assert config.sim_config().x0 == 1.0
        assert config.output_format == "csv"
        assert config.source == "defaults"

    def test_defaults_not_shared(self):
        """Test overrides never leak into the module defaults."""
        load_config(overrides=["model.k=1"])
        assert DEFAULTS["model"]["k"] == 2000.0


class TestFiles:
    """Test JSON and YAML config files."""

    def test_yaml(self, yaml_file):
        """Test YAML values reach the parameters, including exponent floats."""
        config = load_config(yaml_file)
        params = config.params()
        assert params.k == 4000
        assert params.scaling is ScalingMode.GLOBAL
        assert params.movement_range == 8
        assert params.target == 2
        assert config.sim_config().rtol == 1e-6
        assert config.source == str(yaml_file)

    def test_json(self, tmp_path):
        """Test JSON files load the same way."""
        path = tmp_path / "run.json"
        path.write_text(SAMPLE_JSON)
        config = load_config(path)
        assert config.params().d == 0.0
        assert config.output_format == "json"

    def test_malformed_json_reports_line(self, tmp_path):
        """Test a JSON syntax error names the line."""
        path = tmp_path / "bad.json"
        path.write_text('{\n  "model": {"k": 500,}\n}\n')
        with pytest.raises(ConfigError) as excinfo:
            load_config(path)
        assert excinfo.value.line == 2
        assert "bad.json:2" in excinfo.value.message

    def test_malformed_yaml_reports_line(self, tmp_path):
        """Test a YAML syntax error names the line."""
        path = tmp_path / "bad.yaml"
        path.write_text("model:\n  k: 4000\n  d: [0.5\n")
        with pytest.raises(ConfigError) as excinfo:
            load_config(path)
        assert excinfo.value.line is not None

    def test_unknown_key_reports_line(self, tmp_path):
        """Test an unknown key is rejected with its line."""
        path = tmp_path / "run.yaml"
        path.write_text("model:\n  k: 4000\n  stiffness: 10\n")
        with pytest.raises(ConfigError, match="model.stiffness") as excinfo:
            load_config(path)
        assert excinfo.value.line == 3

    def test_unknown_section(self, tmp_path):
        """Test an unknown section is rejected."""
        path = tmp_path / "run.yaml"
        path.write_text("solver:\n  rtol: 1e-6\n")
        with pytest.raises(ConfigError, match="unknown section 'solver'"):
            load_config(path)

    def test_unsupported_suffix(self, tmp_path):
        """Test files other than .json/.yaml/.yml are rejected."""
        path = tmp_path / "run.toml"
        path.write_text("[model]\nk = 1\n")
        with pytest.raises(ConfigError, match="unsupported"):
            parse_document(path)

    def test_top_level_must_be_mapping(self, tmp_path):
        """Test a list document is rejected."""
        path = tmp_path / "run.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError, match="mapping"):
            load_config(path)

    def test_empty_file_uses_defaults(self, tmp_path):
        """Test an empty YAML file is the default configuration."""
        path = tmp_path / "run.yaml"
        path.write_text("")
        assert load_config(path).params().k == 2000.0

    def test_invalid_value_is_config_error(self, tmp_path):
        """Test model invariants surface as configuration errors."""
        path = tmp_path / "run.yaml"
        path.write_text("model:\n  scaling: local\n  d: 1.2\n")
        with pytest.raises(ConfigError, match="0 <= d < 1"):
            load_config(path)


class TestOverrides:
    """Test --set overrides."""

    def test_override_wins_over_file(self, yaml_file):
        """Test --set replaces file values."""
        config = load_config(yaml_file, ["model.k=1000", "sim.x0=5"])
        assert config.params().k == 1000
        assert config.sim_config().x0 == 5

    def test_bare_key(self):
        """Test a unique bare key resolves to its section."""
        assert load_config(overrides=["scaling=local"]).params().scaling is ScalingMode.LOCAL

    @pytest.mark.parametrize("key", ["d", "x0"])
    def test_ambiguous_bare_key(self, key):
        """Test keys that exist in two sections must be qualified."""
        with pytest.raises(ConfigError, match="ambiguous"):
            load_config(overrides=[f"{key}=0.5"])

    def test_yaml_values(self):
        """Test lists, mappings and null parse as YAML."""
        document = {section: dict(values) for section, values in DEFAULTS.items()}
        apply_override(document, "sweep.values=[0, 0.5, 1]")
        apply_override(document, "fit.bounds.k=[100, 9000]")
        apply_override(document, "model.D=null")
        assert document["sweep"]["values"] == [0, 0.5, 1]
        assert document["fit"]["bounds"] == {"k": [100, 9000]}
        assert document["model"]["D"] is None

    @pytest.mark.parametrize(
        "override",
        ["model.k", "=4", "model.stiffness=1", "solver.rtol=1", "fit.initial.b=1", "sim.x0.y=1", "nothing=1"],
    )
    def test_bad_overrides(self, override):
        """Test malformed or unknown overrides are rejected."""
        with pytest.raises(ConfigError):
            load_config(overrides=[override])

    def test_non_numeric_value(self):
        """Test a text value for a number is rejected."""
        with pytest.raises(ConfigError, match="must be a number"):
            load_config(overrides=["model.k=stiff"])

    def test_boolean_is_not_a_number(self):
        """Test YAML booleans are not accepted as numbers."""
        with pytest.raises(ConfigError):
            load_config(overrides=["sim.x0=true"])


class TestSweepValues:
    """Test sweep value resolution."""

    def test_explicit_values(self):
        """Test sweep.values is used as given."""
        config = load_config(overrides=["sweep.parameter=T", "sweep.values=[0, 0.4, 0.8]"])
        assert config.sweep_parameter is SweepParameter.TARGET
        assert config.sweep_values() == [0.0, 0.4, 0.8]

    def test_log_range(self):
        """Test sweep.range with log spacing."""
        config = load_config(overrides=["sweep.range={start: 500, stop: 8000, num: 5, spacing: log}"])
        values = config.sweep_values()
        assert len(values) == 5
        assert values[0] == pytest.approx(500) and values[-1] == pytest.approx(8000)

    def test_empty_sweep(self):
        """Test an empty list or no values at all is rejected."""
        with pytest.raises(ConfigError, match="no values"):
            load_config(overrides=["sweep.values=[]"]).sweep_values()
        with pytest.raises(ConfigError, match="no values"):
            load_config().sweep_values()

    def test_values_and_range_conflict(self):
        """Test values and range cannot both be set."""
        config = load_config(overrides=["sweep.values=[1]", "sweep.range={start: 0, stop: 1, num: 2}"])
        with pytest.raises(ConfigError, match="not both"):
            config.sweep_values()

    def test_incomplete_range(self):
        """Test a range without num is rejected."""
        config = load_config(overrides=["sweep.range={start: 0, stop: 1}"])
        with pytest.raises(ConfigError, match="num"):
            config.sweep_values()

    def test_unknown_parameter(self):
        """Test an unknown sweep parameter is rejected."""
        with pytest.raises(ConfigError, match="sweep.parameter"):
            load_config(overrides=["sweep.parameter=b"]).sweep_parameter

    def test_integer_check(self):
        """Test integer settings refuse fractions."""
        config = RunConfig()
        config.document["powerlaw"]["k_num"] = 2.5
        with pytest.raises(ConfigError, match="integer"):
            config.integer("powerlaw", "k_num")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
