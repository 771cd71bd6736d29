"""
Run configuration for the gesturedyn CLI.

A run configuration is a JSON or YAML document with the sections below.
Every key is optional; missing keys take the defaults shown. Values from
``--set section.key=value`` flags win over the file.

    model:    {k, d, scaling, n, D, m}
    sim:      {x0, v0, T, t_end, dt_out, rtol, atol, guard}
    output:   {format: csv|json, path}
    sweep:    {parameter: k|T|d|x0, values: [...], range: {start, stop, num, spacing}}
    forces:   {x_min, x_max, n_points, x0}
    powerlaw: {k_min, k_max, k_num, d: [...]}
    fit:      {free: [k, d, T], initial: {...}, bounds: {...}, velocity_weight, max_iterations}
"""

import copy
import json
import logging
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import yaml

from gesturedyn.analysis.sweeps import SweepParameter, linear_spaced, log_spaced
from gesturedyn.common.constants import (
    DEFAULT_ATOL,
    DEFAULT_DT_OUT,
    DEFAULT_EXPONENT,
    DEFAULT_MASS,
    DEFAULT_RTOL,
    DEFAULT_STIFFNESS,
    FIT_MAX_ITERATIONS,
    RATIO_FAMILY,
    STIFFNESS_GRID,
)
from gesturedyn.common.errors import ConfigError, GestureDynError
from gesturedyn.dynamics.model import GestureParams
from gesturedyn.dynamics.solver import SimConfig

logger = logging.getLogger(__name__)

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "model": {
        "k": DEFAULT_STIFFNESS,
        "d": 0.95,
        "scaling": "proportional",
        "n": DEFAULT_EXPONENT,
        "D": None,
        "m": DEFAULT_MASS,
    },
    "sim": {
        "x0": 1.0,
        "v0": 0.0,
        "T": 0.0,
        "t_end": None,
        "dt_out": DEFAULT_DT_OUT,
        "rtol": DEFAULT_RTOL,
        "atol": DEFAULT_ATOL,
        "guard": None,
    },
    "output": {
        "format": "csv",
        "path": ".",
    },
    "sweep": {
        "parameter": "k",
        "values": None,
        "range": None,
    },
    "forces": {
        "x_min": -1.5,
        "x_max": 1.5,
        "n_points": 301,
        "x0": None,
    },
    "powerlaw": {
        "k_min": STIFFNESS_GRID[0],
        "k_max": STIFFNESS_GRID[1],
        "k_num": STIFFNESS_GRID[2],
        "d": list(RATIO_FAMILY),
    },
    "fit": {
        "free": ["k", "d"],
        "initial": {},
        "bounds": {},
        "velocity_weight": 0.0,
        "max_iterations": FIT_MAX_ITERATIONS,
    },
}

# Keys allowed inside nested mappings
NESTED_KEYS = {
    ("sweep", "range"): ("start", "stop", "num", "spacing"),
    ("fit", "initial"): ("k", "d", "T"),
    ("fit", "bounds"): ("k", "d", "T"),
}

OUTPUT_FORMATS = ("csv", "json")
SWEEP_SPACINGS = ("linear", "log")


def _find_line(text: str, key: str) -> Optional[int]:
    """Best-effort line number of a key in the raw document."""
    pattern = re.compile(rf"""(^|[\s{{,])["']?{re.escape(key)}["']?\s*:""")
    for number, line in enumerate(text.splitlines(), start=1):
        if pattern.search(line):
            return number
    return None


def parse_document(path) -> Tuple[Dict[str, Any], str]:
    """Parse a JSON or YAML config file.

    Returns:
        (document, raw text)

    Raises:
        ConfigError: On syntax errors (with line number) or a non-mapping document
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    suffix = path.suffix.lower()

    if suffix == ".json":
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(str(path), e.msg, line=e.lineno)
    elif suffix in (".yaml", ".yml"):
        try:
            document = yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            line = mark.line + 1 if mark is not None else None
            raise ConfigError(str(path), getattr(e, "problem", None) or str(e), line=line)
    else:
        raise ConfigError(str(path), f"unsupported file type '{suffix}' (use .json, .yaml or .yml)")

    if document is None:
        document = {}
    if not isinstance(document, dict):
        raise ConfigError(str(path), "the top level must be a mapping of sections", line=1)
    return document, text


def merge_document(base: Dict[str, Any], document: Dict[str, Any], source: str, text: str = ""):
    """Merge a parsed document into ``base``, rejecting unknown sections and keys."""
    for section, values in document.items():
        if section not in DEFAULTS:
            raise ConfigError(
                source,
                f"unknown section '{section}' (expected one of {', '.join(DEFAULTS)})",
                line=_find_line(text, section),
            )
        if values is None:
            continue
        if not isinstance(values, dict):
            raise ConfigError(source, f"section '{section}' must be a mapping", line=_find_line(text, section))
        for key, value in values.items():
            if key not in DEFAULTS[section]:
                raise ConfigError(
                    source,
                    f"unknown key '{section}.{key}' (expected one of {', '.join(DEFAULTS[section])})",
                    line=_find_line(text, key),
                )
            _check_nested(section, key, value, source, text)
            base[section][key] = value


def _check_nested(section: str, key: str, value: Any, source: str, text: str = ""):
    allowed = NESTED_KEYS.get((section, key))
    if allowed is None or value is None:
        return
    if not isinstance(value, dict):
        raise ConfigError(source, f"'{section}.{key}' must be a mapping", line=_find_line(text, key))
    for nested in value:
        if nested not in allowed:
            raise ConfigError(
                source,
                f"unknown key '{section}.{key}.{nested}' (expected one of {', '.join(allowed)})",
                line=_find_line(text, str(nested)),
            )


def _resolve_override_path(key: str) -> List[str]:
    parts = key.split(".")
    if len(parts) > 1:
        return parts
    owners = [section for section, keys in DEFAULTS.items() if key in keys]
    if len(owners) == 1:
        return [owners[0], key]
    if not owners:
        raise ConfigError("--set", f"unknown key '{key}'")
    raise ConfigError("--set", f"key '{key}' is ambiguous; use one of {', '.join(f'{s}.{key}' for s in owners)}")


def apply_override(document: Dict[str, Any], override: str):
    """Apply one ``section.key=value`` override; the value is parsed as a YAML scalar."""
    key, sep, raw = override.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigError("--set", f"expected KEY=VALUE (got '{override}')")
    try:
        value = yaml.safe_load(raw) if raw.strip() else None
    except yaml.YAMLError:
        raise ConfigError("--set", f"cannot parse value of '{key}': {raw}")

    parts = _resolve_override_path(key)
    section = parts[0]
    if section not in DEFAULTS:
        raise ConfigError("--set", f"unknown section '{section}' in '{key}'")
    if parts[1] not in DEFAULTS[section]:
        raise ConfigError("--set", f"unknown key '{section}.{parts[1]}'")

    if len(parts) == 2:
        _check_nested(section, parts[1], value, "--set")
        document[section][parts[1]] = value
    elif len(parts) == 3 and (section, parts[1]) in NESTED_KEYS:
        allowed = NESTED_KEYS[(section, parts[1])]
        if parts[2] not in allowed:
            raise ConfigError("--set", f"unknown key '{key}' (expected one of {', '.join(allowed)})")
        nested = document[section][parts[1]]
        nested = dict(nested) if isinstance(nested, dict) else {}
        nested[parts[2]] = value
        document[section][parts[1]] = nested
    else:
        raise ConfigError("--set", f"unknown key '{key}'")


@dataclass
class RunConfig:
    """Merged, validated run configuration.

    Attributes:
        document: Section -> key -> value after defaults, file and overrides
        source: Where the document came from (for error messages)
    """

    document: Dict[str, Dict[str, Any]] = field(default_factory=lambda: copy.deepcopy(DEFAULTS))
    source: str = "defaults"

    def section(self, name: str) -> Dict[str, Any]:
        return self.document[name]

    def as_number(self, label: str, value: Any) -> float:
        # YAML 1.1 reads exponent floats without a dot (1e-8) as strings
        if isinstance(value, str):
            try:
                return float(value)
            except ValueError:
                pass
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(self.source, f"'{label}' must be a number (got {value!r})")
        return value

    def number(self, section: str, key: str, optional: bool = False) -> Optional[float]:
        value = self.document[section][key]
        if value is None and optional:
            return None
        return self.as_number(f"{section}.{key}", value)

    def integer(self, section: str, key: str) -> int:
        return self.as_integer(f"{section}.{key}", self.document[section][key])

    def as_integer(self, label: str, value: Any) -> int:
        number = self.as_number(label, value)
        if not math.isfinite(number) or int(number) != number:
            raise ConfigError(self.source, f"'{label}' must be an integer (got {value!r})")
        return int(number)

    def number_list(self, section: str, key: str) -> List[float]:
        values = self.document[section][key]
        if not isinstance(values, (list, tuple)):
            values = [values]
        return [float(self.as_number(f"{section}.{key}", value)) for value in values]

    def validated(self, build):
        """Run build(), reporting library parameter errors as config errors."""
        try:
            return build()
        except ConfigError:
            raise
        except GestureDynError as e:
            raise ConfigError(self.source, e.message)

    def params(self):
        """GestureParams from the model section and sim.T."""
        return self.validated(lambda: GestureParams(
            k=self.number("model", "k"),
            d=self.number("model", "d"),
            target=self.number("sim", "T"),
            scaling=self.document["model"]["scaling"],
            n=self.number("model", "n"),
            movement_range=self.number("model", "D", optional=True),
            m=self.number("model", "m"),
        ))

    def sim_config(self):
        """SimConfig from the sim section."""
        return self.validated(lambda: SimConfig(
            x0=self.number("sim", "x0"),
            v0=self.number("sim", "v0"),
            t_end=self.number("sim", "t_end", optional=True),
            dt_out=self.number("sim", "dt_out"),
            rtol=self.number("sim", "rtol"),
            atol=self.number("sim", "atol"),
            guard=self.number("sim", "guard", optional=True),
        ))

    @property
    def output_format(self) -> str:
        value = self.document["output"]["format"]
        if value not in OUTPUT_FORMATS:
            raise ConfigError(self.source, f"output.format must be one of {', '.join(OUTPUT_FORMATS)} (got {value!r})")
        return value

    @property
    def output_path(self) -> Path:
        return Path(str(self.document["output"]["path"]))

    @property
    def sweep_parameter(self):
        value = self.document["sweep"]["parameter"]
        try:
            return SweepParameter(value)
        except ValueError:
            choices = ", ".join(p.value for p in SweepParameter)
            raise ConfigError(self.source, f"sweep.parameter must be one of {choices} (got {value!r})")

    def sweep_values(self) -> List[float]:
        """Sweep values from sweep.values or sweep.range; exactly one must be given."""
        sweep = self.document["sweep"]
        if sweep["values"] is not None and sweep["range"] is not None:
            raise ConfigError(self.source, "give either sweep.values or sweep.range, not both")
        if sweep["values"] is not None:
            values = self.number_list("sweep", "values")
        elif sweep["range"] is not None:
            spec = sweep["range"]
            missing = [key for key in ("start", "stop", "num") if key not in spec]
            if missing:
                raise ConfigError(self.source, f"sweep.range needs {', '.join(missing)}")
            spacing = spec.get("spacing", "linear")
            if spacing not in SWEEP_SPACINGS:
                raise ConfigError(self.source, f"sweep.range.spacing must be linear or log (got {spacing!r})")
            grid = log_spaced if spacing == "log" else linear_spaced
            start = float(self.as_number("sweep.range.start", spec["start"]))
            stop = float(self.as_number("sweep.range.stop", spec["stop"]))
            num = self.as_integer("sweep.range.num", spec["num"])
            values = self.validated(lambda: grid(start, stop, num))
            values = [float(value) for value in values]
        else:
            values = []

        if not values:
            raise ConfigError(self.source, "the sweep has no values")
        return values

    def validate(self):
        """Check the sections every command depends on."""
        self.params()
        self.sim_config()
        self.output_format
        return self


def load_config(path=None, overrides: Sequence[str] = ()) -> RunConfig:
    """Load defaults, an optional config file and ``--set`` overrides.

    Raises:
        ConfigError: On parse errors, unknown keys or invalid values
    """
    document = copy.deepcopy(DEFAULTS)
    source = "defaults"
    if path is not None:
        parsed, text = parse_document(path)
        source = str(path)
        merge_document(document, parsed, source, text)
        logger.debug("Loaded config from %s", path)

    for override in overrides:
        apply_override(document, override)
        logger.debug("Override %s", override)

    return RunConfig(document=document, source=source).validate()
