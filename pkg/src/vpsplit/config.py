"""Run configuration: flat-key JSON files with weak-Landau defaults.

A config file is a single JSON object with dotted flat keys, e.g.

    {"grid.nx": 80, "scheme.tau": 0.0625, "alpha": 0.01}

Missing keys take the default weak-Landau values below; unknown keys are
rejected.  Step sizes given to the command line may be written either as
decimals or as fractions like "1/256".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import ConfigurationError
from .grid import GridSpec
from .splitting import SchemeConfig

__all__ = ["RunConfig", "load_config", "config_from_mapping", "parse_step_size", "DEFAULTS"]

DEFAULTS = {
    "grid.L": 4.0 * math.pi,
    "grid.vmax": 6.0,
    "grid.nx": 80,
    "grid.nv": 80,
    "alpha": 0.01,
    "scheme.method": "strang",
    "scheme.midpoint": "free-stream",
    "scheme.interpolation": "cubic",
    "scheme.tau": 1.0 / 16.0,
    "scheme.t_end": 1.0,
    "output.dir": "vpsplit-out",
    "output.snapshot_cadence": 0,
}

_INT_KEYS = {"grid.nx", "grid.nv", "output.snapshot_cadence"}
_FLOAT_KEYS = {"grid.L", "grid.vmax", "alpha", "scheme.tau", "scheme.t_end"}
_STR_KEYS = {"scheme.method", "scheme.midpoint", "scheme.interpolation", "output.dir"}


@dataclass(frozen=True)
class RunConfig:
    """Grid, perturbation amplitude, scheme, and output policy of one run."""

    grid: GridSpec
    alpha: float
    scheme: SchemeConfig
    out_dir: str
    snapshot_cadence: int

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0):
            raise ConfigurationError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.snapshot_cadence < 0:
            raise ConfigurationError(
                f"snapshot cadence must be >= 0, got {self.snapshot_cadence}"
            )

    def with_scheme(self, **changes) -> "RunConfig":
        return replace(self, scheme=replace(self.scheme, **changes))


def _coerce(key: str, value):
    if key in _INT_KEYS:
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value != int(value):
            raise ConfigurationError(f"{key} must be an integer, got {value!r}")
        return int(value)
    if key in _FLOAT_KEYS:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigurationError(f"{key} must be a number, got {value!r}")
        return float(value)
    if key in _STR_KEYS:
        if not isinstance(value, str):
            raise ConfigurationError(f"{key} must be a string, got {value!r}")
        return value
    raise ConfigurationError(f"unknown configuration key {key!r}")


def config_from_mapping(data: dict) -> RunConfig:
    """Build a validated RunConfig from flat-key JSON data."""
    if not isinstance(data, dict):
        raise ConfigurationError("configuration must be a JSON object with flat keys")
    merged = dict(DEFAULTS)
    for key, value in data.items():
        if key not in DEFAULTS:
            raise ConfigurationError(f"unknown configuration key {key!r}")
        merged[key] = _coerce(key, value)
    grid = GridSpec(
        L=merged["grid.L"],
        vmax=merged["grid.vmax"],
        nx=merged["grid.nx"],
        nv=merged["grid.nv"],
    )
    scheme = SchemeConfig(
        method=merged["scheme.method"],
        midpoint=merged["scheme.midpoint"],
        interpolation=merged["scheme.interpolation"],
        tau=merged["scheme.tau"],
        t_end=merged["scheme.t_end"],
    )
    return RunConfig(
        grid=grid,
        alpha=merged["alpha"],
        scheme=scheme,
        out_dir=merged["output.dir"],
        snapshot_cadence=merged["output.snapshot_cadence"],
    )


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a flat-key JSON configuration file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config file {path} is not valid JSON: {exc}") from exc
    return config_from_mapping(data)


def parse_step_size(text: str) -> float:
    """Parse a step size written as a decimal ('0.0625') or fraction ('1/16')."""
    text = text.strip()
    try:
        if "/" in text:
            num, _, den = text.partition("/")
            value = float(num) / float(den)
        else:
            value = float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"cannot parse step size {text!r}") from exc
    if not (math.isfinite(value) and value > 0):
        raise ConfigurationError(f"step size must be positive, got {text!r}")
    return value
