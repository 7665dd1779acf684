"""Experiment configuration and its flat ``key = value`` file format.

Grammar, one entry per line::

    # comment
    method = moussa        # tomography | moussa | direct | analytic
    b0 = 4
    steps = 11
    dim = 4
    theta = 3.141592653589793
    norm = fourLevel       # unit | fourLevel
    eta = 0                # a single value, a comma list, or start:stop:step
    trials = 1000
    seed = 20150101
    out = fcf.csv
    deterministic = true

Blank lines and text after ``#`` are ignored; unknown keys are errors.
"""

import math
from dataclasses import dataclass, fields

from fcfsim._checks import FcfSimError
from fcfsim.noise import DEFAULT_SEED, DEFAULT_TRIALS

METHODS = ("tomography", "moussa", "direct", "analytic")
NORM_MODES = ("unit", "fourLevel")

METHOD_DEFAULTS = {
    "tomography": {"b0": 3.0, "steps": 11, "dim": 8},
    "moussa": {"b0": 4.0, "steps": 11, "dim": 4},
    "direct": {"b0": 3.0, "steps": 11, "dim": 8},
    "analytic": {"b0": 3.0, "steps": 11, "dim": 8},
}


class ConfigError(FcfSimError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    method: str = "tomography"
    b0: float = 3.0
    steps: int = 11
    dim: int = 8
    theta: float = math.pi
    norm: str = "unit"
    eta: tuple = (0.0,)
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    out: str = "-"
    deterministic: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.norm not in NORM_MODES:
            raise ConfigError(f"norm must be one of {NORM_MODES}, got {self.norm!r}")
        if not self.eta:
            raise ConfigError("eta grid is empty")
        if any(e < 0 or not math.isfinite(e) for e in self.eta):
            raise ConfigError(f"eta values must be finite and >= 0, got {self.eta}")


def parse_eta(text):
    """``"0.1"``, ``"0,0.5,1"`` or ``"0:1:0.1"`` (inclusive stop) into a tuple."""
    text = str(text).strip()
    if not text:
        return ()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ConfigError("eta step must be positive")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(float(round(start + i * step, 12)) for i in range(max(count, 0)))
    return tuple(float(p) for p in text.split(",") if p.strip())


def _parse_bool(text):
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


_CONVERTERS = {
    "method": str,
    "b0": float,
    "steps": int,
    "dim": int,
    "theta": float,
    "norm": str,
    "eta": parse_eta,
    "trials": int,
    "seed": int,
    "out": str,
    "deterministic": _parse_bool,
}


def convert(key, value):
    if key not in _CONVERTERS:
        raise ConfigError(f"unknown config key {key!r}")
    try:
        return _CONVERTERS[key](value)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {value!r}") from exc


def read_config_file(path):
    """Parse a flat key-value file into a dict of converted values."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            values[key.strip()] = convert(key.strip(), value.strip())
    return values


def build_config(file_values=None, overrides=None):
    """Method defaults, then file values, then command-line overrides."""
    merged = dict(file_values or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    method = merged.get("method", ExperimentConfig.method)
    base = dict(METHOD_DEFAULTS.get(method, {}))
    base.update(merged)
    names = {f.name for f in fields(ExperimentConfig)}
    unknown = set(base) - names
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    return ExperimentConfig(**base)

