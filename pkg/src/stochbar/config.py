"""Experiment configuration: YAML in, fully resolved YAML back out.

A config file only overrides what it names; everything else comes from
``DEFAULTS``. Every runner writes the resolved merge next to its outputs
(``config.resolved.yaml``) so a run can be reproduced from its artifacts
alone. Unknown keys fail fast: silent typos in experiment configs are how
results go wrong quietly.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

import yaml

from .errors import ConfigError

DEFAULTS: dict[str, Any] = {
    "seed": 0,
    "out_dir": "runs/out",
    "threads": 1,  # 0 = one worker per CPU
    "data": {
        "dir": "runs/data",
        "train_images": None,  # explicit paths override dir-based names
        "train_labels": None,
        "test_images": None,
        "test_labels": None,
        "synthetic": {"enabled": True, "n_train": 6000, "n_test": 2000},
    },
    "network": {
        "dims": [784, 64, 32, 10],
        "v_read_v": 0.05,
        "g_min_s": 1.0e-6,
        "g_max_s": 3.0e-6,
        "w_min": -1.0,
        "w_max": 1.0,
        "temperature_k": 300.0,
        "hidden_lambda": 1.702,
        "output_lambda": 0.3,
        "v_th0": 0.05,
        "v_supply": 12.0,
        "max_steps": 1000,
        "threshold_jitter": 1.0,
    },
    "train": {
        "epochs": 10,
        "learning_rate": 0.8,
        "batch_size": 64,
        "weight_clip": None,
        "archive": "runs/weights.npz",
    },
    "sweep": {
        # axis semantics: v_read values are volts; bandwidth and g0_scale
        # values are multipliers on the calibrated base point; n_col values
        # are device counts per column (must cover max |logit|)
        "axis": "v_read",
        "values": [0.05, 0.1, 0.2],
        "n_col": 8,
        "logit_lo": -6.0,
        "logit_hi": 6.0,
        "logit_count": 13,
        "trials": 10000,
        "base_lambda": 1.702,
    },
    "wta": {
        "n_neurons": 10,
        "decisions": 200,
        "logits": None,  # explicit list; None draws uniform from logit_range
        "logit_range": 3.0,
        "lambda_out": 0.3,
        "v_th0": 6.0,
        "v_supply": 12.0,
        "max_steps": 1000,
        "threshold_jitter": 1.0,
    },
    "accuracy": {
        "trial_grid": [1, 2, 4, 8, 16, 32, 64, 128, 256],
        "v_th0_values": [0.05, 0.0],
        "hidden_lambdas": [1.702],
        "n_images": 1000,
    },
    "cost": {
        "n_images": 4,
        "trials": 8,
        "energies": {
            "dac_pj": 0.0,
            "mac_pj": 0.0,
            "comparator_pj": 0.0,
            "adc_pj": 0.0,
        },
    },
}

SWEEP_AXES = ("v_read", "g0_scale", "bandwidth", "n_col")


def _merge(base: dict, override: Mapping, path: str) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        here = f"{path}.{key}" if path else str(key)
        if key not in base:
            raise ConfigError(f"unknown config key: {here}")
        if isinstance(base[key], dict):
            if not isinstance(value, Mapping):
                raise ConfigError(f"{here} must be a mapping, got {type(value).__name__}")
            out[key] = _merge(base[key], value, here)
        else:
            out[key] = copy.deepcopy(value)
    return out


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved configuration tree (defaults merged with overrides)."""

    raw: dict[str, Any]

    @property
    def seed(self) -> int:
        return int(self.raw["seed"])

    @property
    def out_dir(self) -> Path:
        return Path(self.raw["out_dir"])

    @property
    def threads(self) -> int:
        return int(self.raw["threads"])

    def section(self, name: str) -> dict[str, Any]:
        return self.raw[name]

    def resolved_yaml(self) -> str:
        return yaml.safe_dump(self.raw, sort_keys=True, default_flow_style=False)

    def write_resolved(self, out_dir: str | Path) -> Path:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        target = out / "config.resolved.yaml"
        target.write_text(self.resolved_yaml(), encoding="utf-8")
        return target


def _validate(raw: dict[str, Any]) -> None:
    if raw["seed"] < 0:
        raise ConfigError(f"seed must be non-negative, got {raw['seed']}")
    if raw["threads"] < 0:
        raise ConfigError(f"threads must be >= 0, got {raw['threads']}")
    net = raw["network"]
    dims = net["dims"]
    if not isinstance(dims, (list, tuple)) or len(dims) < 2:
        raise ConfigError(f"network.dims must list at least two widths, got {dims!r}")
    if any((not isinstance(d, int)) or d < 1 for d in dims):
        raise ConfigError(f"network.dims must be positive integers, got {dims!r}")
    sweep = raw["sweep"]
    if sweep["axis"] not in SWEEP_AXES:
        raise ConfigError(f"sweep.axis must be one of {SWEEP_AXES}, got {sweep['axis']!r}")
    if not sweep["values"]:
        raise ConfigError("sweep.values must not be empty")
    if int(sweep["trials"]) < 1:
        raise ConfigError(f"sweep.trials must be >= 1, got {sweep['trials']}")
    if int(sweep["logit_count"]) < 2:
        raise ConfigError("sweep.logit_count must be >= 2")
    wta = raw["wta"]
    if int(wta["n_neurons"]) < 2:
        raise ConfigError(f"wta.n_neurons must be >= 2, got {wta['n_neurons']}")
    if int(wta["decisions"]) < 1:
        raise ConfigError("wta.decisions must be >= 1")
    if wta["logits"] is not None and len(wta["logits"]) != int(wta["n_neurons"]):
        raise ConfigError(
            f"wta.logits lists {len(wta['logits'])} values for {wta['n_neurons']} neurons"
        )
    acc = raw["accuracy"]
    grid = acc["trial_grid"]
    if not grid or any((not isinstance(n, int)) or n < 1 for n in grid):
        raise ConfigError(f"accuracy.trial_grid must be positive integers, got {grid!r}")
    if list(grid) != sorted(grid):
        raise ConfigError("accuracy.trial_grid must be sorted ascending")
    if int(acc["n_images"]) < 1:
        raise ConfigError("accuracy.n_images must be >= 1")
    if not acc["v_th0_values"]:
        raise ConfigError("accuracy.v_th0_values must not be empty")
    if not acc["hidden_lambdas"]:
        raise ConfigError("accuracy.hidden_lambdas must not be empty")
    cost = raw["cost"]
    if int(cost["n_images"]) < 1 or int(cost["trials"]) < 1:
        raise ConfigError("cost.n_images and cost.trials must be >= 1")
    for key, val in cost["energies"].items():
        if float(val) < 0:
            raise ConfigError(f"cost.energies.{key} must be >= 0, got {val}")


def load_config(
    path: str | Path | None = None, overrides: Mapping[str, Any] | None = None
) -> ExperimentConfig:
    """Build the resolved config from an optional YAML file plus explicit
    overrides (CLI flags). Raises :class:`ConfigError` on unknown keys,
    unparseable YAML, or out-of-range values.
    """
    raw = copy.deepcopy(DEFAULTS)
    if path is not None:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            loaded = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, Mapping):
            raise ConfigError(f"{path}: top level must be a mapping")
        raw = _merge(raw, loaded, "")
    if overrides:
        raw = _merge(raw, overrides, "")
    _validate(raw)
    return ExperimentConfig(raw=raw)
