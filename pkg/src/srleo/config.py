"""Versioned JSON run configuration.

Every physical quantity carries its unit in the key name.  Unknown keys are
rejected so typos fail loudly instead of silently using a default.
"""
from __future__ import annotations

import copy
import json
from pathlib import Path

from .geometry import AntennaPattern
from .linkbudget import LinkBudget
from .montecarlo import SHADOWING_CHOICES, Scenario

CONFIG_VERSION = 1

DEFAULTS = {
    "version": CONFIG_VERSION,
    "geometry": {
        "altitude_m": 500e3,
        "n_rings": 2,
        "cell_radius_m": 12.6e3,
        "elevations_deg": [90.0, 60.0, 45.0],
    },
    "antenna": {
        "radius_wavelengths": 10.0,
        "peak_gain_db": 30.0,
    },
    "link": {
        "tx_psd_dbw_per_mhz": 4.0,
        "bandwidth_hz": 30e6,
        "carrier_hz": 2e9,
        "noise_psd_dbm_per_hz": -167.0,
        "rx_gain_dbi": 0.0,
        "extra_loss_db": 5.3,
    },
    "channel": {
        "shadowing": list(SHADOWING_CHOICES),
    },
    "simulation": {
        "users": 100_000,
        "seed": 0,
        "threads": 1,
        "block_size": 8192,
        "heatmap_spacing_m": 500.0,
    },
    "output": {
        "dir": "out",
        "plot": False,
    },
}

_INT_KEYS = {"n_rings", "users", "seed", "threads", "block_size", "version"}


class ConfigError(ValueError):
    pass


def default_config() -> dict:
    return copy.deepcopy(DEFAULTS)


def _merge(base: dict, override: dict, path: str) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        where = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigError(f"unknown config key {where!r}")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"{where!r} must be a table")
            out[key] = _merge(base[key], value, where)
        else:
            out[key] = value
    return out


def validate(cfg: dict) -> dict:
    cfg = _merge(DEFAULTS, cfg, "")
    if cfg["version"] != CONFIG_VERSION:
        raise ConfigError(f"unsupported config version {cfg['version']!r}; expected {CONFIG_VERSION}")
    for section, table in cfg.items():
        if not isinstance(table, dict):
            continue
        for key, value in table.items():
            where = f"{section}.{key}"
            if key in _INT_KEYS and (isinstance(value, bool) or not isinstance(value, int)):
                raise ConfigError(f"{where!r} must be an integer")
    sh = cfg["channel"]["shadowing"]
    if isinstance(sh, str):
        cfg["channel"]["shadowing"] = sh = [sh]
    bad = [s for s in sh if s not in SHADOWING_CHOICES]
    if bad:
        raise ConfigError(f"'channel.shadowing' entries must be in {SHADOWING_CHOICES}, got {bad}")
    elev = cfg["geometry"]["elevations_deg"]
    if isinstance(elev, (int, float)):
        cfg["geometry"]["elevations_deg"] = elev = [float(elev)]
    if not elev:
        raise ConfigError("'geometry.elevations_deg' must not be empty")
    # build once so domain errors surface with the config field named
    try:
        scenarios(cfg)
    except ValueError as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc
    return cfg


def load(path) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    return validate(raw)


def dumps(cfg: dict) -> str:
    return json.dumps(cfg, indent=2, sort_keys=True) + "\n"


def dump(cfg: dict, path) -> None:
    Path(path).write_text(dumps(cfg))


def scenario(cfg: dict, elevation_deg: float, shadowing: str) -> Scenario:
    geo, sim = cfg["geometry"], cfg["simulation"]
    return Scenario(
        altitude_m=float(geo["altitude_m"]),
        elevation_deg=float(elevation_deg),
        n_rings=geo["n_rings"],
        cell_radius_m=float(geo["cell_radius_m"]),
        antenna=AntennaPattern(**cfg["antenna"]),
        link=LinkBudget(**cfg["link"]),
        shadowing=shadowing,
        users=sim["users"],
        seed=sim["seed"],
        threads=sim["threads"],
        block_size=sim["block_size"],
        heatmap_spacing_m=float(sim["heatmap_spacing_m"]),
    )


def scenarios(cfg: dict):
    out = []
    for elev in cfg["geometry"]["elevations_deg"]:
        for sh in cfg["channel"]["shadowing"]:
            sc = scenario(cfg, elev, sh)
            sc.layout()
            out.append(sc)
    return out
