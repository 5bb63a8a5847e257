"""Deterministic downlink budget: transmit power, path gain and noise power."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0


class LinkBudgetError(ValueError):
    pass


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def linear_to_db(lin):
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(lin)


@dataclass(frozen=True)
class LinkBudget:
    """Per-beam link constants.

    tx_psd_dbw_per_mhz is the transmit power spectral density of one beam;
    extra_loss_db lumps scintillation, atmospheric loss and shadowing margin.
    """

    tx_psd_dbw_per_mhz: float = 4.0
    bandwidth_hz: float = 30e6
    carrier_hz: float = 2e9
    noise_psd_dbm_per_hz: float = -167.0
    rx_gain_dbi: float = 0.0
    extra_loss_db: float = 5.3

    def __post_init__(self):
        if not self.bandwidth_hz > 0:
            raise LinkBudgetError(f"bandwidth_hz must be > 0, got {self.bandwidth_hz!r}")
        if not self.carrier_hz > 0:
            raise LinkBudgetError(f"carrier_hz must be > 0, got {self.carrier_hz!r}")

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_hz


def tx_power_w(lb: LinkBudget) -> float:
    return 10.0 ** (lb.tx_psd_dbw_per_mhz / 10.0) * (lb.bandwidth_hz / 1e6)


def noise_power_w(lb: LinkBudget) -> float:
    return 10.0 ** ((lb.noise_psd_dbm_per_hz - 30.0) / 10.0) * lb.bandwidth_hz


def fspl_db(distance_m, lb: LinkBudget):
    d = np.asarray(distance_m, dtype=float)
    return 20.0 * np.log10(4.0 * math.pi * d / lb.wavelength_m)


def path_gain_linear(distance_m, lb: LinkBudget):
    """Free-space gain (lambda / 4 pi d)^2 reduced by the fixed extra loss."""
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0) or np.any(~np.isfinite(d)):
        raise LinkBudgetError("distance must be finite and > 0")
    g = (lb.wavelength_m / (4.0 * math.pi * d)) ** 2 * 10.0 ** (-lb.extra_loss_db / 10.0)
    return float(g) if d.ndim == 0 else g
