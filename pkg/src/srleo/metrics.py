"""Desired/interference power, SNR, SIR, INR and SINR under a shared channel.

Every beam reaches a given user through the same channel gain ``|h|^2``, so
desired and interference powers are fully correlated scaled copies of it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import AntennaPattern, BeamLayout, combined_gain, off_boresight_angles
from .linkbudget import LinkBudget, db_to_linear, linear_to_db, noise_power_w, path_gain_linear, tx_power_w
from .srfading import IntegerSRParams, SRParams, scale, ssr_cdf_int


class NoInterference(ArithmeticError):
    """Raised where a quantity needs at least one interfering beam."""


@dataclass(frozen=True, eq=False)
class GainProfile:
    """Deterministic per-user gains (transmit pattern x receive gain x path gain).

    Fields are floats for one user or 1-D arrays for many.
    """

    desired_gain: np.ndarray | float
    interference_gain_sum: np.ndarray | float

    @property
    def has_interference(self) -> bool:
        return bool(np.all(np.asarray(self.interference_gain_sum) > 0))


@dataclass(frozen=True, eq=False)
class MetricSample:
    """Realized powers (W) and linear ratios for one or many users.

    ``sir`` is None when there is no interfering beam.
    """

    p_des_w: np.ndarray
    p_int_w: np.ndarray
    noise_w: float
    snr: np.ndarray
    inr: np.ndarray
    sinr: np.ndarray
    sir: np.ndarray | None

    def db(self, name: str):
        value = getattr(self, name)
        if value is None:
            raise NoInterference(f"{name} undefined without interference")
        return linear_to_db(value)


def gain_matrix(users, layout: BeamLayout, pattern: AntennaPattern) -> np.ndarray:
    """Linear transmit gain of every beam toward every user, shape (N, n_beams)."""
    pts = np.atleast_2d(np.asarray(users, dtype=float))
    out = np.empty((len(pts), layout.n_beams))
    for j in range(layout.n_beams):
        theta, phi = off_boresight_angles(pts, j, layout)
        out[:, j] = combined_gain(theta, phi, pattern)
    return out


def gain_profile(user, layout: BeamLayout, pattern: AntennaPattern, lb: LinkBudget, serving_beam=0) -> GainProfile:
    """Desired and summed interference gains seen by ``user`` (one point or (N, 2)).

    ``serving_beam`` is an int or a per-user index array.
    """
    single = np.ndim(user) == 1
    pts = np.atleast_2d(np.asarray(user, dtype=float))
    serving = np.broadcast_to(np.asarray(serving_beam), (len(pts),))
    if np.any(serving < 0) or np.any(serving >= layout.n_beams):
        raise IndexError(f"serving beam out of range 0..{layout.n_beams - 1}")
    tx = gain_matrix(pts, layout, pattern)
    rows = np.arange(len(pts))
    desired = tx[rows, serving]
    mask = np.ones_like(tx, dtype=bool)
    mask[rows, serving] = False
    interference = np.where(mask, tx, 0.0).sum(axis=1)
    link = path_gain_linear(layout.slant_range(pts), lb) * db_to_linear(lb.rx_gain_dbi)
    desired = desired * link
    interference = interference * link
    if single:
        return GainProfile(float(desired[0]), float(interference[0]))
    return GainProfile(desired, interference)


def snr_scale(profile: GainProfile, lb: LinkBudget):
    """Factor mapping |h|^2 to SNR: P_tx * desired_gain / noise power."""
    return tx_power_w(lb) * np.asarray(profile.desired_gain) / noise_power_w(lb)


def snr_distribution(profile: GainProfile, channel: SRParams, lb: LinkBudget) -> SRParams:
    return scale(channel, float(snr_scale(profile, lb)))


def inr_distribution(profile: GainProfile, channel: SRParams, lb: LinkBudget) -> SRParams | None:
    """SSR law of INR, or None when no beam interferes."""
    k = tx_power_w(lb) * float(profile.interference_gain_sum) / noise_power_w(lb)
    if k <= 0:
        return None
    return scale(channel, k)


def sir(profile: GainProfile):
    """Deterministic SIR; raises :class:`NoInterference` for a lone beam."""
    interference = np.asarray(profile.interference_gain_sum)
    if np.any(interference <= 0):
        raise NoInterference("SIR is unbounded without interfering beams")
    out = np.asarray(profile.desired_gain) / interference
    return float(out) if out.ndim == 0 else out


def realize_metrics(profile: GainProfile, lb: LinkBudget, h2) -> MetricSample:
    """Metrics for realized channel gains ``h2`` (shared by all beams of a user)."""
    h2 = np.asarray(h2, dtype=float)
    if np.any(h2 < 0):
        raise ValueError("h2 must be >= 0")
    p_tx = tx_power_w(lb)
    noise = noise_power_w(lb)
    p_des = p_tx * np.asarray(profile.desired_gain) * h2
    p_int = p_tx * np.asarray(profile.interference_gain_sum) * h2
    snr = p_des / noise
    inr = p_int / noise
    sinr = snr / (1.0 + inr)
    ratio = sir(profile) if profile.has_interference else None
    if ratio is not None:
        ratio = np.broadcast_to(ratio, np.shape(snr)).copy()
    return MetricSample(p_des, p_int, noise, snr, inr, sinr, ratio)


def snr_outage(profile: GainProfile, channel_int: IntegerSRParams, lb: LinkBudget, gamma):
    """P(SNR <= gamma) from the closed-form integer-order CDF."""
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma < 0) or np.any(np.isnan(gamma)):
        raise ValueError("gamma must be >= 0")
    arg = gamma / snr_scale(profile, lb)
    out = np.where(np.isinf(arg), 1.0, ssr_cdf_int(np.where(np.isinf(arg), 0.0, arg), channel_int))
    return float(out) if out.ndim == 0 else out
