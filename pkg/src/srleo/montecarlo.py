"""Monte Carlo experiments over ground users: CDFs, heatmaps and quantiles.

Work is split into fixed-size blocks of users (or grid points).  Every block
draws from its own random substream keyed by (seed, purpose, block index), so
results do not depend on how many threads process the blocks.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import AntennaPattern, BeamLayout, build_layout, point_in_hexagon
from .linkbudget import LinkBudget
from .metrics import GainProfile, MetricSample, NoInterference, gain_profile, realize_metrics
from .srfading import PRESETS, sample_ssr

METRICS = ("snr", "sir", "inr", "sinr")
SHADOWING_CHOICES = ("none",) + tuple(PRESETS)

# substream purposes
_PLACEMENT, _FADING, _GRID_FADING, OUTAGE_STREAM = 0, 1, 2, 3


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    altitude_m: float = 500e3
    elevation_deg: float = 90.0
    n_rings: int = 2
    cell_radius_m: float = 12.6e3
    antenna: AntennaPattern = field(default_factory=AntennaPattern)
    link: LinkBudget = field(default_factory=LinkBudget)
    shadowing: str = "none"
    users: int = 100_000
    seed: int = 0
    threads: int = 1
    block_size: int = 8192
    heatmap_spacing_m: float = 500.0

    def __post_init__(self):
        if self.shadowing not in SHADOWING_CHOICES:
            raise ScenarioError(f"shadowing: expected one of {SHADOWING_CHOICES}, got {self.shadowing!r}")
        if self.users <= 0:
            raise ScenarioError(f"users: must be > 0, got {self.users!r}")
        if self.block_size <= 0:
            raise ScenarioError(f"block_size: must be > 0, got {self.block_size!r}")
        if self.threads <= 0:
            raise ScenarioError(f"threads: must be > 0, got {self.threads!r}")
        if not self.heatmap_spacing_m > 0:
            raise ScenarioError("heatmap_spacing_m: must be > 0")
        if self.seed < 0:
            raise ScenarioError("seed: must be a non-negative integer")

    def layout(self) -> BeamLayout:
        return build_layout(self.altitude_m, self.elevation_deg, self.n_rings, self.cell_radius_m)

    def with_(self, **changes) -> "Scenario":
        return replace(self, **changes)

    @property
    def tag(self) -> str:
        return f"{self.elevation_deg:g}_{self.shadowing}"


@dataclass(frozen=True, eq=False)
class EmpiricalCDF:
    values: np.ndarray  # sorted ascending, dB
    metric: str
    tag: str = ""

    def __post_init__(self):
        if np.any(np.diff(self.values) < 0):
            raise ValueError("EmpiricalCDF values must be sorted")

    def __len__(self):
        return len(self.values)

    def __call__(self, x):
        """Right-continuous step CDF: fraction of samples <= x."""
        return np.searchsorted(self.values, x, side="right") / len(self.values)

    def cum_prob(self) -> np.ndarray:
        n = len(self.values)
        return np.arange(1, n + 1) / n


@dataclass(frozen=True, eq=False)
class HeatmapGrid:
    x_m: np.ndarray  # column coordinates
    y_m: np.ndarray  # row coordinates
    values: np.ndarray  # (len(y_m), len(x_m)) dB, row-major
    spacing_m: float
    metric: str
    tag: str = ""

    @property
    def bbox(self):
        return (float(self.x_m[0]), float(self.y_m[0]), float(self.x_m[-1]), float(self.y_m[-1]))


def substream(seed: int, purpose: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(purpose, block)))


def _blocks(n: int, size: int):
    return [(i, start, min(start + size, n)) for i, start in enumerate(range(0, n, size))]


def _run_blocks(fn, blocks, threads: int):
    if threads == 1:
        return [fn(*b) for b in blocks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda b: fn(*b), blocks))


def place_users(scenario: Scenario, n: int | None = None, cell: int = 0) -> np.ndarray:
    """Uniform user positions inside hexagonal cell ``cell``, shape (n, 2)."""
    n = scenario.users if n is None else n
    center = build_layout(scenario.altitude_m, 90.0, scenario.n_rings, scenario.cell_radius_m).cell_centers[cell]
    r = scenario.cell_radius_m

    def block(index, start, stop):
        rng = substream(scenario.seed, _PLACEMENT, index)
        need = stop - start
        got = np.empty((0, 2))
        while len(got) < need:
            cand = rng.uniform(-r, r, size=(2 * need, 2)) + center
            got = np.concatenate([got, cand[point_in_hexagon(cand, center, r)]])
        return got[:need]

    return np.concatenate(_run_blocks(block, _blocks(n, scenario.block_size), scenario.threads))


def sample_gains(params, n: int, seed: int, purpose: int, block_size: int = 8192, threads: int = 1) -> np.ndarray:
    """``n`` channel gains |h|^2 drawn block-wise from substreams of ``seed``."""

    def block(index, start, stop):
        return sample_ssr(params, substream(seed, purpose, index), stop - start)

    return np.concatenate(_run_blocks(block, _blocks(n, block_size), threads))


def draw_channel(scenario: Scenario, n: int, purpose: int = _FADING) -> np.ndarray:
    """Per-user channel gains |h|^2 (all ones without shadowing)."""
    if scenario.shadowing == "none":
        return np.ones(n)
    return sample_gains(PRESETS[scenario.shadowing], n, scenario.seed, purpose,
                        scenario.block_size, scenario.threads)


def evaluate_users(scenario: Scenario, users, serving=0, purpose: int = _FADING) -> MetricSample:
    layout = scenario.layout()
    pts = np.atleast_2d(users)

    def block(index, start, stop):
        srv = serving if np.ndim(serving) == 0 else serving[start:stop]
        return gain_profile(pts[start:stop], layout, scenario.antenna, scenario.link, srv)

    profiles = _run_blocks(block, _blocks(len(pts), scenario.block_size), scenario.threads)
    desired = np.concatenate([p.desired_gain for p in profiles])
    interference = np.concatenate([p.interference_gain_sum for p in profiles])
    h2 = draw_channel(scenario, len(pts), purpose)
    return realize_metrics(GainProfile(desired, interference), scenario.link, h2)


def metric_db(sample: MetricSample, metric: str) -> np.ndarray:
    if metric not in METRICS:
        raise ScenarioError(f"metric: expected one of {METRICS}, got {metric!r}")
    return sample.db(metric)


def run_center_cell(scenario: Scenario) -> MetricSample:
    """Metrics for ``scenario.users`` uniform users in the centre cell, served by beam 0."""
    return evaluate_users(scenario, place_users(scenario), 0)


def run_cdf_experiment(scenario: Scenario, metric: str) -> EmpiricalCDF:
    sample = run_center_cell(scenario)
    return EmpiricalCDF(np.sort(metric_db(sample, metric)), metric, scenario.tag)


def heatmap_axes(scenario: Scenario) -> np.ndarray:
    layout = build_layout(scenario.altitude_m, 90.0, scenario.n_rings, scenario.cell_radius_m)
    reach = np.abs(layout.cell_centers).max() + scenario.cell_radius_m
    half = math.ceil(reach / scenario.heatmap_spacing_m)
    return scenario.heatmap_spacing_m * np.arange(-half, half + 1)


def run_heatmap(scenario: Scenario, metric: str) -> HeatmapGrid:
    """Metric on a square grid covering every cell; each point is served by its nearest cell."""
    axis = heatmap_axes(scenario)
    xx, yy = np.meshgrid(axis, axis)
    pts = np.column_stack([xx.ravel(), yy.ravel()])
    centers = scenario.layout().cell_centers
    d2 = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(axis=-1)
    serving = np.argmin(d2, axis=1)
    sample = evaluate_users(scenario, pts, serving, purpose=_GRID_FADING)
    values = metric_db(sample, metric).reshape(xx.shape)
    return HeatmapGrid(axis, axis.copy(), values, scenario.heatmap_spacing_m, metric, scenario.tag)


def quantiles(values, probs) -> np.ndarray:
    """Type-7 (linear interpolation between order statistics) quantiles."""
    v = np.sort(np.asarray(values, dtype=float))
    if v.size == 0:
        raise ValueError("no samples")
    p = np.asarray(probs, dtype=float)
    if np.any((p <= 0) | (p >= 1)):
        raise ValueError("probabilities must lie in (0, 1)")
    h = (v.size - 1) * p
    lo = np.floor(h).astype(int)
    hi = np.minimum(lo + 1, v.size - 1)
    return v[lo] + (h - lo) * (v[hi] - v[lo])


def summarize(cdf: EmpiricalCDF, probs) -> list[tuple[float, float]]:
    probs = list(probs)
    if probs != sorted(probs):
        raise ValueError("probabilities must be sorted")
    return list(zip(probs, quantiles(cdf.values, probs).tolist()))


def sup_distance(a: EmpiricalCDF, b: EmpiricalCDF) -> float:
    """Kolmogorov distance between two empirical CDFs."""
    grid = np.concatenate([a.values, b.values])
    return float(np.max(np.abs(a(grid) - b(grid))))


__all__ = [
    "METRICS",
    "SHADOWING_CHOICES",
    "Scenario",
    "ScenarioError",
    "EmpiricalCDF",
    "HeatmapGrid",
    "NoInterference",
    "substream",
    "place_users",
    "sample_gains",
    "draw_channel",
    "OUTAGE_STREAM",
    "evaluate_users",
    "run_center_cell",
    "run_cdf_experiment",
    "run_heatmap",
    "heatmap_axes",
    "quantiles",
    "summarize",
    "sup_distance",
]
