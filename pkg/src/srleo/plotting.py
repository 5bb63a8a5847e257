"""Matplotlib renderings of the CSV outputs (figures are display-only)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# stable element ids so repeated runs write identical SVG text
matplotlib.rcParams["svg.hashsalt"] = "srleo"

SHADOWING_STYLES = {
    "none": "-",
    "light": "--",
    "average": "-.",
    "heavy": ":",
}

METRIC_LABELS = {
    "snr": "SNR (dB)",
    "sir": "SIR (dB)",
    "inr": "INR (dB)",
    "sinr": "SINR (dB)",
}


def new_figure(width=6.4, height=None):
    golden_ratio = (5 ** 0.5 - 1.0) / 2.0
    if height is None:
        height = width * golden_ratio
    fig, ax = plt.subplots(figsize=(width, height))
    ax.grid(True, alpha=0.3)
    return fig, ax


def save(fig, path):
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
    plt.close(fig)


def _thin(values, probs, max_points=4000):
    # a CDF with 1e5 steps renders the same with a few thousand vertices
    if len(values) <= max_points:
        return values, probs
    idx = np.unique(np.linspace(0, len(values) - 1, max_points).astype(int))
    return values[idx], probs[idx]


def plot_cdfs(cdfs, path, title=None):
    """One step curve per EmpiricalCDF, linestyle keyed on the shadowing tag."""
    fig, ax = new_figure()
    for cdf in cdfs:
        x, y = _thin(cdf.values, cdf.cum_prob())
        shadow = cdf.tag.rsplit("_", 1)[-1]
        ax.step(x, y, where="post", linestyle=SHADOWING_STYLES.get(shadow, "-"),
                label=f"{cdf.metric.upper()} {cdf.tag.replace('_', ' deg, ')}")
    metric = cdfs[0].metric if cdfs else ""
    ax.set_xlabel(METRIC_LABELS.get(metric, metric))
    ax.set_ylabel("CDF")
    ax.set_ylim(0, 1)
    if title:
        ax.set_title(title)
    ax.legend(fontsize="small")
    save(fig, path)


def plot_heatmap(grid, centers, path, vmin=-20.0, vmax=20.0):
    fig, ax = new_figure(width=6.0, height=5.2)
    ax.grid(False)
    mesh = ax.pcolormesh(grid.x_m / 1e3, grid.y_m / 1e3, grid.values, shading="nearest",
                         vmin=vmin, vmax=vmax, cmap="viridis")
    ax.plot(centers[:, 0] / 1e3, centers[:, 1] / 1e3, "^", color="w", markersize=5,
            markeredgecolor="k")
    ax.set_aspect("equal")
    ax.set_xlabel("x (km)")
    ax.set_ylabel("y (km)")
    fig.colorbar(mesh, ax=ax, label=METRIC_LABELS.get(grid.metric, grid.metric))
    save(fig, path)


def plot_distcheck(y, pdf_exact, pdf_integer, label, path):
    fig, ax = new_figure()
    ax.plot(y, pdf_exact, "-", label=f"{label}, exact m")
    ax.plot(y, pdf_integer, "--", label=f"{label}, rounded m")
    ax.set_xlabel("y")
    ax.set_ylabel("PDF")
    ax.legend(fontsize="small")
    save(fig, path)
