"""Shadowed-Rician statistics and a multi-beam LEO downlink simulator."""

__version__ = "0.1.0"

from .srfading import (  # noqa: E402
    PRESETS,
    IntegerSRParams,
    SRParams,
    kummer_1f1,
    linear_relation_check,
    round_fading_order,
    sample_sr,
    sample_ssr,
    scale,
    sr_pdf,
    ssr_cdf_int,
    ssr_cdf_quad,
    ssr_mean_int,
    ssr_pdf,
    ssr_pdf_int,
)
from .geometry import AntennaPattern, BeamLayout, build_layout, combined_gain, off_boresight_angles, pattern_gain  # noqa: E402
from .linkbudget import LinkBudget, noise_power_w, path_gain_linear, tx_power_w  # noqa: E402
from .metrics import (  # noqa: E402
    GainProfile,
    MetricSample,
    gain_profile,
    inr_distribution,
    realize_metrics,
    sir,
    snr_distribution,
    snr_outage,
)
from .montecarlo import EmpiricalCDF, HeatmapGrid, Scenario, run_cdf_experiment, run_heatmap, summarize  # noqa: E402

__all__ = [
    "# noqa: E402",
    "PRESETS",
    "IntegerSRParams",
    "SRParams",
    "kummer_1f1",
    "linear_relation_check",
    "round_fading_order",
    "sample_sr",
    "sample_ssr",
    "scale",
    "sr_pdf",
    "ssr_cdf_int",
    "ssr_cdf_quad",
    "ssr_mean_int",
    "ssr_pdf",
    "ssr_pdf_int",
    "# noqa: E402",
    "GainProfile",
    "MetricSample",
    "gain_profile",
    "inr_distribution",
    "realize_metrics",
    "sir",
    "snr_distribution",
    "snr_outage",
    "AntennaPattern",
    "BeamLayout",
    "build_layout",
    "combined_gain",
    "off_boresight_angles",
    "pattern_gain",
    "LinkBudget",
    "noise_power_w",
    "path_gain_linear",
    "tx_power_w",
    "EmpiricalCDF",
    "HeatmapGrid",
    "Scenario",
    "run_cdf_experiment",
    "run_heatmap",
    "summarize",
]
