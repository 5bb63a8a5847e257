"""``simulate`` command line: cdf | heatmap | distcheck | outage.

Every command writes CSV files (authoritative) plus a JSON run manifest, and
optionally matplotlib figures next to them.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import config as cfgmod
from .linkbudget import linear_to_db
from .metrics import gain_profile, snr_outage, snr_scale
from .montecarlo import (
    METRICS,
    OUTAGE_STREAM,
    SHADOWING_CHOICES,
    ScenarioError,
    run_cdf_experiment,
    run_heatmap,
    sample_gains,
)
from .srfading import PRESETS, ParameterError, round_fading_order, ssr_cdf_int, ssr_cdf_quad, ssr_pdf, ssr_pdf_int


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_csv(path: Path, header, columns) -> None:
    cols = [np.asarray(c) for c in columns]
    lines = [",".join(header)]
    for row in zip(*cols):
        lines.append(",".join(v if isinstance(v, str) else _fmt(float(v)) for v in row))
    path.write_text("\n".join(lines) + "\n")


def write_manifest(out: Path, command: str, args: dict, cfg: dict | None, files) -> None:
    manifest = {
        "command": command,
        "version": __version__,
        "arguments": args,
        "seed": None if cfg is None else cfg["simulation"]["seed"],
        "config": cfg,
        "outputs": sorted(str(f.name) for f in files),
    }
    (out / f"manifest_{command}.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _elev_tag(elev: float) -> str:
    return f"{elev:g}"


def _resolve_config(args) -> dict:
    cfg = cfgmod.load(args.config) if args.config else cfgmod.default_config()
    sim = cfg["simulation"]
    if args.seed is not None:
        sim["seed"] = args.seed
    if args.threads is not None:
        sim["threads"] = args.threads
    if args.users is not None:
        sim["users"] = args.users
    if args.out is not None:
        cfg["output"]["dir"] = str(args.out)
    if args.plot is not None:
        cfg["output"]["plot"] = args.plot
    if getattr(args, "elevation", None):
        cfg["geometry"]["elevations_deg"] = list(args.elevation)
    shadowing = getattr(args, "shadowing", None)
    if shadowing:
        names = list(SHADOWING_CHOICES) if "all" in shadowing else list(dict.fromkeys(shadowing))
        cfg["channel"]["shadowing"] = names
    return cfgmod.validate(cfg)


def _out_dir(cfg: dict) -> Path:
    out = Path(cfg["output"]["dir"])
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_cdf(args) -> int:
    cfg = _resolve_config(args)
    out = _out_dir(cfg)
    files, cdfs = [], []
    for sc in cfgmod.scenarios(cfg):
        cdf = run_cdf_experiment(sc, args.metric)
        path = out / f"cdf_{args.metric}_{_elev_tag(sc.elevation_deg)}_{sc.shadowing}.csv"
        write_csv(path, ["value_db", "cum_prob"], [cdf.values, cdf.cum_prob()])
        files.append(path)
        cdfs.append(cdf)
        median = float(np.median(cdf.values))
        print(f"{path.name}: n={len(cdf)} median={median:.3f} dB")
    if cfg["output"]["plot"]:
        fig = out / f"cdf_{args.metric}.svg"
        from .plotting import plot_cdfs

        plot_cdfs(cdfs, fig)
        files.append(fig)
    write_manifest(out, "cdf", {"metric": args.metric}, cfg, files)
    return 0


def cmd_heatmap(args) -> int:
    cfg = _resolve_config(args)
    if len(cfg["geometry"]["elevations_deg"]) != 1 and not args.elevation:
        cfg["geometry"]["elevations_deg"] = [90.0]
    if not args.shadowing:
        cfg["channel"]["shadowing"] = ["none"]
    out = _out_dir(cfg)
    files = []
    for sc in cfgmod.scenarios(cfg):
        grid = run_heatmap(sc, args.metric)
        xx, yy = np.meshgrid(grid.x_m, grid.y_m)
        elev = _elev_tag(sc.elevation_deg)
        path = out / f"heatmap_{args.metric}_{elev}_{sc.shadowing}.csv"
        write_csv(path, ["x_m", "y_m", "value_db"], [xx.ravel(), yy.ravel(), grid.values.ravel()])
        centers = sc.layout().cell_centers
        cpath = out / f"cells_{elev}.csv"
        write_csv(cpath, ["beam", "x_m", "y_m"], [np.arange(len(centers)), centers[:, 0], centers[:, 1]])
        files += [path, cpath]
        print(f"{path.name}: {grid.values.shape[1]}x{grid.values.shape[0]} points, "
              f"spacing {grid.spacing_m:g} m, range [{np.nanmin(grid.values):.2f}, {np.nanmax(grid.values):.2f}] dB")
        if cfg["output"]["plot"]:
            from .plotting import plot_heatmap

            fig = path.with_suffix(".svg")
            plot_heatmap(grid, centers, fig)
            files.append(fig)
    write_manifest(out, "heatmap", {"metric": args.metric}, cfg, files)
    return 0


def distcheck_table(name: str, points: int = 801):
    """(y, pdf_exact, pdf_integer) on a grid, plus the sup-norm CDF distance."""
    p = PRESETS[name]
    pi = round_fading_order(p)
    top = p.mean_power
    while ssr_cdf_int(top, pi) < 1 - 1e-10 or ssr_cdf_quad(top, p) < 1 - 1e-10:
        top *= 1.5
    y = np.linspace(0.0, top, points)
    cdf_gap = np.abs(ssr_cdf_quad(y, p) - ssr_cdf_int(y, pi))
    return y, ssr_pdf(y, p), ssr_pdf_int(y, pi), float(cdf_gap.max())


def cmd_distcheck(args) -> int:
    names = list(PRESETS) if args.preset == "all" else [args.preset]
    out = Path(args.out) if args.out is not None else Path("out")
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for name in names:
        p, pi = PRESETS[name], round_fading_order(PRESETS[name])
        y, exact, integer, gap = distcheck_table(name)
        path = out / f"distcheck_{name}.csv"
        write_csv(path, ["y", "pdf_exact", "pdf_integer"], [y, exact, integer])
        files.append(path)
        print(f"{name}: m={p.m:g} -> {pi.m}, sup |F_exact - F_rounded| = {gap:.3e}")
        if args.plot:
            from .plotting import plot_distcheck

            fig = path.with_suffix(".svg")
            plot_distcheck(y, exact, integer, name, fig)
            files.append(fig)
    write_manifest(out, "distcheck", {"preset": args.preset}, None, files)
    return 0


def cmd_outage(args) -> int:
    if args.shadowing not in PRESETS:
        raise UsageError(f"outage needs a shadowing preset {tuple(PRESETS)}, got {args.shadowing!r}")
    args.shadowing = [args.shadowing]
    args.elevation = [args.elevation]
    cfg = _resolve_config(args)
    out = _out_dir(cfg)
    sc = cfgmod.scenarios(cfg)[0]
    layout = sc.layout()
    profile = gain_profile(layout.cell_centers[0], layout, sc.antenna, sc.link, 0)
    channel = round_fading_order(PRESETS[sc.shadowing])
    gamma = 0.0 if args.gamma_db == -math.inf else 10.0 ** (args.gamma_db / 10.0)
    closed = snr_outage(profile, channel, sc.link, gamma)
    n = sc.users
    h2 = sample_gains(channel, n, sc.seed, OUTAGE_STREAM, sc.block_size, sc.threads)
    empirical = float(np.mean(snr_scale(profile, sc.link) * h2 <= gamma))
    se = math.sqrt(max(closed * (1 - closed), 0.0) / n)
    mean_snr_db = float(linear_to_db(snr_scale(profile, sc.link) * (2 * channel.b + channel.omega)))
    print(f"user at centre-cell centre, elevation {sc.elevation_deg:g} deg, shadowing {sc.shadowing} (m -> {channel.m})")
    print(f"mean SNR            : {mean_snr_db:.4f} dB")
    print(f"gamma               : {args.gamma_db:g} dB")
    print(f"closed-form outage  : {closed:.6f}")
    print(f"Monte Carlo outage  : {empirical:.6f} (n={n})")
    print(f"difference          : {empirical - closed:+.6f} (3 SE = {3 * se:.6f})")
    path = out / f"outage_{_elev_tag(sc.elevation_deg)}_{sc.shadowing}.csv"
    write_csv(path, ["gamma_db", "closed_form", "monte_carlo", "n"],
              [[args.gamma_db], [closed], [empirical], [n]])
    write_manifest(out, "outage", {"gamma_db": args.gamma_db}, cfg, [path])
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON config file (defaults built in)")
    common.add_argument("--seed", type=int, help="master seed")
    common.add_argument("--threads", type=int, help="worker threads")
    common.add_argument("--users", type=int, help="users (or Monte Carlo draws)")
    common.add_argument("--out", type=Path, help="output directory")
    common.add_argument("--plot", action=argparse.BooleanOptionalAction, default=None,
                        help="also render matplotlib figures (SVG)")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simulate", description="Shadowed-Rician multi-beam LEO downlink simulator.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    shadow_choices = list(SHADOWING_CHOICES) + ["all"]

    p = sub.add_parser("cdf", parents=[common], help="empirical CDFs over the centre cell")
    p.add_argument("--metric", required=True, choices=METRICS)
    p.add_argument("--elevation", type=float, action="append", help="elevation in degrees (repeatable)")
    p.add_argument("--shadowing", action="append", choices=shadow_choices, help="repeatable")
    p.set_defaults(func=cmd_cdf)

    p = sub.add_parser("heatmap", parents=[common], help="metric over a ground grid")
    p.add_argument("--metric", default="sinr", choices=METRICS)
    p.add_argument("--elevation", type=float, action="append")
    p.add_argument("--shadowing", action="append", choices=shadow_choices)
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("distcheck", help="exact vs rounded fading-order densities")
    p.add_argument("--preset", default="all", choices=list(PRESETS) + ["all"])
    p.add_argument("--out", type=Path)
    p.add_argument("--plot", action=argparse.BooleanOptionalAction, default=False)
    p.set_defaults(func=cmd_distcheck)

    p = sub.add_parser("outage", parents=[common], help="SNR outage at the centre-cell centre")
    p.add_argument("--gamma-db", type=float, required=True)
    p.add_argument("--shadowing", default="average", choices=list(PRESETS))
    p.add_argument("--elevation", type=float, default=90.0)
    p.set_defaults(func=cmd_outage)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, cfgmod.ConfigError, ScenarioError, ParameterError, ValueError) as exc:
        print(f"simulate: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"simulate: I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
