"""Satellite-to-ground geometry and the dish gain pattern.

Ground is a plane (z = 0) with the footprint centre at the origin; the
satellite sits above the +x half-plane for elevations below 90 degrees.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GeometryError",
    "OutOfPatternError",
    "bessel_j1",
    "AntennaPattern",
    "BeamLayout",
    "pattern_gain",
    "combined_gain",
    "hex_centers",
    "build_layout",
    "off_boresight_angles",
    "point_in_hexagon",
]


class GeometryError(ValueError):
    pass


class OutOfPatternError(GeometryError):
    """A direction lies behind the antenna aperture plane."""


# ---------------------------------------------------------------------------
# Bessel J1
# ---------------------------------------------------------------------------

_SERIES_LIMIT = 12.0


def _j1_series(x: np.ndarray) -> np.ndarray:
    # J1(x) = sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!)
    half = 0.5 * x
    q = -half * half
    term = half.copy()
    total = term.copy()
    for k in range(1, 60):
        term = term * q / (k * (k + 1))
        total = total + term
    return total


def _j1_asymptotic(x: np.ndarray) -> np.ndarray:
    # Hankel expansion with mu = 4; truncated before the smallest term
    mu = 4.0
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    eight_x = 8.0 * x
    for k in range(1, 30):
        term = term * (mu - (2 * k - 1) ** 2) / (k * eight_x)
        if k % 2:
            q = q + (term if (k // 2) % 2 == 0 else -term)
        else:
            p = p + (term if (k // 2) % 2 == 0 else -term)
    chi = x - 0.75 * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j1(x):
    """First-kind Bessel function of order one."""
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    ax = np.abs(xa)
    out = np.empty_like(ax)
    near = ax <= _SERIES_LIMIT
    out[near] = _j1_series(ax[near])
    out[~near] = _j1_asymptotic(ax[~near])
    out = np.sign(xa) * out
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# antenna
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AntennaPattern:
    """Circular dish of radius ``radius_wavelengths`` wavelengths."""

    radius_wavelengths: float = 10.0
    peak_gain_db: float = 30.0

    def __post_init__(self):
        if not self.radius_wavelengths > 0:
            raise GeometryError("radius_wavelengths must be > 0")

    @property
    def ka(self) -> float:
        return 2.0 * math.pi * self.radius_wavelengths

    @property
    def peak_gain_linear(self) -> float:
        return 10.0 ** (self.peak_gain_db / 10.0)


def pattern_gain(zeta_rad, ap: AntennaPattern):
    """Normalized one-plane pattern 4 |J1(ka sin z) / (ka sin z)|^2, 1 at z = 0."""
    z = np.asarray(zeta_rad, dtype=float)
    if np.any(np.abs(z) > math.pi / 2) or np.any(np.isnan(z)):
        raise OutOfPatternError("pattern angle outside [-90, 90] degrees")
    u = ap.ka * np.sin(np.atleast_1d(z))
    out = np.ones_like(u)
    nz = u != 0
    ratio = bessel_j1(u[nz]) / u[nz]
    out[nz] = 4.0 * ratio * ratio
    # the closed form rounds a hair above 1 next to boresight
    out = np.minimum(out, 1.0)
    return float(out[0]) if z.ndim == 0 else out


def combined_gain(theta_rad, phi_rad, ap: AntennaPattern):
    """Linear transmit gain ``peak * g(theta) * g(phi)``."""
    return ap.peak_gain_linear * pattern_gain(theta_rad, ap) * pattern_gain(phi_rad, ap)


# ---------------------------------------------------------------------------
# layout
# ---------------------------------------------------------------------------

def hex_centers(n_rings: int, cell_radius_m: float) -> np.ndarray:
    """Hexagonal-lattice cell centres, ordered by ring then angle.

    ``cell_radius_m`` is the centre-to-vertex distance, so neighbouring centres
    are ``sqrt(3) * cell_radius_m`` apart.  Ring-1 neighbours lie at 0, 60, ...
    degrees.
    """
    if n_rings < 0:
        raise GeometryError("n_rings must be >= 0")
    spacing = math.sqrt(3.0) * cell_radius_m
    pts = []
    for q in range(-n_rings, n_rings + 1):
        for r in range(max(-n_rings, -q - n_rings), min(n_rings, -q + n_rings) + 1):
            ring = max(abs(q), abs(r), abs(q + r))
            x = spacing * (q + 0.5 * r)
            y = spacing * (math.sqrt(3.0) / 2.0) * r
            ang = math.atan2(y, x) % (2 * math.pi)
            pts.append((ring, round(ang, 9), x, y))
    pts.sort()
    out = np.array([(x, y) for _, _, x, y in pts], dtype=float)
    out[np.abs(out) < 1e-6] = 0.0
    return out


def point_in_hexagon(xy, center, cell_radius_m: float) -> np.ndarray:
    """Membership test for the hexagonal cell around ``center`` (vertices at 30 + 60k deg)."""
    d = np.atleast_2d(np.asarray(xy, dtype=float)) - np.asarray(center, dtype=float)
    apothem = cell_radius_m * math.sqrt(3.0) / 2.0
    inside = np.ones(len(d), dtype=bool)
    for ang in (0.0, math.pi / 3, 2 * math.pi / 3):
        inside &= np.abs(d[:, 0] * math.cos(ang) + d[:, 1] * math.sin(ang)) <= apothem
    return inside


@dataclass(frozen=True, eq=False)
class BeamLayout:
    """Satellite position, cell centres and per-beam boresight frames."""

    altitude_m: float
    elevation_deg: float
    cell_radius_m: float
    cell_centers: np.ndarray
    satellite: np.ndarray
    boresights: np.ndarray
    # per-beam unit vectors spanning the two pattern planes
    axis_az: np.ndarray = field(repr=False)
    axis_el: np.ndarray = field(repr=False)

    @property
    def n_beams(self) -> int:
        return len(self.cell_centers)

    def slant_range(self, xy) -> np.ndarray:
        pts = _ground_points(xy)
        return np.linalg.norm(pts - self.satellite, axis=-1)


def _ground_points(xy) -> np.ndarray:
    xy = np.atleast_2d(np.asarray(xy, dtype=float))
    if xy.shape[-1] != 2 or not np.all(np.isfinite(xy)):
        raise GeometryError("user positions must be finite (x, y) pairs")
    return np.concatenate([xy, np.zeros(xy.shape[:-1] + (1,))], axis=-1)


def build_layout(
    altitude_m: float = 500e3,
    elevation_deg: float = 90.0,
    n_rings: int = 2,
    cell_radius_m: float = 12.6e3,
) -> BeamLayout:
    """Place hexagonal cells on flat ground and aim one beam at each centre.

    The satellite lies at slant range ``altitude / sin(el)`` from the origin in
    the x-z plane.  Each beam's pattern planes are the plane through its
    boresight and the cross-track (y) axis, and the plane orthogonal to it.
    """
    if not (0.0 < elevation_deg <= 90.0):
        raise GeometryError(f"elevation_deg must be in (0, 90], got {elevation_deg!r}")
    if not altitude_m > 0:
        raise GeometryError("altitude_m must be > 0")
    if not cell_radius_m > 0:
        raise GeometryError("cell_radius_m must be > 0")
    el = math.radians(elevation_deg)
    ground_offset = 0.0 if elevation_deg == 90.0 else altitude_m / math.tan(el)
    sat = np.array([ground_offset, 0.0, altitude_m])
    centers = hex_centers(n_rings, cell_radius_m)
    vec = _ground_points(centers) - sat
    bore = vec / np.linalg.norm(vec, axis=1, keepdims=True)
    # y is horizontal and never parallel to a downward boresight
    y_hat = np.array([0.0, 1.0, 0.0])
    ax_el = y_hat - (bore @ y_hat)[:, None] * bore
    ax_el /= np.linalg.norm(ax_el, axis=1, keepdims=True)
    ax_az = np.cross(ax_el, bore)
    return BeamLayout(
        altitude_m=float(altitude_m),
        elevation_deg=float(elevation_deg),
        cell_radius_m=float(cell_radius_m),
        cell_centers=centers,
        satellite=sat,
        boresights=bore,
        axis_az=ax_az,
        axis_el=ax_el,
    )


def off_boresight_angles(user, beam_index, layout: BeamLayout):
    """Angles of ``user`` in beam ``beam_index``'s two pattern planes.

    ``user`` may be one (x, y) pair or an (N, 2) array; ``beam_index`` an int
    or an index array broadcastable to N.  Returns ``(theta, phi)`` in
    radians, each in (-pi/2, pi/2).
    """
    pts = _ground_points(user)
    idx = np.asarray(beam_index)
    if np.any(idx < 0) or np.any(idx >= layout.n_beams):
        raise GeometryError(f"beam index out of range 0..{layout.n_beams - 1}")
    v = pts - layout.satellite
    along = np.einsum("ij,ij->i", v, np.broadcast_to(layout.boresights[idx], v.shape))
    if np.any(along <= 0):
        raise OutOfPatternError("user lies behind the antenna plane")
    theta = np.arctan2(np.einsum("ij,ij->i", v, np.broadcast_to(layout.axis_az[idx], v.shape)), along)
    phi = np.arctan2(np.einsum("ij,ij->i", v, np.broadcast_to(layout.axis_el[idx], v.shape)), along)
    if np.ndim(user) == 1:
        return float(theta[0]), float(phi[0])
    return theta, phi


def total_off_boresight_angle(user, beam_index, layout: BeamLayout):
    pts = _ground_points(user)
    v = pts - layout.satellite
    v = v / np.linalg.norm(v, axis=1, keepdims=True)
    c = np.clip(v @ layout.boresights[beam_index], -1.0, 1.0)
    out = np.arccos(c)
    return float(out[0]) if np.ndim(user) == 1 else out
