import math

import numpy as np
import pytest
from scipy import integrate

from srleo.geometry import (
    AntennaPattern,
    GeometryError,
    OutOfPatternError,
    bessel_j1,
    build_layout,
    combined_gain,
    hex_centers,
    off_boresight_angles,
    pattern_gain,
    point_in_hexagon,
    total_off_boresight_angle,
)

AP = AntennaPattern()


def j1_quadrature(x):
    # Bessel's integral: J1(x) = (1/pi) int_0^pi cos(t - x sin t) dt
    val, _ = integrate.quad(lambda t: math.cos(t - x * math.sin(t)), 0, math.pi, limit=400, epsabs=1e-13)
    return val / math.pi


def bisect(f, lo, hi, tol=1e-15):
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0) == (flo > 0):
            lo, flo = mid, f(mid)
        else:
            hi = mid
    return 0.5 * (lo + hi)


@pytest.mark.parametrize("x", [0.0, 0.5, 1.8412, 3.0, 7.2, 11.99, 12.01, 20.0, 45.5, 62.8])
def test_bessel_against_quadrature(x):
    assert bessel_j1(x) == pytest.approx(j1_quadrature(x), abs=1e-10)


def test_bessel_odd():
    x = np.linspace(0, 30, 50)
    np.testing.assert_array_equal(bessel_j1(-x), -bessel_j1(x))


class TestPattern:
    def test_boresight(self):
        assert pattern_gain(0.0, AP) == 1.0

    def test_first_null(self):
        x0 = bisect(lambda x: j1_quadrature(x), 3.0, 4.5, tol=1e-12)
        zeta = math.asin(x0 / AP.ka)
        assert pattern_gain(zeta, AP) == pytest.approx(0.0, abs=1e-9)

    def test_small_angle_continuity(self):
        assert abs(pattern_gain(1e-6, AP) - 1.0) < 1e-9

    def test_range(self):
        z = np.linspace(-math.pi / 2, math.pi / 2, 20001)
        g = pattern_gain(z, AP)
        assert np.all((g >= 0) & (g <= 1))

    def test_outside_domain(self):
        with pytest.raises(OutOfPatternError):
            pattern_gain(math.pi / 2 + 1e-3, AP)

    def test_monotone_to_first_null(self):
        null = math.asin(3.8317 / AP.ka)
        g = pattern_gain(np.linspace(0, null, 500), AP)
        assert np.all(np.diff(g) <= 0)

    def test_combined_peak(self):
        assert combined_gain(0.0, 0.0, AP) == pytest.approx(1000.0)

    def test_separable_and_symmetric(self):
        rng = np.random.default_rng(0)
        th, ph = rng.uniform(-0.2, 0.2, (2, 50))
        assert combined_gain(0.03, 0.0, AP) == pytest.approx(1000.0 * pattern_gain(0.03, AP))
        np.testing.assert_allclose(combined_gain(th, ph, AP), combined_gain(ph, th, AP), rtol=1e-15)

    def test_three_db_radius(self):
        zeta = bisect(lambda z: pattern_gain(z, AP) - 0.5, 1e-6, 0.05)
        radius = 500e3 * math.tan(zeta)
        assert radius == pytest.approx(12.6e3, rel=0.05)


class TestLayout:
    def test_counts(self):
        assert build_layout(n_rings=2).n_beams == 19
        one = build_layout(n_rings=0)
        assert one.n_beams == 1 and np.all(one.cell_centers == 0)

    def test_spacing(self):
        c = hex_centers(1, 12.6e3)
        d = np.linalg.norm(c[1:], axis=1)
        np.testing.assert_allclose(d, 2 * 12.6e3 * math.cos(math.radians(30)), rtol=1e-12)

    def test_centers_unique(self):
        c = hex_centers(3, 1.0)
        assert len(c) == 37 and len(np.unique(np.round(c, 6), axis=0)) == 37

    def test_nadir(self):
        lay = build_layout(elevation_deg=90.0)
        np.testing.assert_allclose(lay.satellite, [0, 0, 500e3])
        np.testing.assert_allclose(lay.boresights[0], [0, 0, -1], atol=1e-15)
        assert off_boresight_angles([0.0, 0.0], 0, lay) == (0.0, 0.0)

    @pytest.mark.parametrize("el", [0.0, -5.0, 90.5])
    def test_bad_elevation(self, el):
        with pytest.raises(GeometryError):
            build_layout(elevation_deg=el)

    @pytest.mark.parametrize("el", [90.0, 60.0, 45.0])
    def test_slant_geometry(self, el):
        lay = build_layout(elevation_deg=el)
        d = lay.slant_range([0.0, 0.0])[0]
        assert d == pytest.approx(500e3 / math.sin(math.radians(el)), rel=1e-12)
        ground = math.hypot(lay.satellite[0], lay.satellite[1])
        assert math.degrees(math.atan2(lay.satellite[2], ground)) == pytest.approx(el)

    @pytest.mark.parametrize("el", [90.0, 60.0, 45.0])
    def test_boresights_hit_centers(self, el):
        lay = build_layout(elevation_deg=el)
        for i, c in enumerate(lay.cell_centers):
            th, ph = off_boresight_angles(c, i, lay)
            assert abs(th) < 1e-12 and abs(ph) < 1e-12

    def test_frames_orthonormal(self):
        lay = build_layout(elevation_deg=45.0)
        for trio in zip(lay.boresights, lay.axis_az, lay.axis_el):
            m = np.array(trio)
            np.testing.assert_allclose(m @ m.T, np.eye(3), atol=1e-14)


class TestAngles:
    def test_right_triangle(self):
        lay = build_layout(elevation_deg=90.0)
        total = total_off_boresight_angle([12.6e3, 0.0], 0, lay)
        assert math.degrees(total) == pytest.approx(math.degrees(math.atan(12600 / 500000)), rel=1e-12)
        assert math.degrees(total) == pytest.approx(1.444, abs=1e-3)
        th, ph = off_boresight_angles([12.6e3, 0.0], 0, lay)
        assert math.hypot(th, ph) == pytest.approx(total, rel=1e-12)

    def test_small_angle_decomposition(self):
        rng = np.random.default_rng(5)
        lay = build_layout(elevation_deg=60.0)
        users = rng.uniform(-40e3, 40e3, (200, 2))
        for j in (0, 3, 11):
            th, ph = off_boresight_angles(users, j, lay)
            tot = total_off_boresight_angle(users, j, lay)
            keep = tot < math.radians(5)
            np.testing.assert_allclose(np.hypot(th, ph)[keep], tot[keep], rtol=0.01)

    def test_behind_antenna(self):
        lay = build_layout(altitude_m=500e3, elevation_deg=10.0, n_rings=0)
        with pytest.raises(OutOfPatternError):
            off_boresight_angles([6e6, 0.0], 0, lay)

    def test_beam_index_range(self):
        lay = build_layout()
        with pytest.raises(GeometryError):
            off_boresight_angles([0.0, 0.0], 19, lay)

    def test_nadir_mirror_symmetry(self):
        lay = build_layout(elevation_deg=90.0)
        rng = np.random.default_rng(9)
        users = rng.uniform(-30e3, 30e3, (100, 2))
        for mirror in ([1, -1], [-1, 1]):
            mirrored = users * mirror
            for j, c in enumerate(lay.cell_centers):
                jm = int(np.argmin(np.linalg.norm(lay.cell_centers - c * mirror, axis=1)))
                g = combined_gain(*off_boresight_angles(users, j, lay), AP)
                gm = combined_gain(*off_boresight_angles(mirrored, jm, lay), AP)
                np.testing.assert_allclose(g, gm, rtol=1e-9)

    def test_ring_one_gain_pairs(self):
        # the separable pattern keeps the lattice's mirror symmetries only:
        # on-axis neighbours match each other, the four diagonal ones match each other
        lay = build_layout(elevation_deg=90.0)
        g = combined_gain(*off_boresight_angles(lay.cell_centers[1:7], 0, lay), AP)
        assert g[0] == pytest.approx(g[3], rel=1e-9)
        np.testing.assert_allclose(g[[1, 2, 4, 5]], g[1], rtol=1e-9)


def test_point_in_hexagon():
    r = 10.0
    inside = point_in_hexagon([[0, 0], [r * 0.86, 0], [0, r * 0.99], [r * 0.87, 0], [0, r * 1.01]], (0, 0), r)
    assert inside.tolist() == [True, True, True, False, False]
