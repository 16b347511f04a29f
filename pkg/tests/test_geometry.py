"""Geometric primitives: volumes, overlaps, indicator transforms, surfaces.

Closed forms are checked against Monte Carlo membership counts and direct
oscillatory quadrature, both implemented here so the library is never its
own oracle for a [derived] value.
"""

import math

import numpy as np
import pytest

from fermisea.geometry import (
    Ball,
    Box,
    Cantor1D,
    UnionOfBoxes,
    autocorrelation,
    diameter,
    indicator_ft,
    indicator_ft_sq,
    intervals_1d,
    regularity_exponent,
    shift_defect,
    surface_quadrature,
    volume,
)


def test_volume_closed_forms():
    assert volume(Box.cube(3)) == 1.0
    assert volume(Ball.unit(2)) == pytest.approx(math.pi, rel=1e-15)
    assert volume(Ball.unit(3)) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-15)
    for m in range(5):
        c = Cantor1D(base=(0.0, 1.0), ratio=1.0 / 3.0, depth=m)
        assert volume(c) == pytest.approx((2.0 / 3.0) ** m, rel=1e-15)
    u = UnionOfBoxes((Box.interval(0.0, 0.5), Box.interval(0.7, 0.9)))
    assert volume(u) == pytest.approx(0.7, rel=1e-15)


def test_region_validation():
    with pytest.raises(ValueError):
        Box(lo=(0.0,), hi=(0.0,))
    with pytest.raises(ValueError):
        Box(lo=(0.0, 0.0), hi=(1.0,))
    with pytest.raises(ValueError):
        Ball(center=(0.0,), radius=0.0)
    with pytest.raises(ValueError):
        Ball(center=(0.0,) * 4, radius=1.0)
    for bad_ratio in (0.0, 0.5, 0.7):
        with pytest.raises(ValueError):
            Cantor1D(base=(0.0, 1.0), ratio=bad_ratio, depth=3)
    with pytest.raises(ValueError):
        Cantor1D(base=(0.0, 1.0), ratio=1.0 / 3.0, depth=-1)
    with pytest.raises(ValueError):
        UnionOfBoxes((Box.interval(0.0, 1.0), Box.interval(0.5, 1.5)))
    with pytest.raises(ValueError):
        UnionOfBoxes((Box.interval(0.0, 1.0), Box.cube(2)))


def test_diameter():
    assert diameter(Box(lo=(0.0, 0.0), hi=(3.0, 4.0))) == pytest.approx(5.0)
    assert diameter(Ball.unit(3, radius=2.0)) == 4.0
    assert diameter(Cantor1D(base=(-1.0, 1.0), ratio=1.0 / 3.0, depth=4)) == 2.0


def test_intervals_1d():
    c = Cantor1D(base=(0.0, 1.0), ratio=1.0 / 3.0, depth=3)
    starts, widths = intervals_1d(c)
    assert starts.size == 8
    assert np.allclose(widths, (1.0 / 3.0) ** 3)
    assert starts[0] == 0.0 and starts[-1] == pytest.approx(1.0 - widths[-1])
    # d = 1 balls are intervals
    s, w = intervals_1d(Ball(center=(0.5,), radius=0.5))
    assert s[0] == 0.0 and w[0] == 1.0
    with pytest.raises(ValueError):
        intervals_1d(Box.cube(2))


###############################################################################
# autocorrelation


def test_autocorrelation_interval():
    box = Box.interval(0.0, 1.0)
    assert autocorrelation(box, 0.25) == pytest.approx(0.75, rel=1e-15)
    assert autocorrelation(box, -0.25) == pytest.approx(0.75, rel=1e-15)
    assert autocorrelation(box, 1.5) == 0.0


def test_autocorrelation_square():
    sq = Box.cube(2)
    assert autocorrelation(sq, (0.5, 0.0)) == pytest.approx(0.5, rel=1e-15)
    assert autocorrelation(sq, (0.5, 0.5)) == pytest.approx(0.25, rel=1e-15)


def test_autocorrelation_symmetry_and_bounds():
    rng = np.random.default_rng(101)
    regions = [
        Box.interval(0.0, 1.0),
        Box(lo=(0.0, -1.0), hi=(2.0, 1.5)),
        Ball.unit(2),
        Ball.unit(3, radius=0.7),
        Cantor1D(base=(0.0, 1.0), ratio=1.0 / 3.0, depth=5),
        UnionOfBoxes((Box.interval(0.0, 0.5), Box.interval(0.7, 0.9))),
    ]
    for region in regions:
        vol = volume(region)
        assert autocorrelation(region, np.zeros(region.dim)) == pytest.approx(vol, rel=1e-14)
        for _ in range(20):
            z = rng.uniform(-1.5, 1.5, size=region.dim)
            a_plus = autocorrelation(region, z)
            a_minus = autocorrelation(region, -z)
            tol = 1e-12 if isinstance(region, Ball) else 1e-14
            assert abs(a_plus - a_minus) <= tol * max(vol, 1.0)
            assert -1e-15 <= a_plus <= vol * (1.0 + 1e-14)


def test_lens_area_vs_membership_mc():
    # disk overlap at center distance 0.6 against a 1e7-sample membership count
    closed = autocorrelation(Ball.unit(2), (0.6, 0.0))
    rng = np.random.default_rng(314159)
    pts = rng.uniform([-1.0, -1.0], [1.6, 1.0], size=(10_000_000, 2))
    inside = (np.sum(pts**2, axis=1) <= 1.0) & (
        np.sum((pts - [0.6, 0.0]) ** 2, axis=1) <= 1.0
    )
    mc = 2.6 * 2.0 * float(np.mean(inside))
    assert closed == pytest.approx(mc, abs=5e-3)


def test_lens_volume_3d_vs_membership_mc():
    closed = autocorrelation(Ball.unit(3), (0.5, 0.0, 0.0))
    rng = np.random.default_rng(271828)
    pts = rng.uniform([-1.0, -1.0, -1.0], [1.5, 1.0, 1.0], size=(2_000_000, 3))
    inside = (np.sum(pts**2, axis=1) <= 1.0) & (
        np.sum((pts - [0.5, 0.0, 0.0]) ** 2, axis=1) <= 1.0
    )
    mc = 2.5 * 4.0 * float(np.mean(inside))
    assert closed == pytest.approx(mc, abs=1.5e-2)


def test_union_autocorrelation_vs_membership_mc():
    # unequal widths exercise the generic pairwise path
    u = UnionOfBoxes((Box.interval(0.0, 0.5), Box.interval(0.7, 0.9)))
    rng = np.random.default_rng(777)
    x = rng.uniform(-0.5, 1.0, size=4_000_000)

    def member(t):
        return ((t >= 0.0) & (t <= 0.5)) | ((t >= 0.7) & (t <= 0.9))

    for z in (0.05, 0.2, 0.35):
        mc = 1.5 * float(np.mean(member(x) & member(x - z)))
        assert autocorrelation(u, z) == pytest.approx(mc, abs=2e-3)


def test_cantor_autocorrelation_matches_explicit_union():
    # the prefix-sum fast path against the same set spelled out box by box
    c = Cantor1D(base=(0.0, 1.0), ratio=1.0 / 3.0, depth=4)
    starts, widths = intervals_1d(c)
    u = UnionOfBoxes(tuple(Box.interval(s, s + w) for s, w in zip(starts, widths)))
    z = np.linspace(-1.1, 1.1, 301)
    assert np.allclose(autocorrelation(c, z), autocorrelation(u, z), atol=1e-13)


###############################################################################
# shift defect and boundary regularity


def test_shift_defect_basics():
    box = Box.interval(0.0, 1.0)
    assert shift_defect(box, 0.1) == pytest.approx(0.1, rel=1e-13)
    for region in (box, Ball.unit(2), Cantor1D(base=(0.0, 1.0), ratio=0.3, depth=4)):
        assert shift_defect(region, np.zeros(region.dim)) == pytest.approx(0.0, abs=1e-14)


def test_defect_plus_autocorrelation_is_volume():
    rng = np.random.default_rng(55)
    for region in (Box.cube(2), Ball.unit(3), Cantor1D(base=(0.0, 1.0), ratio=1.0 / 3.0, depth=6)):
        vol = volume(region)
        for _ in range(25):
            z = rng.uniform(-0.8, 0.8, size=region.dim)
            assert shift_defect(region, z) + autocorrelation(region, z) == pytest.approx(
                vol, rel=1e-14
            )


def test_regularity_exponent_smooth_regions():
    assert regularity_exponent(Box.interval(0.0, 1.0), 1e-4, 1e-2) == pytest.approx(1.0, abs=1e-10)
    assert regularity_exponent(Ball.unit(2), 1e-4, 1e-2) == pytest.approx(1.0, abs=0.02)


def test_regularity_exponent_cantor_window():
    c = Cantor1D(base=(0.0, 1.0), ratio=1.0 / 3.0, depth=8)
    h_min, h_max = 3.0**-7, 3.0**-2
    beta = regularity_exponent(c, h_min, h_max)
    # same interval-arithmetic sweep, fitted here by hand
    h = np.geomspace(h_min, h_max, 61)
    slope = np.polyfit(np.log(h), np.log(np.asarray(shift_defect(c, h))), 1)[0]
    assert beta == pytest.approx(slope, abs=1e-12)
    # frozen value of the depth-8 window measurement
    assert beta == pytest.approx(0.028784, abs=1e-4)
    # a mirrored probe direction sees the same structure
    back = regularity_exponent(c, h_min, h_max, direction=(-1.0,))
    assert back == pytest.approx(beta, abs=1e-12)
    with pytest.raises(ValueError):
        regularity_exponent(c, 0.0, 0.1)


###############################################################################
# indicator transform


def _box_ft_quad(box: Box, k: np.ndarray, order: int = 120) -> complex:
    # direct tensor Gauss-Legendre quadrature of int exp(-i k.x) dx
    vals = 1.0 + 0.0j
    for j in range(box.dim):
        t, w = np.polynomial.legendre.leggauss(order)
        mid = 0.5 * (box.lo[j] + box.hi[j])
        half = 0.5 * (box.hi[j] - box.lo[j])
        x = mid + half * t
        vals *= np.sum(half * w * np.exp(-1j * k[j] * x))
    return vals


def test_indicator_ft_sq_dc_and_zero():
    for region in (Box.cube(2), Ball.unit(3), Cantor1D(base=(0.0, 1.0), ratio=0.4, depth=5)):
        assert indicator_ft_sq(region, np.zeros(region.dim)) == pytest.approx(
            volume(region) ** 2, rel=1e-12
        )
    # full-period cancellation on the unit interval
    assert indicator_ft_sq(Box.interval(0.0, 1.0), 2.0 * math.pi) < 1e-30


def test_indicator_ft_sq_bounds():
    rng = np.random.default_rng(9)
    for region in (Box.cube(2), Ball.unit(2), Cantor1D(base=(0.0, 1.0), ratio=1.0 / 3.0, depth=6)):
        vol2 = volume(region) ** 2
        k = rng.uniform(-40.0, 40.0, size=(200, region.dim))
        vals = np.asarray(indicator_ft_sq(region, k))
        assert np.all(vals >= 0.0)
        assert np.all(vals <= vol2 * (1.0 + 1e-12))


def test_ball_ft_sq_vs_polar_quadrature():
    # smooth polar rule for int_disk exp(-i k.x) dx, no Bessel identity involved
    r, wr = np.polynomial.legendre.leggauss(200)
    r = 0.5 * (r + 1.0)
    wr = 0.5 * wr
    t, wt = np.polynomial.legendre.leggauss(400)
    t = math.pi * (t + 1.0)
    wt = math.pi * wt
    phases = np.exp(-1j * 3.0 * np.outer(r, np.cos(t)))
    direct = abs(np.sum((wr * r)[:, None] * phases * wt[None, :])) ** 2
    assert indicator_ft_sq(Ball.unit(2), (3.0, 0.0)) == pytest.approx(direct, abs=1e-8)


def test_box_ft_sq_separable_vs_quadrature():
    box = Box(lo=(0.0, -0.3), hi=(0.7, 1.0))
    rng = np.random.default_rng(23)
    for _ in range(10):
        k = rng.uniform(-15.0, 15.0, size=2)
        direct = abs(_box_ft_quad(box, k)) ** 2
        assert indicator_ft_sq(box, k) == pytest.approx(direct, abs=1e-8)


def test_interval_ft_closed_form():
    k = 3.7
    lib = indicator_ft(Box.interval(0.0, 1.0), k)
    exact = (1.0 - np.exp(-1j * k)) / (1j * k)
    assert abs(lib - exact) < 1e-14


def test_cantor_ft_sq_product_form_vs_sum():
    # nested product form against the plain sum over leaf-interval transforms
    c = Cantor1D(base=(0.0, 1.0), ratio=1.0 / 3.0, depth=7)
    starts, widths = intervals_1d(c)
    u = UnionOfBoxes(tuple(Box.interval(s, s + w) for s, w in zip(starts, widths)))
    rng = np.random.default_rng(41)
    k = rng.uniform(-300.0, 300.0, size=64)
    prod_form = np.asarray(indicator_ft_sq(c, k))
    sum_form = np.abs(np.asarray(indicator_ft(u, k))) ** 2
    assert np.allclose(prod_form, sum_form, rtol=1e-10, atol=1e-15)


def test_ft_sq_translation_invariant():
    k = (2.2, -0.9)
    a = indicator_ft_sq(Ball.unit(2), k)
    b = indicator_ft_sq(Ball(center=(5.0, -3.0), radius=1.0), k)
    assert a == pytest.approx(b, rel=1e-12)


###############################################################################
# surface quadrature


def test_surface_weights_reproduce_measures():
    assert np.sum(surface_quadrature(Box.cube(2), 16).weights) == pytest.approx(4.0, rel=1e-14)
    assert np.sum(surface_quadrature(Box.cube(3), 8).weights) == pytest.approx(6.0, rel=1e-14)
    assert np.sum(surface_quadrature(Ball.unit(2), 16).weights) == pytest.approx(
        2.0 * math.pi, rel=1e-14
    )
    assert np.sum(surface_quadrature(Ball.unit(3), 24).weights) == pytest.approx(
        4.0 * math.pi, rel=1e-13
    )
    s = surface_quadrature(Box.interval(0.0, 1.0), 4)
    assert len(s) == 2
    assert np.array_equal(np.sort(s.normals[:, 0]), [-1.0, 1.0])
    assert np.all(s.weights == 1.0)


def test_surface_face_filtering():
    s = surface_quadrature(Box.cube(3), 12)
    on_face = s.normals[:, 0] == -1.0
    assert np.sum(s.weights[on_face]) == pytest.approx(1.0, rel=1e-14)


def test_surface_integral_convergence_on_circle():
    # int x^2 dS over the unit circle equals pi
    s = surface_quadrature(Ball.unit(2), 32)
    val = float(np.sum(s.weights * s.points[:, 0] ** 2))
    assert val == pytest.approx(math.pi, rel=1e-12)


def test_surface_quadrature_rejections():
    with pytest.raises(TypeError):
        surface_quadrature(Cantor1D(base=(0.0, 1.0), ratio=1.0 / 3.0, depth=3))
    with pytest.raises(TypeError):
        surface_quadrature(UnionOfBoxes((Box.interval(0.0, 1.0),)))
    with pytest.raises(ValueError):
        surface_quadrature(Box.cube(2), 0)
