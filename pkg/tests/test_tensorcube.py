"""Tensor-product entropies for cubic windows.

The product spectrum must reproduce the dense eigensolve exactly, the
two-sided comparison function must sandwich h2 of a product tuple by tuple,
and the drop-threshold bookkeeping must honor its own error bound.
"""

import math

import numpy as np
import pytest

from fermisea import (
    ProductSpectrum,
    Spectrum,
    cube_kernel,
    cube_prediction,
    entropy,
    entropy_h,
    entropy_product,
    entropy_product_report,
    g_function,
    product_spectrum_for_cube,
    sine_kernel_1d,
    spectrum,
    thm_bounds,
)
from fermisea.spectral import entropy_h2
from fermisea.tensorcube import ENUM_CAP


def test_product_spectrum_properties():
    ps = product_spectrum_for_cube(3, 5, math.pi / 2)
    assert ps.dim == 3
    assert ps.n_products == 125
    assert np.allclose(ps.axis_particle_numbers, [2.5, 2.5, 2.5])
    # one eigensolve, reused on every axis
    assert ps.axes[0] is ps.axes[1] is ps.axes[2]
    with pytest.raises(ValueError):
        ProductSpectrum(axes=())


def test_product_entropy_matches_dense_solve():
    # the Kronecker structure is exact, so the tensor path and the full
    # side^d eigensolve must agree to rounding
    for dim, side in ((2, 6), (3, 4)):
        k_f = math.pi / 2
        via_product = entropy_product(product_spectrum_for_cube(dim, side, k_f))
        via_dense = entropy(spectrum(cube_kernel(dim, side, k_f)))
        assert via_product == pytest.approx(via_dense, rel=1e-10)


def test_product_entropy_vs_brute_force():
    rng = np.random.default_rng(17)
    h = entropy_h()
    for _ in range(5):
        a = np.sort(rng.uniform(0.0, 1.0, size=7))[::-1]
        b = np.sort(rng.uniform(0.0, 1.0, size=5))[::-1]
        ps = ProductSpectrum(axes=(Spectrum(a, 7), Spectrum(b, 5)))
        brute = float(np.sum(h(np.multiply.outer(a, b))))
        assert entropy_product(ps) == pytest.approx(brute, rel=1e-12)


def test_pure_factor_axis_doubles_entropy():
    ax = spectrum(sine_kernel_1d(9, math.pi / 2))
    pure = Spectrum(values=np.array([1.0, 1.0, 0.0]), n_sites=3)
    ps = ProductSpectrum(axes=(ax, pure))
    # two unit factors copy the axis spectrum, the zero factor kills it
    assert entropy_product(ps) == pytest.approx(2.0 * entropy(ax), rel=1e-12)


def test_g_function_sandwich():
    h2 = entropy_h2()
    rng = np.random.default_rng(29)
    for d in range(2, 7):
        a = rng.uniform(0.0, 1.0, size=(20_000, d))
        g = g_function(a)
        h2_prod = h2(np.prod(a, axis=1))
        assert np.all(h2_prod <= g * (1.0 + 1e-12) + 1e-15)
        assert np.all(g / (2.0 * d) <= h2_prod * (1.0 + 1e-12) + 1e-15)
    # d = 1 collapses to equality
    t = rng.uniform(0.0, 1.0, size=100)
    assert np.allclose(g_function(t[:, None]), h2(t), atol=1e-15)


def test_g_function_interface():
    val = g_function(np.array([0.5, 0.5]))
    assert isinstance(val, float)
    assert val == pytest.approx(2.0 * 0.5 * float(entropy_h2()(0.5)), rel=1e-13)
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        g_function(np.array([0.5, 1.2]))
    with pytest.raises(ValueError):
        g_function(np.array([-0.1, 0.5]))


def test_thm_bounds_contain_exact_entropy():
    for dim, side in ((2, 10), (3, 6)):
        ps = product_spectrum_for_cube(dim, side, math.pi / 2)
        lower, upper = thm_bounds(ps)
        exact = entropy_product(ps)
        assert lower <= exact <= upper
        assert upper == pytest.approx(lower * 2.0 * dim, rel=1e-13)
    # the upper bound is the axis-entropy combination, check it by hand
    ax = spectrum(sine_kernel_1d(10, math.pi / 2))
    s1 = float(entropy(ax))
    n1 = ax.particle_number
    _, upper = thm_bounds(ProductSpectrum(axes=(ax, ax)))
    assert upper == pytest.approx(2.0 * s1 * n1, rel=1e-13)


def test_drop_threshold_bookkeeping():
    ps = product_spectrum_for_cube(2, 40, math.pi / 2)
    full = entropy_product_report(ps)
    dropped = entropy_product_report(ps, drop_eps=1e-6)
    assert full.n_dropped == 0 and full.drop_error_bound == 0.0
    assert dropped.n_dropped > 0
    assert dropped.n_products + dropped.n_dropped == full.n_products == 1600
    assert abs(dropped.value - full.value) <= dropped.drop_error_bound
    with pytest.raises(ValueError, match="entire axis"):
        entropy_product_report(ps, drop_eps=2.0)


def test_enumeration_cap():
    ps = product_spectrum_for_cube(3, 220, math.pi / 2)
    assert ps.n_products == 220**3 > ENUM_CAP
    with pytest.raises(ValueError, match="enumeration cap"):
        entropy_product(ps)
    # discarding negligible 1D eigenvalues brings it under the cap
    report = entropy_product_report(ps, drop_eps=1e-8)
    assert report.n_products <= ENUM_CAP
    assert report.drop_error_bound < 1e-3 * report.value


def test_cube_prediction():
    assert cube_prediction(2, 10.0, 100.0) == pytest.approx(
        (2.0 / 3.0) * 10.0 * math.log2(100.0), rel=1e-15
    )
    assert cube_prediction(1, 7.0, 50.0, base="nats") == pytest.approx(
        math.log(50.0) / 3.0, rel=1e-15
    )
    with pytest.raises(ValueError):
        cube_prediction(0, 1.0, 10.0)
