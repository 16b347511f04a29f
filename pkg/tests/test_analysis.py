"""Coefficient extraction from scaling sweeps.

Synthetic series with known coefficients and exponents, noiseless and with
seeded multiplicative noise, plus the guard rails: point counts, design
degeneracy in d = 1, and model selection between pure and log-augmented
power laws.
"""

import numpy as np
import pytest

from fermisea import (
    FitError,
    ScalingSeries,
    coefficient_report,
    exponent_fit,
    fit_scaling,
)
from fermisea.analysis import DEFAULT_BASIS

LEAD = "L^(d-1)*lnL"


def _series_2d(scales, values):
    return ScalingSeries(dim=2, scales=np.asarray(scales, float), values=np.asarray(values, float))


def test_series_validation():
    with pytest.raises(ValueError):
        ScalingSeries(dim=2, scales=np.array([1.0, 2.0]), values=np.array([1.0]))
    with pytest.raises(ValueError):
        ScalingSeries(dim=2, scales=np.array([[1.0, 2.0]]), values=np.array([[1.0, 2.0]]))
    with pytest.raises(ValueError):
        ScalingSeries(dim=2, scales=np.array([0.0, 2.0]), values=np.array([1.0, 2.0]))


def test_series_from_points_sorts():
    s = ScalingSeries.from_points(2, [(100.0, 5.0), (10.0, 1.0), (50.0, 3.0)], label="sweep")
    assert np.array_equal(s.scales, [10.0, 50.0, 100.0])
    assert np.array_equal(s.values, [1.0, 3.0, 5.0])
    assert len(s) == 3
    assert s.label == "sweep"


def test_exact_coefficient_recovery():
    scales = np.geomspace(10.0, 320.0, 6)
    values = 2.0 * scales * np.log(scales) + 3.0 * scales + 5.0
    fit = fit_scaling(_series_2d(scales, values))
    assert fit.coefficient(LEAD) == pytest.approx(2.0, abs=1e-9)
    assert fit.coefficient("L^(d-1)") == pytest.approx(3.0, abs=1e-9)
    assert fit.coefficient("1") == pytest.approx(5.0, abs=1e-7)
    assert fit.max_rel_residual < 1e-12
    assert fit.cond < 1e12
    assert np.allclose(fit.predict(scales), values, rtol=1e-12)
    assert fit.n_points == 6


def test_point_count_guard():
    scales = np.geomspace(10.0, 80.0, 4)
    with pytest.raises(FitError, match="cannot constrain"):
        fit_scaling(_series_2d(scales, scales))


def test_default_basis_degenerate_in_1d():
    # L^(d-1) and 1 coincide for d = 1; the condition guard must fire
    scales = np.geomspace(10.0, 1000.0, 8)
    series = ScalingSeries(dim=1, scales=scales, values=np.log(scales) / 3.0 + 0.7)
    with pytest.raises(FitError, match="condition"):
        fit_scaling(series)
    fit = fit_scaling(series, basis=(LEAD, "1"))
    assert fit.coefficient(LEAD) == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert fit.coefficient("1") == pytest.approx(0.7, abs=1e-11)


def test_unknown_basis_token():
    scales = np.geomspace(10.0, 320.0, 6)
    with pytest.raises(ValueError, match="basis token"):
        fit_scaling(_series_2d(scales, scales), basis=("L^3", "1"))


def test_coefficient_under_multiplicative_noise():
    scales = np.array([10.0, 20.0, 40.0, 80.0, 160.0, 320.0])
    truth = 2.0 * scales * np.log(scales) + 3.0 * scales
    rng = np.random.default_rng(11)
    noisy = truth * (1.0 + 0.01 * rng.standard_normal(scales.size))
    fit = fit_scaling(_series_2d(scales, noisy))
    assert fit.coefficient(LEAD) == pytest.approx(2.0, rel=0.03)
    assert fit.stderr_of(LEAD) > 0.0


def test_subsample_stability():
    # thinning the grid must move the leading coefficient by less than
    # twice the combined standard error
    scales = np.geomspace(10.0, 640.0, 13)
    truth = 2.0 * scales * np.log(scales) + 3.0 * scales + 5.0
    rng = np.random.default_rng(5)
    values = truth * (1.0 + 0.002 * rng.standard_normal(scales.size))
    full = fit_scaling(_series_2d(scales, values))
    thin = fit_scaling(_series_2d(scales[::2], values[::2]))
    drift = abs(full.coefficient(LEAD) - thin.coefficient(LEAD))
    assert drift <= 2.0 * (full.stderr_of(LEAD) + thin.stderr_of(LEAD))


def test_exponent_fit_pure_power():
    scales = np.geomspace(10.0, 1e4, 12)
    fit = exponent_fit(ScalingSeries(dim=1, scales=scales, values=3.0 * scales**1.5))
    assert not fit.log_factor
    assert fit.alpha == pytest.approx(1.5, abs=1e-12)
    assert fit.alpha_pure == fit.alpha
    assert fit.rss_pure <= fit.rss_logaug
    assert fit.stderr >= 0.0
    assert fit.residuals.size == 12
    # a constant series is the alpha = 0 corner
    flat = exponent_fit(ScalingSeries(dim=1, scales=scales, values=np.full(12, 7.0)))
    assert flat.alpha == pytest.approx(0.0, abs=1e-12)
    assert not flat.log_factor


def test_exponent_fit_selects_log_factor():
    scales = np.geomspace(10.0, 1e4, 12)
    fit = exponent_fit(ScalingSeries(dim=1, scales=scales, values=0.5 * scales**2 * np.log(scales)))
    assert fit.log_factor
    assert fit.alpha == pytest.approx(2.0, abs=1e-12)
    assert fit.rss_logaug < fit.rss_pure
    # the pure model smears the log into a biased exponent
    assert fit.alpha_pure > 2.0


def test_exponent_fit_validation():
    good = np.geomspace(10.0, 100.0, 4)
    with pytest.raises(FitError, match="4 points"):
        exponent_fit(ScalingSeries(dim=1, scales=good[:3], values=good[:3]))
    with pytest.raises(FitError, match="positive"):
        exponent_fit(ScalingSeries(dim=1, scales=good, values=np.array([1.0, -1.0, 1.0, 1.0])))
    with pytest.raises(FitError, match="scales > 1"):
        exponent_fit(ScalingSeries(dim=1, scales=np.array([0.5, 2.0, 4.0, 8.0]), values=good))


def test_coefficient_report():
    scales = np.geomspace(10.0, 320.0, 6)
    values = 2.0 * scales * np.log(scales) + 3.0 * scales + 5.0
    series = ScalingSeries(dim=2, scales=scales, values=values, label="entropy sweep")
    report = coefficient_report(series, predicted=2.0)
    assert report.measured == pytest.approx(2.0, abs=1e-9)
    assert report.ratio == pytest.approx(1.0, abs=1e-9)
    assert report.confidence < 1e-8
    assert report.label == "entropy sweep"
    assert report.fit.basis == DEFAULT_BASIS
