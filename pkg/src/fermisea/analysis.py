"""Least-squares extraction of scaling coefficients and growth exponents.

Sweeps produce (scale, value) series; the physics lives in how the values
grow.  Two fitting modes cover everything downstream:

* ``fit_scaling``: linear least squares on a named basis of scaling
  functions (products of powers L^(d-1), L^(d-2) and ln L), returning the
  coefficients with standard errors.  Used when the functional form is
  known and a coefficient is compared against a geometric prediction.

* ``exponent_fit``: log-log fit for an unknown power law, with model
  selection between pure L^alpha and L^alpha ln L by residual comparison.
  Used for rough-boundary sweeps where only the exponent is predicted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import FitError

__all__ = [
    "ScalingSeries",
    "FitResult",
    "ExponentFit",
    "CoefficientReport",
    "BASIS_CHOICES",
    "DEFAULT_BASIS",
    "fit_scaling",
    "exponent_fit",
    "coefficient_report",
]

# recognized basis tokens; d is the series dimension, logs are natural
BASIS_CHOICES = ("L^(d-1)*lnL", "L^(d-1)", "L^(d-2)*lnL", "L^(d-2)", "1")
DEFAULT_BASIS = ("L^(d-1)*lnL", "L^(d-1)", "1")

COND_LIMIT = 1e12


@dataclass(frozen=True)
class ScalingSeries:
    """A sweep of some scalar quantity against the window scale L."""

    dim: int
    scales: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        s = np.asarray(self.scales, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if s.shape != v.shape or s.ndim != 1:
            raise ValueError("scales and values must be matching 1D arrays")
        if np.any(s <= 0):
            raise ValueError("scales must be positive")
        object.__setattr__(self, "scales", s)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_points(cls, dim: int, points, label: str = "") -> "ScalingSeries":
        pts = sorted(points)
        return cls(
            dim=dim,
            scales=np.array([p[0] for p in pts], dtype=float),
            values=np.array([p[1] for p in pts], dtype=float),
            label=label,
        )

    def __len__(self) -> int:
        return self.scales.size


def _basis_column(token: str, scales: np.ndarray, dim: int) -> np.ndarray:
    l = scales
    if token == "1":
        return np.ones_like(l)
    if token == "L^(d-1)*lnL":
        return l ** (dim - 1) * np.log(l)
    if token == "L^(d-1)":
        return l ** (dim - 1.0)
    if token == "L^(d-2)*lnL":
        return l ** (dim - 2) * np.log(l)
    if token == "L^(d-2)":
        return l ** (dim - 2.0)
    raise ValueError(f"unknown basis token {token!r}; choices: {BASIS_CHOICES}")


@dataclass(frozen=True)
class FitResult:
    basis: tuple[str, ...]
    coefficients: np.ndarray
    stderr: np.ndarray
    residuals: np.ndarray
    max_rel_residual: float
    cond: float
    dim: int
    n_points: int

    def coefficient(self, token: str) -> float:
        return float(self.coefficients[self.basis.index(token)])

    def stderr_of(self, token: str) -> float:
        return float(self.stderr[self.basis.index(token)])

    def predict(self, scales) -> np.ndarray:
        """Evaluate the fitted model on a grid of scales."""
        s = np.asarray(scales, dtype=float)
        x = np.column_stack([_basis_column(t, s, self.dim) for t in self.basis])
        return x @ self.coefficients


def fit_scaling(
    series: ScalingSeries, basis: tuple[str, ...] = DEFAULT_BASIS
) -> FitResult:
    """Least-squares fit of the series onto named scaling functions.

    Requires more points than coefficients (strictly: n > p + 1) and a
    design matrix condition number below 1e12.  Note the default basis is
    degenerate in d = 1, where L^(d-1) and 1 coincide; pass an explicit
    two-term basis there.
    """
    basis = tuple(basis)
    n, p = len(series), len(basis)
    if n <= p + 1:
        raise FitError(f"{n} points cannot constrain {p} coefficients")
    x = np.column_stack([_basis_column(t, series.scales, series.dim) for t in basis])
    cond = float(np.linalg.cond(x))
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise FitError(
            f"design matrix condition {cond:.3e} exceeds {COND_LIMIT:.0e} "
            f"for basis {basis} in d = {series.dim}"
        )
    coef, _, _, _ = np.linalg.lstsq(x, series.values, rcond=None)
    resid = series.values - x @ coef
    dof = n - p
    sigma2 = float(resid @ resid) / dof if dof > 0 else np.inf
    cov = sigma2 * np.linalg.inv(x.T @ x)
    stderr = np.sqrt(np.maximum(np.diag(cov), 0.0))
    scale_ref = np.maximum(np.abs(series.values), 1e-300)
    return FitResult(
        basis=basis,
        coefficients=coef,
        stderr=stderr,
        residuals=resid,
        max_rel_residual=float(np.max(np.abs(resid) / scale_ref)),
        cond=cond,
        dim=series.dim,
        n_points=n,
    )


@dataclass(frozen=True)
class ExponentFit:
    """Power-law fit with ln L model selection.

    ``alpha`` and ``residuals`` belong to the selected model;
    ``log_factor`` says whether the L^alpha ln L variant won.
    """

    alpha: float
    log_factor: bool
    residuals: np.ndarray
    alpha_pure: float
    alpha_logaug: float
    rss_pure: float
    rss_logaug: float
    stderr: float


def exponent_fit(series: ScalingSeries) -> ExponentFit:
    """Fit value ~ L^alpha vs value ~ L^alpha ln L and keep the better model.

    Both models are linear in (ln L, 1) after taking logs; the ln L-augmented
    model subtracts ln ln L from the target (its coefficient is fixed at 1,
    so the comparison is fair: equal parameter counts).  Needs at least 4
    points, positive values and scales > 1.
    """
    if len(series) < 4:
        raise FitError("exponent fit needs at least 4 points")
    if np.any(series.values <= 0):
        raise FitError("exponent fit needs positive values")
    if np.any(series.scales <= 1.0):
        raise FitError("exponent fit needs scales > 1")
    lx = np.log(series.scales)
    x = np.column_stack([lx, np.ones_like(lx)])

    def solve(target):
        coef, _, _, _ = np.linalg.lstsq(x, target, rcond=None)
        r = target - x @ coef
        rss = float(r @ r)
        dof = len(target) - 2
        sigma2 = rss / dof if dof > 0 else np.inf
        se = float(np.sqrt(sigma2 * np.linalg.inv(x.T @ x)[0, 0]))
        return float(coef[0]), rss, r, se

    ly = np.log(series.values)
    a_pure, rss_pure, r_pure, se_pure = solve(ly)
    a_aug, rss_aug, r_aug, se_aug = solve(ly - np.log(lx))
    if rss_aug < rss_pure:
        return ExponentFit(
            alpha=a_aug,
            log_factor=True,
            residuals=r_aug,
            alpha_pure=a_pure,
            alpha_logaug=a_aug,
            rss_pure=rss_pure,
            rss_logaug=rss_aug,
            stderr=se_aug,
        )
    return ExponentFit(
        alpha=a_pure,
        log_factor=False,
        residuals=r_pure,
        alpha_pure=a_pure,
        alpha_logaug=a_aug,
        rss_pure=rss_pure,
        rss_logaug=rss_aug,
        stderr=se_pure,
    )


@dataclass(frozen=True)
class CoefficientReport:
    """Measured-vs-predicted record for one leading coefficient."""

    label: str
    measured: float
    predicted: float
    ratio: float
    confidence: float  # relative standard error of the measured coefficient
    fit: FitResult = field(repr=False)


def coefficient_report(
    series: ScalingSeries,
    predicted: float,
    basis: tuple[str, ...] = DEFAULT_BASIS,
    label: str = "",
) -> CoefficientReport:
    """Fit the series and compare the first basis coefficient to a prediction."""
    fit = fit_scaling(series, basis)
    measured = float(fit.coefficients[0])
    rel_se = float(fit.stderr[0] / abs(measured)) if measured != 0 else np.inf
    return CoefficientReport(
        label=label or series.label,
        measured=measured,
        predicted=float(predicted),
        ratio=measured / predicted if predicted != 0 else np.inf,
        confidence=rel_se,
        fit=fit,
    )
