"""Continuum particle-number variance of scaled free-fermion ground states.

With P the Fermi-sea projector (momentum region Gamma) and Q restriction to
the scaled window L.Omega, the count statistics of the window are

    <N>          = Tr PQP        = (L/2pi)^d Vol(Omega) Vol(Gamma),
    (Delta N)^2  = Tr PQP - Tr (PQP)^2,

and the second trace reduces to a purely geometric integral

    Tr (PQP)^2 = (L/2pi)^(2d) int A_Gamma(q) |chi_Omega^hat(L q)|^2 dq,     (*)

pairing the autocorrelation of one region with the squared indicator
transform of the other.  The two roles can be swapped (the integral is
symmetric under Omega <-> Gamma up to the same change of variables), which
is used both as an accuracy cross-check and to pick the cheaper orientation.

Evaluation strategy, chosen per region pair:

* box x box: (*) factorizes per axis and each axis factor has a closed form
  in sine and cosine integrals; exact to rounding at any scale.
* ball x ball: radial reduction of (*), panel Gauss quadrature.
* anything else: direct panel quadrature of (*), with panel boundaries
  aligned to the kinks of the piecewise autocorrelation factor and panel
  widths tied to the oscillation scale ~ pi / (L diam Omega) of the
  transform factor.

Unions of intervals (including the finite-depth Cantor construction) are
handled exactly on both sides of the integrand: autocorrelations by interval
arithmetic, transforms by the nested product form.  ``fractal_variance_sweep``
packages the window sweep used to probe the anomalous growth
(Delta N)^2 ~ L^(d - beta) of rough-boundary regions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from . import geometry
from .analysis import ScalingSeries
from .errors import QuadratureError
from .geometry import Ball, Box, Cantor1D, Region, UnionOfBoxes

__all__ = [
    "VarianceResult",
    "tr_pqp",
    "tr_pqp_sq",
    "variance_continuum",
    "fractal_variance_sweep",
]


@dataclass(frozen=True)
class VarianceResult:
    """Count statistics of one scaled window."""

    scale: float
    tr_pqp: float
    tr_pqp_sq: float
    variance: float
    error_estimate: float


def tr_pqp(omega: Region, gamma: Region, scale: float) -> float:
    """Mean particle number (L/2pi)^d Vol(Omega) Vol(Gamma)."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    d = omega.dim
    if gamma.dim != d:
        raise ValueError("omega and gamma must share a dimension")
    return (scale / (2.0 * np.pi)) ** d * geometry.volume(omega) * geometry.volume(gamma)


###############################################################################
#! Closed form: box x box
###############################################################################


def _axis_factor(x: float) -> float:
    """(L/2pi)^2 int (b-|q|)_+ |ft interval a|^2(Lq) dq as a function of x = Lab/2.

    Integrating sin^2(alpha q)/q^2 and /q against the tent gives

        (2/pi^2) [ x Si(2x) - sin^2 x - (ln 2x + gamma - Ci 2x) / 2 ].

    Below x ~ 1e-3 the bracket is evaluated by its series x^2/2 - x^4/36 to
    dodge the ln-Ci cancellation.
    """
    if x < 1e-3:
        return (x * x / np.pi**2) * (1.0 - x * x / 18.0)
    si, ci = special.sici(2.0 * x)
    bracket = x * si - np.sin(x) ** 2 - 0.5 * (np.log(2.0 * x) + np.euler_gamma - ci)
    return 2.0 * bracket / np.pi**2


def _boxes_tr2(omega: Box, gamma: Box, scale: float) -> float:
    lo, lg = omega.lengths, gamma.lengths
    out = 1.0
    for a, b in zip(lo, lg):
        out *= _axis_factor(scale * a * b / 2.0)
    return out


###############################################################################
#! Panel Gauss quadrature
###############################################################################


def _panel_quad_1d(f, boundaries: np.ndarray, order: int) -> float:
    """Integrate a vectorized f over consecutive panels with Gauss-Legendre."""
    t, w = np.polynomial.legendre.leggauss(order)
    mid = 0.5 * (boundaries[1:] + boundaries[:-1])
    half = 0.5 * (boundaries[1:] - boundaries[:-1])
    nodes = mid[:, None] + half[:, None] * t[None, :]
    vals = f(nodes.ravel()).reshape(nodes.shape)
    return float(np.sum(half * (vals @ w)))


def _interval_count(region: Region) -> int:
    if region.dim != 1:
        return 1
    try:
        starts, _ = geometry.intervals_1d(region)
    except TypeError:
        return 1
    return starts.size


def _autocorr_kinks_1d(region: Region) -> np.ndarray:
    """Break points of the piecewise-linear 1D autocorrelation."""
    starts, widths = geometry.intervals_1d(region)
    if starts.size == 1:
        b = widths[0]
        return np.array([-b, 0.0, b])
    if starts.size**2 > 400_000:
        raise QuadratureError("too many interval pairs for kink alignment")
    diffs = (starts[:, None] - starts[None, :]).ravel()
    if np.allclose(widths, widths[0]):
        w = widths[0]
        return np.unique(np.concatenate([diffs - w, diffs, diffs + w]))
    ends = starts + widths
    de = (ends[:, None] - ends[None, :]).ravel()
    dse = (starts[:, None] - ends[None, :]).ravel()
    des = (ends[:, None] - starts[None, :]).ravel()
    return np.unique(np.concatenate([diffs, de, dse, des]))


def _tr2_quad_1d(omega: Region, gamma: Region, scale: float):
    """Generic 1D evaluation of (*): A on gamma, transform on omega.

    The caller orients the pair so that the transform side is the one with
    the cheap product/sum form and the autocorrelation side contributes few
    kinks.  Returns (value, error_estimate).
    """
    d_om = geometry.diameter(omega)
    support = geometry.diameter(gamma)
    # ~2 panels per oscillation period of |chi_omega|^2(Lq)
    n_osc = int(np.ceil(2.0 * support * scale * d_om / np.pi)) + 8
    if n_osc > 4_000_000:
        raise QuadratureError(f"oscillation grid of {n_osc} panels refused")
    grid = np.linspace(-support, support, n_osc + 1)
    kinks = _autocorr_kinks_1d(gamma)
    kinks = kinks[(kinks > -support) & (kinks < support)]
    boundaries = np.unique(np.concatenate([grid, kinks]))

    def integrand(q):
        return np.asarray(geometry.autocorrelation(gamma, q)) * np.asarray(
            geometry.indicator_ft_sq(omega, scale * q)
        )

    coarse = _panel_quad_1d(integrand, boundaries, 8)
    fine = _panel_quad_1d(integrand, boundaries, 16)
    pref = (scale / (2.0 * np.pi)) ** 2
    return pref * fine, pref * abs(fine - coarse)


def _radial_width(region: Region) -> float:
    return geometry.diameter(region)


def _tr2_quad_radial(omega: Ball, gamma: Ball, scale: float):
    """Ball x ball reduction of (*) to a radial integral (d = 2, 3)."""
    d = omega.dim
    sphere = {2: 2.0 * np.pi, 3: 4.0 * np.pi}[d]
    support = 2.0 * gamma.radius
    n = int(np.ceil(4.0 * scale * omega.radius * gamma.radius / np.pi)) + 16
    if n > 2_000_000:
        raise QuadratureError(f"radial grid of {n} panels refused")
    boundaries = np.linspace(0.0, support, n + 1)
    zero = np.zeros(d - 1)

    def integrand(q):
        shifts = np.column_stack([q] + [np.full(q.size, 0.0)] * (d - 1))
        ac = np.asarray(geometry.autocorrelation(gamma, shifts))
        ks = np.column_stack([scale * q] + [np.zeros(q.size)] * (d - 1))
        ft = np.asarray(geometry.indicator_ft_sq(omega, ks))
        return ac * ft * q ** (d - 1)

    coarse = _panel_quad_1d(integrand, boundaries, 8)
    fine = _panel_quad_1d(integrand, boundaries, 16)
    pref = (scale / (2.0 * np.pi)) ** (2 * d) * sphere
    return pref * fine, pref * abs(fine - coarse)


def _tr2_quad_tensor(omega: Region, gamma: Region, scale: float):
    """Mixed-shape d >= 2 evaluation of (*) on a tensor panel grid."""
    d = omega.dim
    if isinstance(omega, (UnionOfBoxes, Cantor1D)) or isinstance(
        gamma, (UnionOfBoxes, Cantor1D)
    ):
        raise ValueError("union regions are supported in d = 1 only")

    if isinstance(gamma, Box):
        extents = gamma.lengths
        kink_lists = [np.array([-e, 0.0, e]) for e in extents]
    else:
        extents = np.full(d, 2.0 * gamma.radius)
        kink_lists = [np.array([]) for _ in range(d)]
    osc_width = (
        np.asarray(omega.lengths) if isinstance(omega, Box) else np.full(d, 2.0 * omega.radius)
    )

    order = 8 if d == 2 else 5
    axes = []
    total_panels = 1
    for j in range(d):
        period = 2.0 * np.pi / (scale * osc_width[j])
        n = int(np.ceil(2.0 * extents[j] / period)) + 4
        grid = np.linspace(-extents[j], extents[j], n + 1)
        b = np.unique(np.concatenate([grid, kink_lists[j]]))
        axes.append(b)
        total_panels *= b.size - 1
    if total_panels * order**d > 40_000_000:
        raise QuadratureError("tensor quadrature grid too large")

    def run(p_order: int) -> float:
        t, w = np.polynomial.legendre.leggauss(p_order)
        nodes_1d, weights_1d = [], []
        for b in axes:
            mid = 0.5 * (b[1:] + b[:-1])
            half = 0.5 * (b[1:] - b[:-1])
            nodes_1d.append((mid[:, None] + half[:, None] * t[None, :]).ravel())
            weights_1d.append((half[:, None] * w[None, :]).ravel())
        mesh = np.meshgrid(*nodes_1d, indexing="ij")
        pts = np.column_stack([m.ravel() for m in mesh])
        wmesh = np.meshgrid(*weights_1d, indexing="ij")
        wts = np.prod(np.stack([m.ravel() for m in wmesh]), axis=0)
        total = 0.0
        chunk = 2_000_000
        for i in range(0, pts.shape[0], chunk):
            p = pts[i : i + chunk]
            vals = np.asarray(geometry.autocorrelation(gamma, p)) * np.asarray(
                geometry.indicator_ft_sq(omega, scale * p)
            )
            total += float(vals @ wts[i : i + chunk])
        return total

    fine = run(order)
    coarse = run(order - 2)
    pref = (scale / (2.0 * np.pi)) ** (2 * d)
    return pref * fine, pref * abs(fine - coarse)


def _normalize_1d(region: Region) -> Region:
    """d = 1 balls are intervals; fold them into boxes."""
    if isinstance(region, Ball) and region.dim == 1:
        c, r = region.center[0], region.radius
        return Box.interval(c - r, c + r)
    return region


def _tr2_impl(omega: Region, gamma: Region, scale: float):
    if scale <= 0:
        raise ValueError("scale must be positive")
    if omega.dim != gamma.dim:
        raise ValueError("omega and gamma must share a dimension")
    if omega.dim == 1:
        omega, gamma = _normalize_1d(omega), _normalize_1d(gamma)
    if isinstance(omega, Box) and isinstance(gamma, Box):
        val = _boxes_tr2(omega, gamma, scale)
        return val, 1e-14 * max(abs(val), 1.0)
    if isinstance(omega, Ball) and isinstance(gamma, Ball):
        return _tr2_quad_radial(omega, gamma, scale)
    if omega.dim == 1:
        # put the region with more intervals on the transform side: its
        # nested/sum form is cheap there, while the autocorrelation side
        # must enumerate kinks
        if _interval_count(gamma) > _interval_count(omega):
            omega, gamma = gamma, omega
        return _tr2_quad_1d(omega, gamma, scale)
    return _tr2_quad_tensor(omega, gamma, scale)


def tr_pqp_sq(omega: Region, gamma: Region, scale: float) -> float:
    """Tr (PQP)^2 via the geometric integral (*), see module docstring."""
    return _tr2_impl(omega, gamma, scale)[0]


def variance_continuum(omega: Region, gamma: Region, scale: float) -> VarianceResult:
    """Number variance Tr PQP - Tr (PQP)^2 with an error estimate.

    Raises ``QuadratureError`` if the computed variance is negative beyond
    the quadrature error budget (the exact quantity is a variance, so a
    violation means the integral, not the physics, failed).
    """
    t1 = tr_pqp(omega, gamma, scale)
    t2, err = _tr2_impl(omega, gamma, scale)
    var = t1 - t2
    budget = max(10.0 * err, 1e-10 * max(t1, 1.0))
    if var < -budget:
        raise QuadratureError(
            f"variance {var:.3e} < 0 beyond error budget {budget:.3e} at scale {scale:g}"
        )
    if var < 0.0:
        var = 0.0
    return VarianceResult(
        scale=scale, tr_pqp=t1, tr_pqp_sq=t2, variance=var, error_estimate=err
    )


def fractal_variance_sweep(
    omega: Region, gamma: Region, scales
) -> tuple[ScalingSeries, list[VarianceResult]]:
    """Variance sweep for rough (Cantor) regions over a window of scales.

    At least one region must be a Cantor construction.  Scales are capped at
    the resolution limit of each Cantor region: probing finer than the leaf
    width (L > 1 / leaf_width, i.e. beyond (2 / (1 - ratio))^depth on a unit
    base) leaves the self-similar window and the growth law saturates.

    Returns the (L, variance) series plus the full per-point results.
    """
    cantors = [r for r in (omega, gamma) if isinstance(r, Cantor1D)]
    if not cantors:
        raise ValueError("fractal sweep needs at least one Cantor1D region")
    scales = np.asarray(list(scales), dtype=float)
    if scales.size == 0:
        raise ValueError("empty scale grid")
    for c in cantors:
        l_max = 1.0 / c.piece_width
        if np.any(scales > l_max * (1.0 + 1e-12)):
            raise ValueError(
                f"scale exceeds the resolution guard {l_max:.6g} of a depth-"
                f"{c.depth} Cantor region"
            )
    results = [variance_continuum(omega, gamma, float(s)) for s in scales]
    series = ScalingSeries(
        dim=omega.dim,
        scales=np.array([r.scale for r in results]),
        values=np.array([r.variance for r in results]),
        label="fractal_variance",
    )
    return series, results
