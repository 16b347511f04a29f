"""Two-term asymptotics of Tr f(PQP) and the geometric boundary coefficient.

For a window scaled by L (coordinate region Omega, Fermi sea Gamma) the trace
of a smooth-enough f applied to the restricted projector obeys

    Tr f(PQP) = (L / 2 pi)^d f(1) Vol(Omega) Vol(Gamma)
              + (L / 2 pi)^(d-1) * (ln L / (4 pi^2)) * U(f) * J(Omega, Gamma)
              + lower order,

with two independent factors in the boundary term:

* the analytic factor

      U(f) = int_0^1 (f(t) - t f(1)) / (t (1 - t)) dt,

  a linear functional of f alone (needs f(0) = 0); and

* the geometric factor

      J = int_(dOmega) int_(dGamma) |n_x . n_p| dS_x dS_p,

  a product-of-boundaries integral coupling the two regions only through
  the angle between their normals.  For unit cubes J = 4d (each face pairs
  with the two parallel faces of the other cube); in d = 1 a region's
  boundary is its endpoint set with unit weights, so intervals give J = 4.

For the binary entropy in bits, U(h) = pi^2 / (3 ln 2), which combines with
ln L / (4 pi^2) into the clean coefficient (1/12) J log2 L.  For the
number-variance weight t(1-t), U = 1 exactly.  For monomials t^n the
correction is negative, U(t^n) = -sum_{k=1}^{n-1} 1/k: each extra power can
only lose trace since 0 <= lambda <= 1, and lattice sweeps confirm both sign
and size.

The entropy function h is not smooth at 0 and 1, so for f = h the two-term
formula has the status of a (numerically well-supported) conjecture; all
entropy predictions made here inherit that status and are tested against
lattice spectra at stated tolerances rather than asserted exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .geometry import Region, surface_quadrature, volume
from .spectral import EntropyFunctional

__all__ = [
    "AsymptoticPrediction",
    "widom_coefficient",
    "u_functional",
    "trace_prediction",
    "entropy_prediction",
    "variance_prediction",
    "moment_prediction_1d",
]


def widom_coefficient(omega: Region, gamma: Region, order: int = 32) -> float:
    """Boundary-pair coefficient J = sum over surface samples of w w' |n . n'|.

    Both regions must be boxes or balls of the same dimension (boundary
    quadratures exist); ``order`` controls the per-dimension resolution of
    each surface rule.  For box/box pairs the normals are piecewise
    constant and the result is exact at any order.
    """
    if omega.dim != gamma.dim:
        raise ValueError("omega and gamma must share a dimension")
    sx = surface_quadrature(omega, order)
    sp = surface_quadrature(gamma, order)
    total = 0.0
    # chunk the |N_x . N_p^T| matrix to keep memory flat for fine rules
    chunk = max(1, 2_000_000 // max(len(sp), 1))
    for i in range(0, len(sx), chunk):
        dots = np.abs(sx.normals[i : i + chunk] @ sp.normals.T)
        total += float(sx.weights[i : i + chunk] @ dots @ sp.weights)
    return total


def u_functional(f: EntropyFunctional, tol: float = 1e-10) -> float:
    """U(f) = int_0^1 (f(t) - t f(1)) / (t (1 - t)) dt.

    Requires f(0) = 0, otherwise the integral diverges at the left edge.
    Both endpoints are tamed by substituting t = s^2 and 1 - t = s^2, after
    which adaptive quadrature handles the (at worst logarithmic) remains.
    """
    f0 = float(f(np.array(0.0)))
    if f0 != 0.0:
        raise ValueError(f"f(0) = {f0} != 0, U(f) diverges")
    f1 = f.at_one

    def left(s):  # t = s^2 on (0, 1/2]
        t = s * s
        return 2.0 * (f(t) - t * f1) / (s * (1.0 - t))

    def right(s):  # t = 1 - s^2 on [1/2, 1)
        t = 1.0 - s * s
        return 2.0 * (f(t) - t * f1) / (t * s)

    s_half = np.sqrt(0.5)
    a, ea = integrate.quad(left, 0.0, s_half, epsabs=tol * 0.1, epsrel=tol * 0.1, limit=200)
    b, eb = integrate.quad(right, 0.0, s_half, epsabs=tol * 0.1, epsrel=tol * 0.1, limit=200)
    return a + b


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Two-term prediction for Tr f(PQP) at one scale."""

    scale: float
    dim: int
    leading: float
    subleading: float
    j_coefficient: float
    u_value: float
    f_label: str

    @property
    def total(self) -> float:
        return self.leading + self.subleading


def trace_prediction(
    f: EntropyFunctional,
    omega: Region,
    gamma: Region,
    scale: float,
    order: int = 32,
) -> AsymptoticPrediction:
    """Evaluate both terms of the trace asymptotics at scale L.

    leading    = (L/2pi)^d f(1) Vol(Omega) Vol(Gamma)
    subleading = (L/2pi)^(d-1) (ln L / 4 pi^2) U(f) J(Omega, Gamma)

    Meaningful for L > 1 (the subleading term changes sign below).
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    d = omega.dim
    j = widom_coefficient(omega, gamma, order)
    u = u_functional(f)
    pref = scale / (2.0 * np.pi)
    leading = pref**d * f.at_one * volume(omega) * volume(gamma)
    subleading = pref ** (d - 1) * (np.log(scale) / (4.0 * np.pi**2)) * u * j
    return AsymptoticPrediction(
        scale=scale,
        dim=d,
        leading=leading,
        subleading=subleading,
        j_coefficient=j,
        u_value=u,
        f_label=f.label,
    )


def entropy_prediction(
    omega: Region,
    gamma: Region,
    scale: float,
    base: str = "bits",
    order: int = 32,
) -> float:
    """Leading entropy growth (1/12) J (L/2pi)^(d-1) log L.

    Uses the exact value (ln 2 / 4 pi^2) U(h_bits) = 1/12 of the analytic
    factor, so only the geometric J is computed numerically.  ``base``
    selects the log (bits by default, matching the entropy unit).
    """
    if scale <= 1.0:
        raise ValueError("entropy prediction needs scale > 1")
    j = widom_coefficient(omega, gamma, order)
    d = omega.dim
    log_l = np.log2(scale) if base == "bits" else np.log(scale)
    return (j / 12.0) * (scale / (2.0 * np.pi)) ** (d - 1) * float(log_l)


def variance_prediction(
    omega: Region, gamma: Region, scale: float, order: int = 32
) -> float:
    """Number-variance growth (1/4 pi^2) J (L/2pi)^(d-1) ln L  (U(t(1-t)) = 1)."""
    if scale <= 1.0:
        raise ValueError("variance prediction needs scale > 1")
    j = widom_coefficient(omega, gamma, order)
    d = omega.dim
    return (j / (4.0 * np.pi**2)) * (scale / (2.0 * np.pi)) ** (d - 1) * np.log(scale)


def moment_prediction_1d(n: int, scale: float) -> float:
    """Two-term prediction of Tr (PQP)^n for unit intervals in d = 1.

    L / (2 pi) + (ln L / pi^2) U(t^n) with the exact harmonic value
    U(t^n) = -sum_{k=1}^{n-1} 1/k; J = 4 for interval endpoints.
    """
    if n < 2:
        raise ValueError("moment order must be >= 2 (n = 1 has no log term)")
    if scale <= 1.0:
        raise ValueError("moment prediction needs scale > 1")
    u_n = -sum(1.0 / k for k in range(1, n))
    return scale / (2.0 * np.pi) + (np.log(scale) / np.pi**2) * u_n
