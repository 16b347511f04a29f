"""Lattice correlation matrices of free-fermion ground states and their spectra.

The ground-state two-point function <c_x^dag c_y> of free fermions filling a
momentum region Gamma is, on the integer lattice,

    g(x - y) = (2 pi)^(-d) int_Gamma exp(i k.(x - y)) dk.

Restricting x, y to a finite window of sites gives a Hermitian matrix whose
eigenvalues lie in [0, 1]; every reduced-state quantity used here is a sum
of a scalar function over that spectrum:

    entanglement entropy   S = sum_i h(lambda_i),
    particle number        N = sum_i lambda_i,
    number variance        (Delta N)^2 = sum_i lambda_i (1 - lambda_i).

Three Fermi seas are provided: the symmetric interval [-k_F, k_F] in d = 1
(sine kernel), the disk of radius k_F in d = 2 (Bessel kernel), and the cube
[-k_F, k_F]^d whose kernel factorizes into a product of sine kernels per
axis.  The cube factorization is what makes exact tensor-product spectra
possible (see ``tensorcube``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg, special

from .errors import SpectrumRangeError

__all__ = [
    "EntropyFunctional",
    "entropy_h",
    "entropy_h1",
    "entropy_h2",
    "number_variance_weight",
    "monomial",
    "polynomial",
    "CorrelationMatrix",
    "Spectrum",
    "sine_kernel_1d",
    "disk_kernel_2d",
    "disk_correlation",
    "cube_kernel",
    "spectrum",
    "spectral_sum",
    "entropy",
    "number_variance",
    "SITE_CAP",
]

# Dense symmetric eigensolves only; anything larger than this is refused
# rather than silently taking minutes.
SITE_CAP = 5000


###############################################################################
#! Scalar functionals of the spectrum
###############################################################################

_LN2 = np.log(2.0)


@dataclass(frozen=True)
class EntropyFunctional:
    """A scalar function f applied eigenvalue-wise to a spectrum.

    Kinds
    -----
    "h"          binary entropy  h(t) = -t log t - (1-t) log(1-t)
    "h1"         -t log t                     (the log-concave half)
    "h2"         -(1-t) log(1-t)              (the half that needs bounds)
    "t1mt"       t (1 - t), the number-variance weight
    "monomial"   t^power, power >= 1
    "polynomial" sum_j coeffs[j] t^(j+1)      (no constant term, so f(0) = 0)

    ``base`` ("bits" or "nats") rescales the logarithmic kinds; the
    polynomial kinds ignore it.  All kinds satisfy f(0) = 0, which the
    boundary-coefficient functional U(f) requires.
    """

    kind: str
    base: str = "bits"
    power: int | None = None
    coeffs: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("h", "h1", "h2", "t1mt", "monomial", "polynomial"):
            raise ValueError(f"unknown functional kind {self.kind!r}")
        if self.base not in ("bits", "nats"):
            raise ValueError("base must be 'bits' or 'nats'")
        if self.kind == "monomial" and (self.power is None or self.power < 1):
            raise ValueError("monomial needs power >= 1")
        if self.kind == "polynomial" and not self.coeffs:
            raise ValueError("polynomial needs coefficients")

    @property
    def _scale(self) -> float:
        return 1.0 / _LN2 if self.base == "bits" else 1.0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "h":
            v = -(special.xlogy(t, t) + special.xlogy(1.0 - t, 1.0 - t))
            return v * self._scale
        if self.kind == "h1":
            return -special.xlogy(t, t) * self._scale
        if self.kind == "h2":
            return -special.xlogy(1.0 - t, 1.0 - t) * self._scale
        if self.kind == "t1mt":
            return t * (1.0 - t)
        if self.kind == "monomial":
            return t**self.power
        v = np.zeros_like(t)
        for j, c in enumerate(self.coeffs):
            v += c * t ** (j + 1)
        return v

    @property
    def at_one(self) -> float:
        """f(1), the weight of the volume (leading) term."""
        if self.kind in ("h", "h1", "h2", "t1mt"):
            return 0.0
        if self.kind == "monomial":
            return 1.0
        return float(sum(self.coeffs))

    @property
    def label(self) -> str:
        if self.kind == "monomial":
            return f"t^{self.power}"
        if self.kind == "polynomial":
            return "poly(" + ",".join(f"{c:g}" for c in self.coeffs) + ")"
        if self.kind == "t1mt":
            return "t(1-t)"
        return f"{self.kind}[{self.base}]"


def entropy_h(base: str = "bits") -> EntropyFunctional:
    return EntropyFunctional("h", base=base)


def entropy_h1(base: str = "bits") -> EntropyFunctional:
    return EntropyFunctional("h1", base=base)


def entropy_h2(base: str = "bits") -> EntropyFunctional:
    return EntropyFunctional("h2", base=base)


def number_variance_weight() -> EntropyFunctional:
    return EntropyFunctional("t1mt")


def monomial(power: int) -> EntropyFunctional:
    return EntropyFunctional("monomial", power=int(power))


def polynomial(coeffs) -> EntropyFunctional:
    return EntropyFunctional("polynomial", coeffs=tuple(float(c) for c in coeffs))


###############################################################################
#! Correlation kernels
###############################################################################


@dataclass(frozen=True)
class CorrelationMatrix:
    """Dense ground-state correlation matrix restricted to a site window."""

    matrix: np.ndarray
    model: str      # "sine", "disk" or "cube"
    k_f: float
    dim: int

    @property
    def n_sites(self) -> int:
        return self.matrix.shape[0]

    @property
    def filling(self) -> float:
        """Fraction of the Brillouin zone occupied by the Fermi sea."""
        if self.model == "disk":
            return self.k_f**2 / (4.0 * np.pi)
        return (self.k_f / np.pi) ** self.dim


def _check_k_f(k_f: float):
    if not 0.0 < k_f <= np.pi:
        raise ValueError(f"k_f = {k_f} outside (0, pi]")


def _sine_row(n: int, k_f: float) -> np.ndarray:
    r = np.arange(n, dtype=float)
    row = np.empty(n)
    row[0] = k_f / np.pi
    row[1:] = np.sin(k_f * r[1:]) / (np.pi * r[1:])
    return row


def sine_kernel_1d(n_sites: int, k_f: float) -> CorrelationMatrix:
    """1D chain of ``n_sites`` sites, Fermi sea [-k_f, k_f].

    Entries sin(k_f (m - n)) / (pi (m - n)), diagonal k_f / pi.
    """
    _check_k_f(k_f)
    if n_sites < 1:
        raise ValueError("n_sites must be >= 1")
    return CorrelationMatrix(
        matrix=linalg.toeplitz(_sine_row(n_sites, k_f)),
        model="sine",
        k_f=k_f,
        dim=1,
    )


def disk_correlation(k_f: float, r) -> np.ndarray:
    """Radial profile of the 2D disk-sea correlation function.

    k_f J_1(k_f r) / (2 pi r) for r > 0 and k_f^2 / (4 pi) at r = 0.
    """
    r = np.asarray(r, dtype=float)
    out = np.empty_like(r)
    zero = r == 0.0
    out[zero] = k_f**2 / (4.0 * np.pi)
    rz = r[~zero]
    out[~zero] = k_f * special.j1(k_f * rz) / (2.0 * np.pi * rz)
    return out


def disk_kernel_2d(side: int, k_f: float) -> CorrelationMatrix:
    """Square window of side x side lattice sites, disk Fermi sea of radius k_f."""
    _check_k_f(k_f)
    n = side * side
    if n > SITE_CAP:
        raise ValueError(f"{n} sites exceeds the dense-solver cap {SITE_CAP}")
    # all entries depend on the site difference only: tabulate once
    d = np.arange(-(side - 1), side, dtype=float)
    dx, dy = np.meshgrid(d, d, indexing="ij")
    table = disk_correlation(k_f, np.sqrt(dx**2 + dy**2))
    idx = np.arange(side)
    ix, iy = np.meshgrid(idx, idx, indexing="ij")
    ix, iy = ix.ravel(), iy.ravel()
    m = table[ix[:, None] - ix[None, :] + side - 1, iy[:, None] - iy[None, :] + side - 1]
    return CorrelationMatrix(matrix=m, model="disk", k_f=k_f, dim=2)


def cube_kernel(dim: int, side: int, k_f: float) -> CorrelationMatrix:
    """Hypercubic window side^dim, cubic Fermi sea [-k_f, k_f]^dim.

    The kernel factorizes over axes, g(x - y) = prod_j g_1(x_j - y_j), so the
    matrix is the ``dim``-fold Kronecker power of the 1D sine kernel and its
    spectrum is exactly the set of products of 1D eigenvalues.
    """
    _check_k_f(k_f)
    if dim < 1 or dim > 3:
        raise ValueError("dim must be 1, 2 or 3")
    if side**dim > SITE_CAP:
        raise ValueError(f"{side**dim} sites exceeds the dense-solver cap {SITE_CAP}")
    g1 = linalg.toeplitz(_sine_row(side, k_f))
    m = g1
    for _ in range(dim - 1):
        m = np.kron(m, g1)
    return CorrelationMatrix(matrix=m, model="cube", k_f=k_f, dim=dim)


###############################################################################
#! Spectra
###############################################################################


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a correlation matrix, clamped to [0, 1], descending."""

    values: np.ndarray
    n_sites: int

    @property
    def particle_number(self) -> float:
        return float(np.sum(self.values))


def spectrum(corr: CorrelationMatrix, tol: float = 1e-9) -> Spectrum:
    """Eigenvalues of the correlation matrix.

    Values must lie in [-tol, 1 + tol]; excursions beyond that indicate a
    broken kernel rather than rounding and raise ``SpectrumRangeError``.
    Rounding-level excursions are clamped to [0, 1] so the entropy
    functionals stay real.
    """
    vals = np.linalg.eigvalsh(corr.matrix)
    lo, hi = float(vals[0]), float(vals[-1])
    if lo < -tol or hi > 1.0 + tol:
        raise SpectrumRangeError(
            f"eigenvalues in [{lo:.3e}, {hi:.3e}] leave [0,1] beyond tol={tol:g}"
        )
    vals = np.clip(vals, 0.0, 1.0)[::-1]
    return Spectrum(values=vals, n_sites=corr.n_sites)


def spectral_sum(spec: Spectrum, f: EntropyFunctional) -> float:
    """sum_i f(lambda_i) over the spectrum."""
    return float(np.sum(f(spec.values)))


def entropy(spec: Spectrum, base: str = "bits") -> float:
    """Entanglement entropy of the site window."""
    return spectral_sum(spec, entropy_h(base))


def number_variance(spec: Spectrum) -> float:
    """Particle-number variance sum_i lambda_i (1 - lambda_i)."""
    return spectral_sum(spec, number_variance_weight())
