"""Exception types shared across the package."""


class NumericsError(RuntimeError):
    """A numerical routine produced an unusable result (bad spectrum,
    failed quadrature, ill-conditioned fit).  The CLI maps these to a
    dedicated exit code so sweeps can distinguish config mistakes from
    genuine numerical failures."""


class SpectrumRangeError(NumericsError):
    """Eigenvalues of a correlation matrix left [0, 1] beyond tolerance."""


class QuadratureError(NumericsError):
    """An integral failed its accuracy or positivity post-conditions."""


class FitError(NumericsError):
    """A least-squares fit was ill-conditioned or under-determined."""
