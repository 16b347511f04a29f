"""fermisea: entanglement and counting statistics of free-fermion ground states.

Library layout:

* ``geometry``   regions, autocorrelations, indicator transforms, surfaces
* ``spectral``   lattice correlation kernels and their spectra
* ``tensorcube`` exact tensor-product entropy of cubic windows with bounds
* ``widom``      two-term trace asymptotics and the boundary coefficient J
* ``variance``   continuum number variance, including rough (Cantor) regions
* ``thermal``    positive-temperature entropy and the crossover scale
* ``analysis``   scaling fits and exponent extraction
* ``cli``        config-driven sweeps (``fermisea run|validate|compare``)
"""

from .analysis import (
    CoefficientReport,
    ExponentFit,
    FitResult,
    ScalingSeries,
    coefficient_report,
    exponent_fit,
    fit_scaling,
)
from .errors import FitError, NumericsError, QuadratureError, SpectrumRangeError
from .geometry import (
    Ball,
    Box,
    Cantor1D,
    UnionOfBoxes,
    autocorrelation,
    indicator_ft_sq,
    regularity_exponent,
    shift_defect,
    surface_quadrature,
    volume,
)
from .spectral import (
    CorrelationMatrix,
    EntropyFunctional,
    Spectrum,
    cube_kernel,
    disk_kernel_2d,
    entropy,
    entropy_h,
    monomial,
    number_variance,
    sine_kernel_1d,
    spectral_sum,
    spectrum,
)
from .tensorcube import (
    EnumerationReport,
    ProductSpectrum,
    cube_prediction,
    entropy_product,
    entropy_product_report,
    g_function,
    product_spectrum_for_cube,
    thm_bounds,
)
from .thermal import (
    ThermalParams,
    crossover_temperature,
    fermi_dirac,
    thermal_entropy,
    thermal_entropy_integral,
)
from .variance import (
    VarianceResult,
    fractal_variance_sweep,
    tr_pqp,
    tr_pqp_sq,
    variance_continuum,
)
from .widom import (
    AsymptoticPrediction,
    entropy_prediction,
    moment_prediction_1d,
    trace_prediction,
    u_functional,
    variance_prediction,
    widom_coefficient,
)

__version__ = "0.1.0"
