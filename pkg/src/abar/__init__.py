"""Abar and Abar+ distributions for 3D Gaussian norms and squared norms."""

from .core import (
    AbarParams,
    cdf,
    log_pdf,
    mean,
    mgf,
    mgf_derivative_check,
    pdf,
    pdf_gaussian_limit,
    pdf_maxwell_limit,
    quantile,
    raw_moment2,
    survival,
    variance,
)
from .errors import (
    AbarError,
    BracketError,
    DomainError,
    InputError,
    NumericalError,
    QuadratureError,
    RangeError,
)
from .plus import (
    plus_cdf,
    plus_degenerate_check,
    plus_log_pdf,
    plus_mean,
    plus_pdf,
    plus_quantile,
    plus_survival,
)

__version__ = "0.1.0"
