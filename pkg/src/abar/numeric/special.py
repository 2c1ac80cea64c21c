"""Error-function family and cancellation-safe exponential helpers.

``erfc`` and ``erfcx`` delegate to the Cephes/Faddeeva kernels shipped with
:mod:`scipy.special`; this module adds argument validation and the scalar-in,
scalar-out convention used across the package.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as _sc

from ..errors import DomainError

LN2 = math.log(2.0)
SQRT2 = math.sqrt(2.0)
SQRT2PI = math.sqrt(2.0 * math.pi)
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
LOG_SQRT2PI = 0.5 * math.log(2.0 * math.pi)


def _finite_array(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def _out(arr):
    """Return a Python float for 0-d results, the array otherwise."""
    if np.ndim(arr) == 0:
        return float(arr)
    return arr


def erfc(x):
    """Complementary error function, ``2/sqrt(pi) * int_x^inf exp(-t^2) dt``.

    Accepts a scalar or array. Underflows smoothly to 0 for large positive x.
    """
    return _out(_sc.erfc(_finite_array(x)))


def erf(x):
    return _out(_sc.erf(_finite_array(x)))


def erfcx(x):
    """Scaled complementary error function ``exp(x^2) * erfc(x)``.

    For large positive x this behaves like ``1/(x*sqrt(pi))`` and never
    overflows; for large negative x it grows like ``2*exp(x^2)`` and does.
    """
    return _out(_sc.erfcx(_finite_array(x)))


def log1mexp(x):
    """``log(1 - exp(-x))`` for ``x > 0`` without cancellation.

    Switches between ``log(-expm1(-x))`` and ``log1p(-exp(-x))`` at ln 2.
    """
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        small = x <= LN2
        res = np.where(
            small,
            np.log(-np.expm1(-np.where(small, x, LN2))),
            np.log1p(-np.exp(-np.where(small, LN2, x))),
        )
    return _out(res)

