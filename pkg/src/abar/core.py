"""The Abar distribution: law of the Euclidean norm of a 3D Gaussian vector.

If ``Y = |X|`` with ``X ~ N(m, sigma^2 I_3)`` and ``a = |m|``, the density is

    f(y) = y / (sqrt(2 pi) sigma a) * [exp(-(y-a)^2 / 2s^2) - exp(-(y+a)^2 / 2s^2)]

on ``y >= 0``. Every function here takes an :class:`AbarParams` and is
vectorized over the variate: scalars in, floats out; arrays in, arrays out.

Evaluation never forms ``sinh(a y / sigma^2)`` or divides by ``a``. The
bracketed factor is rewritten as

    exp(-(y-a)^2 / 2s^2) * (1 - exp(-2 a y / s^2))

and ``(1 - exp(-x)) / x`` is evaluated with :func:`scipy.special.exprel`,
which is exact at ``x = 0`` (the Maxwell case) and cannot overflow for large
``x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sc

from .errors import DomainError, RangeError
from .numeric.roots import find_roots_bracketed
from .numeric.special import LOG_SQRT2PI, SQRT2, SQRT2PI, SQRT_2_OVER_PI, log1mexp
from .numeric.tolerance import Tolerance

# Quantile solves are bracketed on [0, a + QUANTILE_SPAN * sigma].
QUANTILE_SPAN = 40.0
SMALL_RATIO = 1e-8
MGF_SERIES_RATIO = 1e-3
MGF_FD_STEP = 1e-5
CDF_EXCURSION = 1e-12
LOG_MAX = math.log(np.finfo(float).max)

__all__ = [
    "AbarParams",
    "cdf",
    "log_pdf",
    "mean",
    "mgf",
    "mgf_derivative_check",
    "pdf",
    "pdf_gaussian_limit",
    "pdf_maxwell_limit",
    "quantile",
    "raw_moment2",
    "survival",
    "variance",
]


@dataclass(frozen=True)
class AbarParams:
    """Mean-vector norm ``a >= 0`` and common component scale ``sigma > 0``."""

    a: float
    sigma: float

    def __post_init__(self):
        a = float(self.a)
        sigma = float(self.sigma)
        if not (math.isfinite(a) and a >= 0):
            raise DomainError(f"a must be finite and non-negative, got {self.a!r}")
        if not (math.isfinite(sigma) and sigma > 0):
            raise DomainError(f"sigma must be finite and positive, got {self.sigma!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "sigma", sigma)

    @property
    def ratio(self) -> float:
        return self.a / self.sigma


def _support(y, name="y"):
    arr = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    if np.any(arr < 0):
        raise DomainError(f"{name} must be non-negative")
    return arr


def _out(arr):
    if np.ndim(arr) == 0:
        return float(arr)
    return arr


def _shell_factor(p: AbarParams, y):
    """``exprel(-2ay/s^2) = (1 - exp(-2ay/s^2)) / (2ay/s^2)``, 1 at a = 0."""
    return _sc.exprel(-2.0 * p.a * y / p.sigma**2)


def pdf(p: AbarParams, y):
    """Probability density at ``y``."""
    y = _support(y)
    s = p.sigma
    if p.a == 0:
        return pdf_maxwell_limit(s, y)
    with np.errstate(over="ignore", invalid="ignore"):
        g = np.exp(-((y - p.a) ** 2) / (2 * s * s))
        val = SQRT_2_OVER_PI * (y / s) ** 2 / s * _shell_factor(p, y) * g
    return _out(np.where(g == 0, 0.0, val))


def log_pdf(p: AbarParams, y):
    """Natural log of the density; ``-inf`` at ``y = 0``.

    Finite for any finite positive ``y`` and valid parameters, including
    ``a*y/sigma^2`` far beyond the point where ``sinh`` overflows.
    """
    y = _support(y)
    s = p.sigma
    quad = -((y - p.a) ** 2) / (2 * s * s)
    x = 2.0 * p.a * y / (s * s)
    with np.errstate(divide="ignore", invalid="ignore"):
        # log((1 - e^-x)/x) splits by size of x: exprel is exact near 0,
        # log1mexp is exact once the subtraction no longer matters.
        safe_x = np.where(x > 1, x, 2.0)
        shell = np.where(
            x > 1,
            log1mexp(safe_x) - np.log(safe_x),
            np.log(_sc.exprel(-np.minimum(x, 1.0))),
        )
        val = 2 * np.log(y) - 3 * math.log(s) + (math.log(2.0) - LOG_SQRT2PI) + shell + quad
    return _out(np.where(y == 0, -np.inf, val))


def pdf_maxwell_limit(sigma: float, y):
    """Density at ``a = 0``: ``sqrt(2/pi) y^2 / sigma^3 exp(-y^2 / 2 sigma^2)``."""
    if not (math.isfinite(sigma) and sigma > 0):
        raise DomainError(f"sigma must be finite and positive, got {sigma!r}")
    y = _support(y)
    return _out(SQRT_2_OVER_PI * (y / sigma) ** 2 / sigma * np.exp(-(y * y) / (2 * sigma * sigma)))


def pdf_gaussian_limit(p: AbarParams, y):
    """Large ``a/sigma`` limit: the N(a, sigma^2) density restricted to y >= 0."""
    y = _support(y)
    s = p.sigma
    return _out(np.exp(-((y - p.a) ** 2) / (2 * s * s)) / (SQRT2PI * s))


def _tail_parts(p: AbarParams, y):
    """Return ``(cdf_raw, survival_raw)``, both from the same closed-form pieces.

    With ``w_minus = (y - a)/(sqrt2 s)`` and ``w_plus = (y + a)/(sqrt2 s)``::

        F = -T + (erfc(-w_minus) - erfc(w_plus)) / 2
        S =  T + (erfc(w_minus) + erfc(w_plus)) / 2

    where ``T = sigma/(sqrt(2 pi) a) [e^{-(y-a)^2/2s^2} - e^{-(y+a)^2/2s^2}]``
    is non-negative, so ``S`` is a sum of positive terms and keeps its
    relative accuracy deep into the upper tail.
    """
    s = p.sigma
    w_minus = (y - p.a) / (SQRT2 * s)
    w_plus = (y + p.a) / (SQRT2 * s)
    with np.errstate(over="ignore", invalid="ignore"):
        g = np.exp(-w_minus * w_minus)
        t = SQRT_2_OVER_PI * (y / s) * _shell_factor(p, y) * g
    t = np.where(g == 0, 0.0, t)
    e_plus = _sc.erfc(w_plus)
    F = -t + 0.5 * (_sc.erfc(-w_minus) - e_plus)
    S = t + 0.5 * (_sc.erfc(w_minus) + e_plus)
    return F, S


def _clamp(raw, what):
    lo = float(np.min(raw)) if np.size(raw) else 0.0
    hi = float(np.max(raw)) if np.size(raw) else 0.0
    assert lo >= -CDF_EXCURSION and hi <= 1 + CDF_EXCURSION, (
        f"{what} left [0, 1] by more than rounding: range [{lo!r}, {hi!r}]"
    )
    return np.clip(raw, 0.0, 1.0)


def cdf(p: AbarParams, y):
    """Cumulative distribution function ``P(Y <= y)``."""
    y = _support(y)
    F, _ = _tail_parts(p, y)
    return _out(_clamp(F, "cdf"))


def survival(p: AbarParams, y):
    """Upper tail ``P(Y > y)`` with relative accuracy for small values."""
    y = _support(y)
    _, S = _tail_parts(p, y)
    return _out(_clamp(S, "survival"))


def quantile(p: AbarParams, prob):
    """Inverse CDF: the ``y`` with ``cdf(p, y) == prob``.

    Solved on ``[0, a + 40 sigma]``; the lower half is solved against the CDF
    and the upper half against the survival function so that probabilities
    near 1 stay well conditioned.
    """
    q = np.asarray(prob, dtype=float)
    if not np.all((q > 0) & (q < 1)):
        raise DomainError("prob must lie strictly between 0 and 1")
    upper = q > 0.5
    target = np.where(upper, 1.0 - q, q)

    def g(y):
        F, S = _tail_parts(p, y)
        return np.where(upper, target - S, F - target)

    hi = np.full(q.shape, p.a + QUANTILE_SPAN * p.sigma)
    roots, _ = find_roots_bracketed(g, np.zeros(q.shape), hi, Tolerance(rel=4e-16, abs=1e-300))
    return _out(roots)


def mean(p: AbarParams) -> float:
    """``E[Y] = (a + s^2/a) erf(a / (sqrt2 s)) + sqrt(2/pi) s exp(-a^2 / 2s^2)``."""
    a, s = p.a, p.sigma
    if p.ratio < SMALL_RATIO:
        return 2.0 * SQRT_2_OVER_PI * s
    return (a + s * s / a) * float(_sc.erf(a / (SQRT2 * s))) + SQRT_2_OVER_PI * s * math.exp(
        -a * a / (2 * s * s)
    )


def raw_moment2(p: AbarParams) -> float:
    """``E[Y^2] = 3 sigma^2 + a^2``."""
    return 3.0 * p.sigma**2 + p.a**2


def variance(p: AbarParams) -> float:
    """``Var[Y] = E[Y^2] - E[Y]^2``.

    Above ``a/sigma = 1`` the difference is taken analytically (expanding
    ``(a + s^2/a)^2 erf^2``) so that the leading ``a^2`` cancels exactly; the
    plain difference loses all digits once ``a/sigma`` reaches ~1e8.
    """
    r = p.ratio
    if r <= 1.0:
        return raw_moment2(p) - mean(p) ** 2
    x = r / SQRT2
    c = float(_sc.erfc(x))
    e = float(_sc.erf(x))
    g = math.exp(-0.5 * r * r)
    scaled = (
        3.0
        + r * r * c * (2.0 - c)
        - (2.0 + 1.0 / (r * r)) * e * e
        - (2.0 / math.pi) * g * g
        - 2.0 * SQRT_2_OVER_PI * (r + 1.0 / r) * e * g
    )
    return scaled * p.sigma**2


def _log_erfc_times_exp(z, exponent):
    """``log(exp(exponent) * erfc(z))`` where ``exponent - z^2`` is the fused form."""
    if z > 0:
        return exponent - z * z + math.log(float(_sc.erfcx(z)))
    return exponent + math.log(float(_sc.erfc(z)))


def _mgf_small_ratio(u: float, r: float) -> float:
    """Series ``M0(u) + r^2 M2(u)`` in ``r = a/sigma``, with ``u = s sigma``."""
    z = -u / SQRT2
    if z > 0:
        phi = float(_sc.erfcx(z))
    else:
        if 0.5 * u * u > LOG_MAX:
            raise RangeError("MGF term exp(s^2 sigma^2 / 2) overflows")
        phi = math.exp(0.5 * u * u) * float(_sc.erfc(z))
    m0 = (1.0 + u * u) * phi + u * SQRT_2_OVER_PI
    m2 = (u / 6.0) * (SQRT_2_OVER_PI * (u * u + 2.0) + u * (u * u + 3.0) * phi)
    out = m0 + r * r * m2
    if not math.isfinite(out):
        raise RangeError("MGF value is not representable")
    return out


def mgf(p: AbarParams, s: float) -> float:
    """Moment generating function ``E[exp(s Y)]`` from its closed form.

    In units of sigma (``u = s sigma``, ``r = a/sigma``, ``b = r + u``,
    ``c = r - u``) the closed form reduces to::

        M = [b e^{ur + u^2/2} erfc(-b/sqrt2) + c e^{-ur + u^2/2} erfc(c/sqrt2)] / (2r)

    (the two ``exp(-a^2/2 sigma^2)`` terms of the full expression cancel).
    Each product ``exp(.) * erfc(.)`` is evaluated in log space, switching
    to ``erfcx`` whenever the erfc argument is positive, so the large
    exponents fuse before exponentiation. For ``r < 1e-3`` a second-order
    series in ``r`` replaces the ``1/r`` form.

    Raises
    ------
    RangeError
        If the result overflows a double.
    """
    s = float(s)
    if not math.isfinite(s):
        raise DomainError("s must be finite")
    u = s * p.sigma
    r = p.ratio
    if r < MGF_SERIES_RATIO:
        return _mgf_small_ratio(u, r)
    b = r + u
    c = r - u
    log_tb = _log_erfc_times_exp(-b / SQRT2, u * r + 0.5 * u * u)
    log_tc = _log_erfc_times_exp(c / SQRT2, -u * r + 0.5 * u * u)
    top = max(log_tb, log_tc)
    inner = b * math.exp(log_tb - top) + c * math.exp(log_tc - top)
    if inner <= 0:
        raise RangeError("MGF closed form lost all precision (s too negative)")
    log_m = top + math.log(inner / (2.0 * r))
    if log_m > LOG_MAX:
        term = "exp(s(a + s sigma^2/2))" if log_tb >= log_tc else "exp(-s(a - s sigma^2/2))"
        raise RangeError(f"MGF overflows: term {term} exceeds the double range")
    return math.exp(log_m)


def mgf_derivative_check(p: AbarParams, step: float = MGF_FD_STEP):
    """Central finite differences ``(M'(0), M''(0))`` of the MGF.

    These should reproduce :func:`mean` and :func:`raw_moment2`.
    """
    m_plus = mgf(p, step)
    m_minus = mgf(p, -step)
    m0 = mgf(p, 0.0)
    d1 = (m_plus - m_minus) / (2 * step)
    d2 = (m_plus - 2 * m0 + m_minus) / (step * step)
    return d1, d2
