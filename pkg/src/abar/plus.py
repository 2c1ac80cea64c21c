"""Abar+: the law of the squared norm ``|X|^2`` for ``X ~ N(m, sigma^2 I_3)``.

Everything except the density is obtained from :mod:`abar.core` through the
map ``y -> sqrt(y)``. The density is also coded directly from its closed form

    f+(y) = [exp(-(a - sqrt y)^2 / 2s^2) - exp(-(a + sqrt y)^2 / 2s^2)] / (2 sqrt(2 pi) a s)

so that the two routes can be checked against each other.

Abar+ is a scaled noncentral chi-squared law with three degrees of freedom and
noncentrality ``(a/sigma)^2``; the code does not rely on that correspondence.
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sc

from . import core
from .core import AbarParams, _out, _support
from .numeric.special import SQRT2PI

__all__ = [
    "plus_cdf",
    "plus_degenerate_check",
    "plus_log_pdf",
    "plus_mean",
    "plus_pdf",
    "plus_quantile",
    "plus_survival",
]


def plus_pdf(p: AbarParams, y):
    """Abar+ density. At ``a = 0`` this is the Gamma(3/2, scale 2 sigma^2) density."""
    y = _support(y)
    s = p.sigma
    root = np.sqrt(y)
    if p.a == 0:
        return _out(root / (SQRT2PI * s**3) * np.exp(-y / (2 * s * s)))
    with np.errstate(over="ignore", invalid="ignore"):
        g = np.exp(-((root - p.a) ** 2) / (2 * s * s))
        # (1 - e^{-x}) / (2 a) with x = 2 a sqrt(y) / s^2, free of 1/a cancellation
        shell = root / (s * s) * _sc.exprel(-2.0 * p.a * root / (s * s))
        val = shell * g / (SQRT2PI * s)
    return _out(np.where(g == 0, 0.0, val))


def plus_log_pdf(p: AbarParams, y):
    """Log-density, ``-inf`` at ``y = 0``."""
    y = _support(y)
    root = np.sqrt(y)
    with np.errstate(divide="ignore", invalid="ignore"):
        # f+(y) = f(sqrt y) / (2 sqrt y)
        val = np.asarray(core.log_pdf(p, root)) - np.log(2.0 * root)
    return _out(np.where(root == 0, -np.inf, val))


def plus_cdf(p: AbarParams, y):
    """``P(Y+ <= y) = F_abar(sqrt(y))``."""
    return core.cdf(p, np.sqrt(_support(y)))


def plus_survival(p: AbarParams, y):
    return core.survival(p, np.sqrt(_support(y)))


def plus_quantile(p: AbarParams, prob):
    """Square of the Abar quantile (``y -> y^2`` is increasing on y >= 0)."""
    q = core.quantile(p, prob)
    return _out(np.square(q))


def plus_mean(p: AbarParams) -> float:
    """``E[Y+] = E[Y^2] = 3 sigma^2 + a^2``."""
    return core.raw_moment2(p)


def plus_degenerate_check(p: AbarParams, y_grid) -> float:
    """Largest Abar+ density over ``y_grid``.

    Evaluated in log space so that the answer is exact zero (rather than an
    underflow artefact of an intermediate) when the whole grid sits far from
    the mass near ``a^2``. As ``a/sigma`` grows every fixed compact grid
    sees the density go to zero.
    """
    y = np.atleast_1d(_support(y_grid, "y_grid"))
    logs = np.asarray(plus_log_pdf(p, y))
    return float(np.exp(np.max(logs)))

