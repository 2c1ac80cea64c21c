"""Estimate ``(a, sigma)`` of an Abar law from i.i.d. positive samples.

Method of moments uses ``E[Y^2] = 3 sigma^2 + a^2`` to eliminate sigma, which
leaves a one-dimensional root find in ``a``. Maximum likelihood runs a
Nelder-Mead simplex on the stable log-density, warm-started from the moments
fit. To fit Abar+ data, fit the square roots of the samples.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize

from . import core
from .core import AbarParams
from .errors import BracketError, DomainError, InputError
from .numeric.roots import find_root_bracketed
from .numeric.tolerance import Tolerance

MIN_SAMPLES = 10
MLE_MAX_EVALS = 2000
MLE_XTOL = 1e-8
SIGMA2_FLOOR = 1e-12
_ROOT_TOL = Tolerance(rel=1e-15, abs=1e-300)


@dataclass
class FitResult:
    a_hat: float
    sigma_hat: float
    method: str
    log_likelihood: float
    iterations: int
    converged: bool
    message: str = ""

    @property
    def params(self) -> AbarParams:
        return AbarParams(self.a_hat, self.sigma_hat)

    def to_dict(self) -> dict:
        return asdict(self)


def _as_samples(samples, minimum):
    y = np.asarray(samples, dtype=float).ravel()
    if y.size < minimum:
        raise InputError(f"need at least {minimum} samples, got {y.size}")
    if not np.all(np.isfinite(y)):
        raise InputError("samples must be finite")
    return y


def log_likelihood(p: AbarParams, samples) -> float:
    """Sum of log-densities. Samples must be strictly positive."""
    y = _as_samples(samples, 1)
    if np.any(y <= 0):
        raise DomainError("log-likelihood needs samples > 0 (the density vanishes at 0)")
    return float(np.sum(core.log_pdf(p, y)))


def solve_moments(m1: float, m2: float):
    """Solve ``mean(a, sigma) = m1`` with ``3 sigma^2 + a^2 = m2``.

    Returns ``(a, sigma, iterations, converged, message)``. When ``m1`` is at
    or below the ``a = 0`` model mean there is no interior root and the
    boundary ``a = 0`` is returned unconverged.
    """
    if not (m2 > 0 and m1 > 0):
        raise InputError("sample moments must be positive")

    def sigma_of(a):
        return math.sqrt(max(m2 - a * a, SIGMA2_FLOOR * m2) / 3.0)

    def g(a):
        return core.mean(AbarParams(a, sigma_of(a))) - m1

    a_hi = math.sqrt(m2 * (1.0 - 3.0 * SIGMA2_FLOOR))
    g_lo = g(0.0)
    if g_lo >= 0:
        if g_lo == 0:
            return 0.0, sigma_of(0.0), 0, True, ""
        return (
            0.0, sigma_of(0.0), 0, False,
            "sample mean is below the a=0 model mean; returning boundary a=0",
        )
    if g(a_hi) <= 0:
        return (
            a_hi, sigma_of(a_hi), 0, False,
            "sample mean reaches sqrt(m2); data are (nearly) constant",
        )
    try:
        a, its = find_root_bracketed(g, 0.0, a_hi, _ROOT_TOL, full_output=True)
    except BracketError as exc:  # pragma: no cover - guarded by the sign checks above
        raise InputError(str(exc)) from exc
    return a, sigma_of(a), its, True, ""


def fit_moments(samples) -> FitResult:
    y = _as_samples(samples, MIN_SAMPLES)
    if np.any(y <= 0):
        raise InputError("samples must be strictly positive")
    m1 = float(np.mean(y))
    m2 = float(np.mean(y * y))
    a, s, its, ok, msg = solve_moments(m1, m2)
    p = AbarParams(a, s)
    return FitResult(a, s, "moments", log_likelihood(p, y), its, ok, msg)


def fit_mle(samples, init: AbarParams | None = None) -> FitResult:
    """Maximum likelihood by Nelder-Mead.

    The simplex lives in ``(u / sigma0, log(sigma / sigma0))`` with
    ``a = |u|``, where ``(a0, sigma0)`` is the starting point. The density
    is even in ``a``, so the reflection is exact, and the normalization
    makes the search path invariant to rescaling the data.
    """
    y = _as_samples(samples, MIN_SAMPLES)
    if np.any(y <= 0):
        raise InputError("samples must be strictly positive")
    start = init if init is not None else fit_moments(y).params
    s0 = start.sigma
    ll_start = log_likelihood(start, y)

    def unpack(x):
        return AbarParams(abs(x[0]) * s0, s0 * math.exp(x[1]))

    def objective(x):
        if not np.all(np.isfinite(x)) or abs(x[1]) > 700:
            return np.inf
        return -log_likelihood(unpack(x), y)

    x0 = np.array([start.a / s0, 0.0])
    step = 0.05 if init is None else 0.01
    simplex = np.array([x0, x0 + [max(step, step * x0[0]), 0.0], x0 + [0.0, step]])
    res = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": MLE_XTOL * max(1.0, abs(x0[0])),
            "fatol": 1e-12 * abs(ll_start),
            "maxfev": MLE_MAX_EVALS,
            "maxiter": MLE_MAX_EVALS,
        },
    )
    best = unpack(res.x)
    ll = -float(res.fun)
    if ll < ll_start:
        best, ll = start, ll_start
    msg = "" if res.success else str(res.message)
    return FitResult(best.a, best.sigma, "mle", ll, int(res.nfev), bool(res.success), msg)
