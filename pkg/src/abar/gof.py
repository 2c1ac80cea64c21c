"""Kolmogorov-Smirnov statistics with asymptotic alpha = 0.01 thresholds."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import InputError

# Asymptotic Kolmogorov critical value at alpha = 0.01 (c(alpha) in D > c / sqrt(n)).
KS_C_001 = 1.628
MIN_SAMPLES = 10


def ks_threshold(n: int, c: float = KS_C_001) -> float:
    return c / math.sqrt(n)


def ks_statistic(samples, cdf: Callable):
    """One-sample KS distance of sorted ``samples`` from ``cdf``.

    ``cdf`` is applied to the whole sorted array at once. Returns
    ``(D, threshold)`` where ``threshold = 1.628 / sqrt(n)``.
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1 or x.size < MIN_SAMPLES:
        raise InputError(f"KS needs a 1-d sample of at least {MIN_SAMPLES} values")
    if np.any(np.diff(x) < 0):
        raise InputError("KS input must be sorted in non-decreasing order")
    n = x.size
    F = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    d = max(float(np.max(i / n - F)), float(np.max(F - (i - 1) / n)))
    return d, ks_threshold(n)


def ks_two_sample(x, y):
    """Two-sample KS distance and its alpha = 0.01 threshold.

    The threshold is ``1.628 * sqrt((n + m) / (n m))``.
    """
    x = np.sort(np.asarray(x, dtype=float))
    y = np.sort(np.asarray(y, dtype=float))
    n, m = x.size, y.size
    if n < MIN_SAMPLES or m < MIN_SAMPLES:
        raise InputError(f"KS needs at least {MIN_SAMPLES} values per sample")
    grid = np.concatenate([x, y])
    fx = np.searchsorted(x, grid, side="right") / n
    fy = np.searchsorted(y, grid, side="right") / m
    d = float(np.max(np.abs(fx - fy)))
    return d, KS_C_001 * math.sqrt((n + m) / (n * m))
