"""Seedable, splittable random streams.

A :class:`RandomStream` is a Philox-4x64 counter-based generator (as shipped in
:mod:`numpy.random`) keyed by the 128-bit pair ``(seed, stream_id)``. Distinct
keys select statistically independent sequences, so parallel workers use one
``stream_id`` each under a shared ``seed``. Normal variates come from numpy's
ziggurat sampler (``Generator.standard_normal``); the exact sequences are
frozen by golden tests in ``tests/test_rng.py``.

A stream is single-owner: do not draw from one instance in several threads.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError

_U64 = 1 << 64
_TWO53 = float(1 << 53)


def _u64(value, name):
    value = int(value)
    if not 0 <= value < _U64:
        raise DomainError(f"{name} must be an unsigned 64-bit integer, got {value}")
    return value


class RandomStream:
    def __init__(self, seed: int = 0, stream_id: int = 0):
        self.seed = _u64(seed, "seed")
        self.stream_id = _u64(stream_id, "stream_id")
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def __repr__(self):
        return f"RandomStream(seed={self.seed}, stream_id={self.stream_id})"

    def spawn(self, stream_id: int) -> "RandomStream":
        """A fresh stream sharing this seed under another ``stream_id``."""
        return RandomStream(self.seed, stream_id)

    def standard_normal(self, size=None):
        return self._gen.standard_normal(size)

    def normal(self, mean=0.0, sigma=1.0, size=None):
        if not sigma > 0:
            raise DomainError(f"sigma must be positive, got {sigma!r}")
        return mean + sigma * self._gen.standard_normal(size)

    def uniform_open(self, size=None):
        """Uniform variates on the open interval (0, 1), 53-bit resolution."""
        k = self._gen.integers(0, 1 << 53, size=size, dtype=np.int64)
        return (k + 0.5) / _TWO53

    def uniform(self, low=0.0, high=1.0, size=None):
        return self._gen.uniform(low, high, size)

    def poisson(self, lam, size=None):
        return self._gen.poisson(lam, size)

    def raw_uint64(self, size):
        """Raw generator output; used to pin the bit stream in tests."""
        return self._gen.bit_generator.random_raw(size)


def gaussian_draw(stream: RandomStream, mean: float, sigma: float) -> float:
    """One draw from N(mean, sigma^2); advances ``stream`` by one variate."""
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    return float(mean + sigma * stream.standard_normal())
