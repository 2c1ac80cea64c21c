"""Random variates for Abar and Abar+.

Two routes are provided. ``norm3`` draws three independent Gaussians and takes
the Euclidean norm, which is exact by construction. ``inverse_cdf`` pushes
open-interval uniforms through :func:`abar.core.quantile`. The default is
``norm3``; ``inverse_cdf`` exists mainly to cross-validate it.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import core
from .core import AbarParams
from .errors import DomainError
from .numeric.rng import RandomStream

METHODS = ("norm3", "inverse_cdf")
FAMILIES = ("abar", "abar_plus")


@dataclass(frozen=True)
class MeanVector3:
    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        for name in ("a1", "a2", "a3"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite")
            object.__setattr__(self, name, v)

    @property
    def norm(self) -> float:
        return math.sqrt(self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3)

    def as_array(self):
        return np.array([self.a1, self.a2, self.a3])


@dataclass
class SampleBatch:
    """Draws plus everything needed to regenerate them bit for bit."""

    values: np.ndarray
    params: AbarParams
    method: str
    seed: int
    stream_id: int
    family: str = "abar"
    mean_vector: MeanVector3 | None = field(default=None)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def provenance(self) -> dict:
        info = {
            "family": self.family,
            "a": repr(self.params.a),
            "sigma": repr(self.params.sigma),
            "method": self.method,
            "seed": str(self.seed),
            "stream_id": str(self.stream_id),
            "n": str(self.n),
        }
        if self.mean_vector is not None:
            mv = self.mean_vector
            info["mean_vector"] = f"{mv.a1!r} {mv.a2!r} {mv.a3!r}"
        return info

    def to_csv(self) -> str:
        """``#``-prefixed provenance lines, a ``value`` header, one value per line."""
        buf = io.StringIO()
        for key, val in self.provenance().items():
            buf.write(f"# {key}={val}\n")
        buf.write("value\n")
        for v in self.values.tolist():
            buf.write(repr(v))
            buf.write("\n")
        return buf.getvalue()


def _check(sigma, n):
    if not (math.isfinite(sigma) and sigma > 0):
        raise DomainError(f"sigma must be finite and positive, got {sigma!r}")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")


def _norms(center, sigma, n, stream):
    z = stream.standard_normal((int(n), 3))
    pts = center + sigma * z
    return np.sqrt(np.einsum("ij,ij->i", pts, pts))


def sample_norm3(m: MeanVector3, sigma: float, n: int, stream: RandomStream) -> SampleBatch:
    """Norms of ``n`` draws from ``N(m, sigma^2 I_3)``; Abar(|m|, sigma) variates."""
    _check(sigma, n)
    values = _norms(m.as_array(), sigma, n, stream)
    return SampleBatch(
        values, AbarParams(m.norm, sigma), "norm3", stream.seed, stream.stream_id,
        mean_vector=m,
    )


def sample_norm3_rotated(m: MeanVector3, sigma: float, n: int, stream: RandomStream) -> SampleBatch:
    """As :func:`sample_norm3` but with the mean rotated onto ``(|m|, 0, 0)``.

    The Gaussian cloud is rotation invariant, so both samplers have the same
    law; comparing them exercises that step of the norm-distribution proof.
    """
    _check(sigma, n)
    values = _norms(np.array([m.norm, 0.0, 0.0]), sigma, n, stream)
    return SampleBatch(
        values, AbarParams(m.norm, sigma), "norm3", stream.seed, stream.stream_id,
        mean_vector=m,
    )


def sample_inverse_cdf(p: AbarParams, n: int, stream) -> SampleBatch:
    _check(p.sigma, n)
    u = np.asarray(stream.uniform_open(int(n)), dtype=float)
    values = np.atleast_1d(np.asarray(core.quantile(p, u), dtype=float))
    return SampleBatch(values, p, "inverse_cdf", stream.seed, stream.stream_id)


def sample_plus(p: AbarParams, n: int, stream: RandomStream) -> SampleBatch:
    """Abar+ variates: squared norms of ``N((a, 0, 0), sigma^2 I_3)`` draws."""
    _check(p.sigma, n)
    values = _norms(np.array([p.a, 0.0, 0.0]), p.sigma, n, stream) ** 2
    return SampleBatch(values, p, "norm3", stream.seed, stream.stream_id, family="abar_plus")


def draw(
    params: AbarParams,
    n: int,
    *,
    method: str = "norm3",
    family: str = "abar",
    seed: int = 0,
    stream_id: int = 0,
    mean_vector: MeanVector3 | None = None,
) -> SampleBatch:
    """Generate a batch from a fresh stream.

    Identical arguments give a bit-identical batch. ``mean_vector`` (norm3
    only) overrides ``params.a`` with the vector's norm.
    """
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; expected one of {FAMILIES}")
    stream = RandomStream(seed, stream_id)
    if mean_vector is not None:
        if method != "norm3":
            raise DomainError("a mean vector can only be used with the norm3 method")
        batch = sample_norm3(mean_vector, params.sigma, n, stream)
    elif method == "norm3":
        batch = sample_norm3_rotated(MeanVector3(params.a, 0.0, 0.0), params.sigma, n, stream)
        batch.mean_vector = None
    else:
        batch = sample_inverse_cdf(params, n, stream)
    if family == "abar_plus":
        batch.values = batch.values**2
        batch.family = "abar_plus"
    return batch


def draw_sharded(
    params: AbarParams,
    n: int,
    shards: int,
    *,
    method: str = "norm3",
    family: str = "abar",
    seed: int = 0,
    first_stream_id: int = 0,
    max_workers: int | None = None,
) -> np.ndarray:
    """Split ``n`` draws over ``shards`` streams and concatenate in stream order.

    Shard ``k`` uses ``stream_id = first_stream_id + k`` and gets
    ``n // shards`` draws, the first ``n % shards`` shards one extra. The
    result depends only on the arguments, not on thread scheduling.
    """
    if shards < 1:
        raise DomainError("shards must be at least 1")
    base, extra = divmod(int(n), shards)
    sizes = [base + (1 if k < extra else 0) for k in range(shards)]

    def work(k):
        if sizes[k] == 0:
            return np.empty(0)
        return draw(
            params, sizes[k], method=method, family=family, seed=seed,
            stream_id=first_stream_id + k,
        ).values

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        parts = list(pool.map(work, range(shards)))
    return np.concatenate(parts)
