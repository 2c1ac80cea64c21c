"""3D Thomas cluster process and the per-cluster distance-law check.

Construction used here: parent count ~ Poisson(intensity * (2w)^3), parents
uniform in the cube ``[-w, w]^3``, each parent gets Poisson(mean_daughters)
daughters displaced by ``N(0, scatter_sigma^2 I_3)``. Daughters that land
outside the cube are kept, since the law being checked is conditional on the
parent position and does not see the box.

For a parent at distance ``a`` from the reference point, its daughters'
distances to the reference are Abar(a, scatter_sigma). The check runs a
separate one-sample KS test for each cluster. Pooling clusters would test a
mixture over ``a``, which has no closed form here.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import core
from .core import AbarParams
from .errors import DomainError, InputError
from .gof import ks_statistic
from .numeric.rng import RandomStream
from .sampling import SampleBatch

MIN_DAUGHTERS = 30
PASS_FRACTION = 0.95


@dataclass(frozen=True)
class TcpConfig:
    box_half_width: float
    parent_intensity: float
    mean_daughters: float
    scatter_sigma: float
    seed: int = 0
    stream_id: int = 0

    def __post_init__(self):
        for name in ("box_half_width", "parent_intensity", "mean_daughters", "scatter_sigma"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a finite positive number, got {v!r}")
        if self.expected_parents < 1:
            raise DomainError(
                "expected parent count parent_intensity * (2 w)^3 must be at least 1, "
                f"got {self.expected_parents!r}"
            )
        RandomStream(self.seed, self.stream_id)  # validates the 64-bit range

    @property
    def volume(self) -> float:
        return (2.0 * self.box_half_width) ** 3

    @property
    def expected_parents(self) -> float:
        return self.parent_intensity * self.volume


@dataclass
class TcpRealization:
    parents: np.ndarray  # (k, 3)
    daughters: np.ndarray  # (N, 3)
    parent_index: np.ndarray  # (N,), index into parents
    counts: np.ndarray  # (k,), daughters per parent
    reference: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def cluster(self, i: int) -> np.ndarray:
        return self.daughters[self.parent_index == i]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# parents={len(self.parents)} daughters={len(self.daughters)}\n")
        buf.write("x,y,z,parent_index\n")
        for (x, y, z), k in zip(self.daughters.tolist(), self.parent_index.tolist()):
            buf.write(f"{x!r},{y!r},{z!r},{k}\n")
        return buf.getvalue()


def generate_tcp(cfg: TcpConfig) -> TcpRealization:
    """Draw one realization; identical configs give identical realizations."""
    stream = RandomStream(cfg.seed, cfg.stream_id)
    w = cfg.box_half_width
    k = int(stream.poisson(cfg.expected_parents))
    parents = stream.uniform(-w, w, size=(k, 3))
    counts = np.asarray(stream.poisson(cfg.mean_daughters, size=k), dtype=np.int64)
    parent_index = np.repeat(np.arange(k), counts)
    disp = cfg.scatter_sigma * stream.standard_normal((int(counts.sum()), 3))
    daughters = parents[parent_index] + disp
    return TcpRealization(parents, daughters, parent_index, counts)


def cluster_distance_samples(
    center_distance: float, scatter_sigma: float, n: int, stream: RandomStream
) -> SampleBatch:
    """Distances to the origin of ``n`` daughters of a cluster centred at ``(d, 0, 0)``."""
    p = AbarParams(center_distance, scatter_sigma)
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    pts = np.array([center_distance, 0.0, 0.0]) + scatter_sigma * stream.standard_normal((int(n), 3))
    values = np.sqrt(np.einsum("ij,ij->i", pts, pts))
    return SampleBatch(values, p, "norm3", stream.seed, stream.stream_id)


@dataclass
class ClusterResult:
    parent: int
    a: float
    n: int
    D: float
    threshold: float
    passed: bool


@dataclass
class ValidationReport:
    config: TcpConfig
    clusters: list[ClusterResult]
    overall_pass: bool

    @property
    def pass_fraction(self) -> float:
        return sum(c.passed for c in self.clusters) / len(self.clusters)

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "clusters": [
                {"parent": c.parent, "a": c.a, "n": c.n, "D": c.D,
                 "threshold": c.threshold, "pass": c.passed}
                for c in self.clusters
            ],
            "overall_pass": self.overall_pass,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def validate_application2(
    cfg: TcpConfig,
    clusters_to_test: int,
    *,
    realization: TcpRealization | None = None,
    fault_shift: dict[int, float] | None = None,
) -> ValidationReport:
    """KS-test daughter distances of the first eligible clusters against Abar.

    A cluster is eligible when it has at least 30 daughters; the first
    ``clusters_to_test`` eligible parents (in index order) are tested.
    ``fault_shift`` maps a position in the tested list to an additive shift
    applied to that cluster's distances, for negative controls.
    """
    if int(clusters_to_test) != clusters_to_test or clusters_to_test < 1:
        raise InputError("clusters_to_test must be a positive integer")
    real = realization if realization is not None else generate_tcp(cfg)
    eligible = np.flatnonzero(real.counts >= MIN_DAUGHTERS)
    if eligible.size < clusters_to_test:
        raise InputError(
            f"only {eligible.size} clusters have >= {MIN_DAUGHTERS} daughters but "
            f"{clusters_to_test} were requested; raise mean_daughters or "
            "parent_intensity, or test fewer clusters"
        )
    shifts = fault_shift or {}
    results = []
    for slot, idx in enumerate(eligible[:clusters_to_test]):
        rel = real.cluster(idx) - real.reference
        dist = np.sqrt(np.einsum("ij,ij->i", rel, rel)) + shifts.get(slot, 0.0)
        a = float(np.linalg.norm(real.parents[idx] - real.reference))
        p = AbarParams(a, cfg.scatter_sigma)
        D, thr = ks_statistic(np.sort(dist), lambda x, p=p: core.cdf(p, np.maximum(x, 0.0)))
        results.append(ClusterResult(int(idx), a, int(dist.size), D, thr, D <= thr))
    frac = sum(r.passed for r in results) / len(results)
    return ValidationReport(cfg, results, frac >= PASS_FRACTION)
