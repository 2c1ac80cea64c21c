from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError


@dataclass(frozen=True)
class Tolerance:
    """Mixed relative/absolute stopping tolerance.

    A quantity ``q`` with error estimate ``e`` is accepted once
    ``e <= max(abs, rel * |q|)``.
    """

    rel: float = 1e-12
    abs: float = 1e-14

    def __post_init__(self):
        if not (math.isfinite(self.rel) and math.isfinite(self.abs)):
            raise DomainError("tolerances must be finite")
        if self.rel < 0 or self.abs < 0:
            raise DomainError("tolerances must be non-negative")
        if self.rel == 0 and self.abs == 0:
            raise DomainError("rel and abs tolerance cannot both be zero")

    def bound(self, value):
        return max(self.abs, self.rel * abs(value))
