"""Numerical building blocks: error functions, quadrature, roots, RNG."""

from .quadrature import integrate_adaptive
from .rng import RandomStream, gaussian_draw
from .roots import find_root_bracketed, find_roots_bracketed
from .special import erf, erfc, erfcx, log1mexp
from .tolerance import Tolerance

__all__ = [
    "RandomStream",
    "Tolerance",
    "erf",
    "erfc",
    "erfcx",
    "find_root_bracketed",
    "find_roots_bracketed",
    "gaussian_draw",
    "integrate_adaptive",
    "log1mexp",
]
