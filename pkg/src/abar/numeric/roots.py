"""Safeguarded bracketed root finding.

The iteration is Illinois-modified false position with a bisection fallback:
whenever a step fails to at least halve the bracket, the next step is a plain
bisection. That bounds the work by the bisection count while keeping the
superlinear rate on smooth functions. The core runs elementwise over arrays so
that quantiles of large batches are solved in one pass.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..errors import BracketError, NumericalError
from .tolerance import Tolerance

MAX_ITER = 200
DEFAULT_TOL = Tolerance(rel=4e-16, abs=1e-300)


def find_roots_bracketed(
    f: Callable[[np.ndarray], np.ndarray],
    lo,
    hi,
    tol: Tolerance = DEFAULT_TOL,
    maxiter: int = MAX_ITER,
):
    """Solve ``f(x) = 0`` elementwise on brackets ``[lo, hi]``.

    ``f`` receives an array the shape of the broadcast brackets and must act
    elementwise (element ``i`` of the output depends only on element ``i``
    of the input).

    Returns ``(roots, iterations)`` where ``iterations`` is the number of
    sweeps performed.
    """
    lo, hi = np.broadcast_arrays(np.asarray(lo, dtype=float), np.asarray(hi, dtype=float))
    lo = lo.astype(float, copy=True)
    hi = hi.astype(float, copy=True)
    if np.any(~(lo <= hi)):
        raise BracketError("bracket requires lo <= hi")

    def ev(x):
        fx = np.asarray(f(x), dtype=float)
        if fx.shape != x.shape:
            fx = np.broadcast_to(fx, x.shape).astype(float)
        if not np.all(np.isfinite(fx)):
            raise NumericalError("function is not finite inside the bracket")
        return fx

    flo = ev(lo)
    fhi = ev(hi)
    if np.any(np.sign(flo) * np.sign(fhi) > 0):
        bad = np.flatnonzero(np.sign(flo) * np.sign(fhi) > 0)[0]
        raise BracketError(
            f"f has the same sign at both ends of [{lo.flat[bad]!r}, {hi.flat[bad]!r}]"
        )

    # Illinois weights live apart from the true endpoint values.
    glo = flo.copy()
    ghi = fhi.copy()
    side = np.zeros(lo.shape, dtype=np.int8)
    bisect_next = np.zeros(lo.shape, dtype=bool)

    root = np.where(flo == 0, lo, np.where(fhi == 0, hi, np.nan))
    done = ~np.isnan(root)

    for it in range(1, maxiter + 1):
        width = hi - lo
        x_mid = lo + 0.5 * width
        denom = ghi - glo
        with np.errstate(divide="ignore", invalid="ignore"):
            x_sec = hi - ghi * width / denom
        use_sec = ~bisect_next & np.isfinite(x_sec) & (x_sec > lo) & (x_sec < hi)
        x = np.where(use_sec, x_sec, x_mid)
        x = np.where(done, np.where(np.isnan(root), lo, root), x)

        fx = ev(x)
        hit = ~done & (fx == 0)
        root = np.where(hit, x, root)
        done |= hit

        move_lo = ~done & (np.sign(fx) == np.sign(flo))
        move_hi = ~done & ~move_lo

        # Illinois: halve the weight of the endpoint that stays put twice.
        ghi = np.where(move_lo & (side == -1), 0.5 * ghi, ghi)
        glo = np.where(move_hi & (side == 1), 0.5 * glo, glo)

        lo = np.where(move_lo, x, lo)
        flo = np.where(move_lo, fx, flo)
        glo = np.where(move_lo, fx, glo)
        hi = np.where(move_hi, x, hi)
        fhi = np.where(move_hi, fx, fhi)
        ghi = np.where(move_hi, fx, ghi)
        side = np.where(move_lo, -1, np.where(move_hi, 1, side)).astype(np.int8)

        new_width = hi - lo
        bisect_next = new_width > 0.5 * width

        best = np.where(np.abs(flo) <= np.abs(fhi), lo, hi)
        scale = np.maximum(np.abs(lo), np.abs(hi))
        narrow = ~done & (new_width <= np.maximum(tol.abs, tol.rel * scale))
        root = np.where(narrow, best, root)
        done |= narrow
        if np.all(done):
            return root, it

    best = np.where(np.abs(flo) <= np.abs(fhi), lo, hi)
    raise NumericalError(
        f"root finding did not converge in {maxiter} iterations",
        estimate=np.where(done, root, best),
        error=np.where(done, 0.0, hi - lo),
    )


def find_root_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
    *,
    full_output: bool = False,
):
    """Scalar root of ``f`` on ``[lo, hi]``; ``f`` is called with floats.

    With ``full_output=True`` returns ``(root, iterations)``.
    """
    root, its = find_roots_bracketed(
        lambda x: np.array([f(float(x[0]))]), np.array([lo]), np.array([hi]), tol
    )
    x = float(root[0])
    if full_output:
        return x, its
    return x
