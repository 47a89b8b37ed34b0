"""Scalar root finding shared by the PMS, spectrum and baseline modules."""

from __future__ import annotations

import math
from typing import Callable

from scipy.optimize import brentq

from .errors import SolverError


def expand_bracket(residual: Callable[[float], float], lo: float, hi: float, factor: float = 2.0,
                   max_steps: int = 200) -> tuple[float, float]:
    """Grow ``hi`` geometrically until residual(lo) and residual(hi) differ in sign."""
    r_lo = residual(lo)
    for _ in range(max_steps):
        r_hi = residual(hi)
        if r_lo == 0 or r_hi == 0 or (r_lo < 0) != (r_hi < 0):
            return lo, hi
        lo, r_lo = hi, r_hi
        hi *= factor
    raise SolverError(f"could not bracket a root below {hi:.6g}")


def bracketed_root(residual: Callable[[float], float], lo: float, hi: float, rtol: float = 1e-14) -> float:
    """Root of a sign-changing residual on [lo, hi]."""
    r_lo, r_hi = residual(lo), residual(hi)
    if r_lo == 0:
        return lo
    if r_hi == 0:
        return hi
    if (r_lo < 0) == (r_hi < 0):
        raise SolverError(f"residual does not change sign on [{lo:.6g}, {hi:.6g}]")
    return brentq(residual, lo, hi, xtol=1e-300, rtol=max(rtol, 4 * 2.3e-16), maxiter=500)


def damped_fixed_point(
    update: Callable[[float], float],
    start: float,
    lo: float,
    hi: float,
    tol: float,
    damping: float = 1.0,
    max_iter: int = 200,
) -> tuple[float, int, float]:
    """Iterate x <- (1 - d) x + d update(x) inside [lo, hi].

    Falls back to bracketed root finding on x - update(x) when the iteration
    stalls or leaves the bracket.  Returns (x, iterations, |x - update(x)|).
    ``tol`` is relative to |x|.
    """
    x = start
    trace = []
    for it in range(1, max_iter + 1):
        fx = update(x)
        resid = abs(x - fx)
        trace.append((x, fx))
        if resid <= tol * max(abs(x), 1e-300):
            return x, it, resid
        nxt = (1.0 - damping) * x + damping * fx
        if not (lo <= nxt <= hi) or not math.isfinite(nxt):
            break
        x = nxt
    try:
        x = bracketed_root(lambda v: v - update(v), lo, hi, rtol=tol * 1e-2)
    except SolverError as exc:
        raise SolverError(f"fixed point not found in [{lo:.6g}, {hi:.6g}]", trace[-10:]) from exc
    return x, len(trace) + 1, abs(x - update(x))
