"""Grid-plus-refinement maximization of 1-d functions on an interval.

Used by the certificate verifiers to bound sign conditions: a Chebyshev
sample resolves every local maximum of a moderate-degree polynomial (or
piecewise-linear table), and golden-section refinement around each grid
maximum pins the value down to search-noise level.
"""

from __future__ import annotations

import math

import numpy as np

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

__all__ = ["chebyshev_points", "scan_maximum"]


def chebyshev_points(lo: float, hi: float, n: int) -> np.ndarray:
    """n Chebyshev-Lobatto points on [lo, hi], endpoints included."""
    if n < 2:
        return np.array([lo, hi][: max(n, 1)])
    i = np.arange(n)
    return lo + (hi - lo) * (1.0 - np.cos(np.pi * i / (n - 1))) / 2.0


def _golden_refine(fn, lo: float, hi: float, iterations: int) -> tuple[float, float]:
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1 = float(fn(np.array([x1]))[0])
    f2 = float(fn(np.array([x2]))[0])
    for _ in range(iterations):
        if f1 > f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = float(fn(np.array([x1]))[0])
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = float(fn(np.array([x2]))[0])
    x = 0.5 * (lo + hi)
    return float(fn(np.array([x]))[0]), x


def scan_maximum(
    fn,
    lo: float,
    hi: float,
    grid_size: int,
    golden_iterations: int = 60,
    return_all_maxima: bool = False,
):
    """Maximum of a vectorized function on [lo, hi].

    Returns (value, location) or, with ``return_all_maxima``, additionally
    the refined locations of every interior local maximum of the grid
    sample (used by the LP cutting-plane loop).
    """
    if hi < lo:
        raise ValueError("empty interval")
    if hi == lo:
        v = float(fn(np.array([lo]))[0])
        return (v, lo, [lo]) if return_all_maxima else (v, lo)
    grid = chebyshev_points(lo, hi, max(grid_size, 8))
    values = np.asarray(fn(grid), dtype=float)
    best_val = float(values.max())
    best_loc = float(grid[int(np.argmax(values))])
    interior = np.where(
        (values[1:-1] >= values[:-2]) & (values[1:-1] >= values[2:])
    )[0] + 1
    maxima_locs = []
    for i in interior:
        val, loc = _golden_refine(
            fn, float(grid[i - 1]), float(grid[i + 1]), golden_iterations
        )
        maxima_locs.append(loc)
        if val > best_val:
            best_val, best_loc = val, loc
    if return_all_maxima:
        return best_val, best_loc, maxima_locs
    return best_val, best_loc
