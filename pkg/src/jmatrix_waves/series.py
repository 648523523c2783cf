"""Partial-sum bookkeeping and tail acceleration for slowly convergent series.

The reference-solution series have terms that decay like n^(-1/2) with an
alternating sign and a slowly drifting phase, so raw partial sums wobble
indefinitely at the 1e-2 level.  Two accelerators are provided:

``avg``
    Weighted mean of the trailing partial sums: at least ``window`` of them
    and never less than half of all summed terms.  The weights are a
    smooth compactly supported bump exp(-1/(x(1-x))), whose spectrum falls
    off faster than any power, so oscillating tails (including the
    polynomially growing ones of the radial series near the origin) cancel
    to near machine precision.  Flat or Hann weights stall at 1e-3..1e-7.
``wynn``
    Wynn's epsilon algorithm applied pointwise to the last ``depth``
    partial sums.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable

import numpy as np

ACCEL_ALIASES = {
    "none": "none",
    "avg": "avg",
    "partial_sum_average": "avg",
    "wynn": "wynn",
    "wynn_epsilon": "wynn",
}

DEFAULT_WINDOW = 64
DEFAULT_WYNN_DEPTH = 9


def normalize_accel(accel: str) -> str:
    try:
        return ACCEL_ALIASES[accel]
    except KeyError:
        raise ValueError(f"unknown acceleration mode {accel!r}; expected one of {sorted(ACCEL_ALIASES)}") from None


def tail_weights(width: int, window: str = "bump") -> np.ndarray:
    """Normalized weights for averaging ``width`` trailing partial sums (oldest first)."""
    if width < 1:
        raise ValueError("width must be at least 1")
    x = (np.arange(width) + 0.5) / width
    if window == "bump":
        w = np.exp(-1.0 / (x * (1.0 - x)))
    elif window == "hann":
        w = np.sin(np.pi * x) ** 2
    elif window == "uniform":
        w = np.ones(width)
    else:
        raise ValueError(f"unknown window {window!r}")
    return w / w.sum()


def wynn_epsilon(partials) -> np.ndarray:
    """Wynn epsilon extrapolation of a sequence of partial sums along axis 0.

    Returns the deepest even-column entry.  Points where the table hits an
    exact zero difference fall back to the last partial sum.
    """
    s = np.asarray(partials, dtype=float)
    k = s.shape[0]
    if k < 3:
        return s[-1].copy()
    prev = np.zeros((k + 1,) + s.shape[1:])  # epsilon_{-1}
    cur = s.copy()  # epsilon_0
    best = s[-1].copy()
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for col in range(1, k):
            diff = cur[1:] - cur[:-1]
            nxt = prev[1 : cur.shape[0]] + 1.0 / diff
            prev, cur = cur, nxt
            if col % 2 == 0:
                best = cur[-1]
    out = np.where(np.isfinite(best), best, s[-1])
    return out


def lower_ramp(start_n: int, n_max: int, cutoff: str = "sharp") -> np.ndarray:
    """Per-term multipliers that drop the lowest ``start_n`` terms.

    ``sharp`` zeroes terms below ``start_n`` exactly.  ``smooth`` removes them
    through the same bump taper over indices ``[start_n - start_n//2,
    start_n + start_n//2)``; on average ``start_n`` terms are still removed,
    but the Gibbs-like ripple that a hard cut leaves near the origin is gone.
    """
    ramp = np.ones(n_max + 1)
    if cutoff == "sharp" or start_n == 0:
        ramp[:start_n] = 0.0
        return ramp
    if cutoff != "smooth":
        raise ValueError(f"cutoff must be 'sharp' or 'smooth', got {cutoff!r}")
    half = max(start_n // 2, 1)
    lo, hi = start_n - half, min(start_n + half, n_max + 1)
    ramp[:lo] = 0.0
    w = tail_weights(2 * half)
    ramp[lo:hi] = (np.cumsum(w) - 0.5 * w)[: hi - lo]
    return ramp


def sum_series(
    coeffs: np.ndarray,
    basis_rows: Iterable[np.ndarray],
    start_n: int,
    accel: str = "avg",
    window: int = DEFAULT_WINDOW,
    taper: str = "bump",
    wynn_depth: int = DEFAULT_WYNN_DEPTH,
    cutoff: str = "sharp",
) -> np.ndarray:
    """Accelerated value of sum_{n=start_n}^{len(coeffs)-1} coeffs[n] * basis_rows[n].

    ``basis_rows`` is consumed lazily, one row per index, so the full basis
    table never has to be held in memory.
    """
    mode = normalize_accel(accel)
    n_max = len(coeffs) - 1
    if start_n > n_max:
        raise ValueError(f"start_n={start_n} exceeds n_max={n_max}")
    coeffs = np.asarray(coeffs, dtype=float) * lower_ramp(start_n, n_max, cutoff)
    first = start_n - max(start_n // 2, 1) if cutoff == "smooth" and start_n > 0 else start_n
    count = n_max - start_n + 1
    width = min(max(window, count // 2), count)
    weights = tail_weights(width, taper) if mode == "avg" else None
    first_avg = n_max - width + 1
    recent = deque(maxlen=min(wynn_depth, count))

    partial = None
    averaged = None
    for n, row in enumerate(basis_rows):
        if n > n_max:
            break
        if n < first:
            continue
        if partial is None:
            partial = np.zeros(np.shape(row))
            averaged = np.zeros(np.shape(row))
        partial = partial + coeffs[n] * row
        if mode == "avg" and n >= first_avg:
            averaged += weights[n - first_avg] * partial
        elif mode == "wynn":
            recent.append(partial)
    if mode == "avg":
        return averaged
    if mode == "wynn":
        return wynn_epsilon(np.array(recent))
    return partial
