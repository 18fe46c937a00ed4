"""Multivariate series container, circular indexing, and sample moments.

A series is an ``(n, d)`` float array: rows are time points, columns are
components. Functions here accept anything :func:`as_series` can coerce.
"""

from __future__ import annotations

import numpy as np

__all__ = ["as_series", "sample_mean", "circular_index", "sample_autocov"]


def as_series(values) -> np.ndarray:
    """Coerce ``values`` to a validated ``(n, d)`` float array.

    One-dimensional input is treated as a single-component series. The
    result must be non-empty and free of NaN/inf; gaps have to be resolved
    before data enters the library.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ValueError(f"series must be 1- or 2-dimensional, got ndim={x.ndim}")
    n, d = x.shape
    if n < 1 or d < 1:
        raise ValueError(f"series must have n >= 1 and d >= 1, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("series contains NaN or infinite entries")
    return x


def sample_mean(s) -> np.ndarray:
    """Component-wise arithmetic mean, shape ``(d,)``."""
    return as_series(s).mean(axis=0)


def circular_index(s, t: int) -> np.ndarray:
    """Row ``t`` (1-based) of the series wrapped around a circle of period n."""
    x = as_series(s)
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    return x[(t - 1) % x.shape[0]]


def sample_autocov(s, h: int) -> np.ndarray:
    """Lag-``h`` sample autocovariance matrix with divisor n.

    Returns ``(1/n) * sum_t (x_{t+h} - xbar)(x_t - xbar)^T`` over
    ``t = 1..n-h``. The divisor-n convention keeps the implied spectral
    estimate positive semidefinite.
    """
    x = as_series(s)
    n = x.shape[0]
    if h < 0:
        raise ValueError(f"lag must be >= 0, got {h}")
    if h >= n:
        raise ValueError(f"lag {h} out of range for series of length {n}")
    xc = x - x.mean(axis=0)
    g = xc[h:].T @ xc[: n - h] / n
    if h == 0:
        g = (g + g.T) / 2.0
    return g
