"""Block-size calibration by matching bootstrap and model mean-covariance traces.

The model side is the long-run covariance trace of a fitted (or known)
vector autoregression divided by the sample length; the bootstrap side
is the trace of the exact generalized-bootstrap mean covariance as a
function of the real block size ``b``. The solver scans a coarse grid
for a sign change of the difference, then bisects. The legacy integer
rule that simply picks the closest integer block size is provided for
comparison, along with a grid evaluation of the whole trace curve for
plotting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bootstrap import _mean_cov_from_law, n_law
from .series import as_series
from .var import VarModel, mean_cov_trace_limit

__all__ = [
    "TraceCurve",
    "SolveReport",
    "trace_curve",
    "solve_block_size",
    "argmin_integer_block_size",
    "STATUS_SOLVED",
    "STATUS_NO_SOLUTION",
    "STATUS_NON_MONOTONE",
]

STATUS_SOLVED = "solved"
STATUS_NO_SOLUTION = "no-solution"
STATUS_NON_MONOTONE = "non-monotone-warning"

_COARSE_STEP = 0.5
_MAX_BISECT = 200


@dataclass(frozen=True)
class TraceCurve:
    """Trace of the bootstrap mean covariance along a block-size grid."""

    b_values: np.ndarray
    traces: np.ndarray
    n: int

    def to_csv(self) -> str:
        lines = ["b,trace"]
        lines += [
            f"{float(b)!r},{float(t)!r}"
            for b, t in zip(self.b_values, self.traces)
        ]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SolveReport:
    """Outcome of the trace-matching equation for the block size.

    ``b_hat`` is None exactly when ``status`` is ``no-solution``; in that
    case ``achieved`` still reports the trace at the grid point closest
    to the target. ``iterations`` counts bisection steps after
    bracketing.
    """

    b_hat: float | None
    target: float
    achieved: float
    iterations: int
    bracket: tuple[float, float]
    status: str

    def to_dict(self) -> dict:
        return {
            "b_hat": self.b_hat,
            "target": self.target,
            "achieved": self.achieved,
            "iterations": self.iterations,
            "bracket": list(self.bracket),
            "status": self.status,
        }


class _TraceEvaluator:
    """Trace of the exact bootstrap mean covariance with a block-mean cache.

    Different block sizes share the same per-length block-mean
    covariances, so one cache serves the whole scan.
    """

    def __init__(self, x: np.ndarray):
        self.x = x
        self.n = x.shape[0]
        self._cache: dict[int, np.ndarray] = {}

    def __call__(self, b: float) -> float:
        law = n_law(self.n, b)
        cov = _mean_cov_from_law(self.x, law, self._cache)
        return float(np.trace(cov))


def trace_curve(s, b_grid) -> TraceCurve:
    """Evaluate the bootstrap mean-covariance trace on a block-size grid.

    Grid values must be strictly increasing and lie in ``(1, n]``.
    """
    x = as_series(s)
    n = x.shape[0]
    bs = np.asarray(b_grid, dtype=float)
    if bs.ndim != 1 or bs.size == 0:
        raise ValueError("b_grid must be a nonempty one-dimensional collection")
    if np.any(bs <= 1.0) or np.any(bs > n):
        raise ValueError(f"grid values must lie in (1, {n}]")
    if np.any(np.diff(bs) <= 0.0):
        raise ValueError("grid values must be strictly increasing")
    ev = _TraceEvaluator(x)
    traces = np.array([ev(b) for b in bs])
    return TraceCurve(b_values=bs, traces=traces, n=n)


def _coarse_grid(lo: float, hi: float) -> np.ndarray:
    grid = np.arange(lo, hi, _COARSE_STEP)
    if grid.size == 0 or grid[-1] < hi:
        grid = np.append(grid, hi)
    return grid


def solve_block_size(s, m: VarModel, b_range=None, tol: float = 1e-4) -> SolveReport:
    """Solve for the real block size whose bootstrap trace hits the model trace.

    The target is ``mean_cov_trace_limit(m) / n``. A coarse scan (step
    0.5) over ``b_range`` (default ``(1 + 1e-3, n/4]``) locates sign
    changes of trace minus target; bisection then refines the smallest
    bracketing interval until the relative residual is at most ``tol``.
    No sign change yields status ``no-solution`` unless some grid point
    already meets the tolerance; more than one sign change yields the
    smallest root with status ``non-monotone-warning``.
    """
    x = as_series(s)
    n = x.shape[0]
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if b_range is None:
        b_range = (1.0 + 1e-3, n / 4.0)
    lo, hi = float(b_range[0]), float(b_range[1])
    if not (1.0 < lo < hi <= n):
        raise ValueError(f"need 1 < lo < hi <= {n}, got ({lo}, {hi})")

    target = mean_cov_trace_limit(m) / n
    ev = _TraceEvaluator(x)
    grid = _coarse_grid(lo, hi)
    resid = np.array([ev(b) - target for b in grid])

    scale = abs(target)
    hits = np.abs(resid) <= tol * scale
    signs = np.sign(resid)
    change_idx = [
        i
        for i in range(len(grid) - 1)
        if signs[i] != 0.0 and signs[i + 1] != 0.0 and signs[i] != signs[i + 1]
    ]

    if not change_idx:
        if np.any(hits):
            # The curve touches the target without crossing it.
            j = int(np.argmin(np.abs(resid)))
            return SolveReport(
                b_hat=float(grid[j]),
                target=target,
                achieved=float(resid[j] + target),
                iterations=0,
                bracket=(lo, hi),
                status=STATUS_SOLVED,
            )
        j = int(np.argmin(np.abs(resid)))
        return SolveReport(
            b_hat=None,
            target=target,
            achieved=float(resid[j] + target),
            iterations=0,
            bracket=(lo, hi),
            status=STATUS_NO_SOLUTION,
        )

    status = STATUS_SOLVED if len(change_idx) == 1 else STATUS_NON_MONOTONE
    i = change_idx[0]
    a, fa = float(grid[i]), float(resid[i])
    c, fc = float(grid[i + 1]), float(resid[i + 1])
    if abs(fa) <= tol * scale:
        return SolveReport(
            b_hat=a, target=target, achieved=fa + target, iterations=0,
            bracket=(a, c), status=status,
        )
    iterations = 0
    mid, fmid = a, fa
    while iterations < _MAX_BISECT:
        mid = 0.5 * (a + c)
        fmid = ev(mid) - target
        iterations += 1
        if abs(fmid) <= tol * scale:
            break
        if (fmid > 0.0) == (fa > 0.0):
            a, fa = mid, fmid
        else:
            c, fc = mid, fmid
    else:
        raise ArithmeticError(
            f"bisection failed to reach residual {tol * scale:.3g} in {_MAX_BISECT} steps"
        )
    return SolveReport(
        b_hat=float(mid),
        target=target,
        achieved=float(fmid + target),
        iterations=iterations,
        bracket=(a, c),
        status=status,
    )


def argmin_integer_block_size(s, m: VarModel, b_max: int) -> int:
    """Integer block size in ``1..b_max`` whose trace is closest to the target.

    Ties break toward the smaller block size.
    """
    x = as_series(s)
    n = x.shape[0]
    if not 1 <= b_max <= n:
        raise ValueError(f"b_max must be in 1..{n}, got {b_max}")
    target = mean_cov_trace_limit(m) / n
    ev = _TraceEvaluator(x)
    errors = [abs(ev(float(b)) - target) for b in range(1, b_max + 1)]
    return 1 + int(np.argmin(errors))
