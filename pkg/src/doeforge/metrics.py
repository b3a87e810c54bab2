"""Space-filling and accuracy metrics.

Distances are measured in the set's declared domain without rescaling;
normalize first (``to_unit_cube``) when comparing across domains. The
discrepancy metrics require points inside the unit cube.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import SampleSet
from .errors import DomainError, ShapeError, SizeError

_STAR_MAX_N = 512
_STAR_MAX_D = 3


@dataclass(frozen=True)
class MetricReport:
    """One method's scores on one generated set."""

    method: str
    n: int
    d: int
    seed: int | None
    maximin: float
    centered_l2: float
    star_disc: float | None
    elapsed: float


def maximin_distance(s: SampleSet) -> float:
    """Minimum pairwise Euclidean distance of the set."""
    if s.n < 2:
        raise SizeError("need at least two points")
    d2, _, _ = kernels.min_dist_sq(s.points)
    return math.sqrt(d2)


def _unit_points(s: SampleSet):
    x = np.asarray(s.points, dtype=float)
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise DomainError("points must lie in the unit cube")
    return x


def centered_l2_discrepancy(s: SampleSet) -> float:
    """Closed-form centered-L2 discrepancy on the unit cube.

    With a_ik = |x_ik - 1/2|:

        CL2^2 = (13/12)^d
              - (2/n) sum_i prod_k (1 + a_ik/2 - a_ik^2/2)
              + (1/n^2) sum_ij prod_k (1 + a_ik/2 + a_jk/2 - |x_ik - x_jk|/2)
    """
    x = _unit_points(s)
    n, d = x.shape
    a = np.abs(x - 0.5)
    single = np.prod(1.0 + 0.5 * a - 0.5 * a**2, axis=1).sum()
    pair = kernels.cl2_pair_sum(x)
    val = (13.0 / 12.0) ** d - (2.0 / n) * single + pair / n**2
    return math.sqrt(max(val, 0.0))


def _star_1d(x):
    n = x.shape[0]
    xs = np.sort(x)
    best = 0.0
    for v in np.unique(np.concatenate([xs, [1.0]])):
        closed = np.searchsorted(xs, v, side="right")
        opened = np.searchsorted(xs, v, side="left")
        best = max(best, closed / n - v, v - opened / n)
    return best


def _star_grid(x):
    """Exact star discrepancy by corner enumeration with slabbed counting.

    Candidate box corners come from the per-dimension sample coordinates
    plus 1. Closed/open point counts at every corner are cumulative sums
    of the rank histogram, swept slab by slab along the first axis.
    """
    n, d = x.shape
    grids = [np.unique(np.concatenate([x[:, k], [1.0]])) for k in range(d)]
    ranks = np.column_stack(
        [np.searchsorted(grids[k], x[:, k]) for k in range(d)]
    )
    inner_shape = tuple(len(g) for g in grids[1:])
    inner_vol = grids[1]
    for g in grids[2:]:
        inner_vol = np.multiply.outer(inner_vol, g)
    acc = np.zeros(inner_shape)  # histogram of slabs <= current, pre-cumsum
    closed_prev = np.zeros(inner_shape)  # cumulative counts for slabs < a
    best = 0.0
    order = np.argsort(ranks[:, 0], kind="stable")
    ranks = ranks[order]
    starts = np.searchsorted(ranks[:, 0], np.arange(len(grids[0])))
    ends = np.searchsorted(ranks[:, 0], np.arange(len(grids[0])), side="right")
    for a in range(len(grids[0])):
        rows = ranks[starts[a] : ends[a], 1:]
        if rows.shape[0]:
            np.add.at(acc, tuple(rows.T), 1.0)
        closed = acc.copy()
        for axis in range(len(inner_shape)):
            np.cumsum(closed, axis=axis, out=closed)
        # open counts: strict inequality in every axis = closed cumulative
        # of slabs < a, shifted down one cell per inner axis
        opened = closed_prev
        for axis in range(len(inner_shape)):
            opened = np.roll(opened, 1, axis=axis)
            idx = [slice(None)] * len(inner_shape)
            idx[axis] = 0
            opened[tuple(idx)] = 0.0
        vol = grids[0][a] * inner_vol
        best = max(
            best,
            float((closed / n - vol).max()),
            float((vol - opened / n).max()),
        )
        closed_prev = closed
    return best


def star_discrepancy_smallcase(s: SampleSet) -> float:
    """Exact star discrepancy via full box enumeration (small cases only)."""
    x = _unit_points(s)
    n, d = x.shape
    if n > _STAR_MAX_N or d > _STAR_MAX_D:
        raise SizeError(
            f"exact star discrepancy limited to n <= {_STAR_MAX_N}, "
            f"d <= {_STAR_MAX_D}"
        )
    if d == 1:
        return _star_1d(x[:, 0])
    return _star_grid(x)


def mse(a, b) -> float:
    """Mean squared difference of two equal-length vectors."""
    av = np.asarray(a, dtype=float).ravel()
    bv = np.asarray(b, dtype=float).ravel()
    if av.shape != bv.shape:
        raise ShapeError(f"length mismatch: {av.shape} vs {bv.shape}")
    return float(np.mean((av - bv) ** 2))
