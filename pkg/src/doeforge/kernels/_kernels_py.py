"""Pure-numpy kernels; reference semantics for the compiled extension.

Both backends implement the same four operations with identical RNG
consumption (callers pre-draw uniforms), so a given installation produces
deterministic results whichever backend is active.
"""

from __future__ import annotations

import numpy as np


def _chunk_rows(n, d, budget=8_000_000):
    """Rows per block so a (rows, n, d) scratch array stays within budget."""
    return max(1, budget // max(n * d, 1))


def min_dist_sq(points):
    """Minimum pairwise squared distance and its pair (i < j)."""
    x = np.asarray(points, dtype=float)
    n, d = x.shape
    best = np.inf
    bi = bj = 0
    for s in range(0, n, _chunk_rows(n, d)):
        e = min(n, s + _chunk_rows(n, d))
        diff = x[s:e, None, :] - x[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        rows = np.arange(s, e)
        # only the strict upper triangle matters; blank j <= i
        d2[np.arange(n)[None, :] <= rows[:, None]] = np.inf
        k = int(np.argmin(d2))
        i, j = divmod(k, n)
        if d2[i, j] < best:
            best = d2[i, j]
            bi, bj = s + i, j
    return float(best), int(bi), int(bj)


def _full_d2(x):
    diff = x[:, None, :] - x[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    np.fill_diagonal(d2, np.inf)
    return d2


def _row_d2(x, a):
    diff = x - x[a]
    d2 = np.einsum("ij,ij->i", diff, diff)
    d2[a] = np.inf
    return d2


def maximin_interchange(points, rand):
    """Random within-column value interchanges, keeping only improvements.

    ``rand`` is an (m, 3) array of pre-drawn uniforms in [0,1); each row
    drives one attempt: endpoint pick of the current closest pair, column
    draw, partner-row draw. Swaps that do not strictly increase the
    minimum pairwise distance are reverted. Returns the final design and
    its squared minimum distance.
    """
    x = np.array(points, dtype=float)
    n, d = x.shape
    rand = np.asarray(rand, dtype=float)
    d2 = _full_d2(x)
    p1, p2 = divmod(int(np.argmin(d2)), n)
    dmin2 = d2[p1, p2]
    for t in range(rand.shape[0]):
        pick, ucol, urow = rand[t]
        a = p1 if pick < 0.5 else p2
        col = min(int(ucol * d), d - 1)
        b = min(int(urow * n), n - 1)
        if a == b:
            continue
        x[a, col], x[b, col] = x[b, col], x[a, col]
        save_a, save_b = d2[a].copy(), d2[b].copy()
        for r in (a, b):
            row = _row_d2(x, r)
            d2[r, :] = row
            d2[:, r] = row
        nd2 = d2.min()
        if nd2 > dmin2:
            dmin2 = nd2
            p1, p2 = divmod(int(np.argmin(d2)), n)
        else:
            x[a, col], x[b, col] = x[b, col], x[a, col]
            d2[a, :] = save_a
            d2[:, a] = save_a
            d2[b, :] = save_b
            d2[:, b] = save_b
    return x, float(dmin2)


def cvt_assign(generators, samples):
    """Nearest-generator assignment: per-generator hit counts and sums."""
    g = np.asarray(generators, dtype=float)
    y = np.asarray(samples, dtype=float)
    n, d = g.shape
    counts = np.zeros(n, dtype=np.int64)
    sums = np.zeros((n, d), dtype=float)
    step = _chunk_rows(n, d)
    for s in range(0, y.shape[0], step):
        block = y[s : s + step]
        diff = block[:, None, :] - g[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        idx = np.argmin(d2, axis=1)
        counts += np.bincount(idx, minlength=n)
        np.add.at(sums, idx, block)
    return counts, sums


def cl2_pair_sum(u):
    """Pairwise product sum of the centered-L2 discrepancy closed form."""
    x = np.asarray(u, dtype=float)
    n, d = x.shape
    a = np.abs(x - 0.5)
    total = 0.0
    step = _chunk_rows(n, d)
    for s in range(0, n, step):
        e = min(n, s + step)
        prod = np.prod(
            1.0
            + 0.5 * a[s:e, None, :]
            + 0.5 * a[None, :, :]
            - 0.5 * np.abs(x[s:e, None, :] - x[None, :, :]),
            axis=2,
        )
        total += float(prod.sum())
    return total
