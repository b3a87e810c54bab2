"""Quasi-random and space-filling generators.

Sequences (Sobol, Halton, Hammersley, Faure) are seedless and
deterministic; Latin hypercube and centroidal Voronoi samplers draw from
a :class:`~doeforge.core.RandomStream`. All outputs live in the unit cube.
Sequences index from 1 by default; ``include_zero`` starts them at index 0
(prepending the origin point).
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import kernels
from .core import RNG_NAME, UNIT_CUBE, RandomStream, SampleSet
from .errors import DensityError, DimensionError, SizeError


# ---------------------------------------------------------------------------
# radical-inverse family


def _primes(k):
    """First k primes by trial division (k is small)."""
    primes = []
    cand = 2
    while len(primes) < k:
        if all(cand % p for p in primes):
            primes.append(cand)
        cand += 1
    return primes


def _smallest_prime_at_least(n):
    cand = max(2, n)
    while True:
        if all(cand % p for p in range(2, int(math.isqrt(cand)) + 1)):
            return cand
        cand += 1


def _radical_inverse(indices, base):
    """Mirror the base-b digits of each index about the radix point."""
    idx = np.asarray(indices, dtype=np.int64).copy()
    out = np.zeros(idx.shape, dtype=float)
    f = 1.0 / base
    while np.any(idx > 0):
        out += f * (idx % base)
        idx //= base
        f /= base
    return out


def halton(n, d, include_zero=False):
    """Halton sequence: dimension i uses the i-th prime base."""
    if d < 1:
        raise DimensionError("need d >= 1")
    if n < 1:
        raise SizeError("need n >= 1")
    start = 0 if include_zero else 1
    idx = np.arange(start, start + n)
    pts = np.column_stack([_radical_inverse(idx, b) for b in _primes(d)])
    return SampleSet(
        pts, UNIT_CUBE, "halton", None, {"include_zero": include_zero}
    )


def hammersley(n, d):
    """Hammersley set: index ramp i/n plus d-1 radical-inverse columns.

    The total count n is fixed up front; point i of n has first
    coordinate i/n, so the first column fills (0, 1].
    """
    if d < 2:
        raise DimensionError("hammersley needs d >= 2 (first coordinate is i/n)")
    if n < 1:
        raise SizeError("need n >= 1")
    idx = np.arange(1, n + 1)
    cols = [idx / n]
    cols += [_radical_inverse(idx, b) for b in _primes(d - 1)]
    return SampleSet(np.column_stack(cols), UNIT_CUBE, "hammersley", None, {})


def faure(n, d, include_zero=False):
    """Faure sequence in base = smallest prime >= d.

    Dimension k applies the (k-1)-th power of the upper-triangular Pascal
    matrix (mod base) to the base-m digits of the index before radical
    inversion; dimension 1 is the plain radical inverse.
    """
    if d < 1:
        raise DimensionError("need d >= 1")
    if n < 1:
        raise SizeError("need n >= 1")
    base = _smallest_prime_at_least(d)
    start = 0 if include_zero else 1
    idx = np.arange(start, start + n, dtype=np.int64)
    ndig = max(1, int(math.ceil(math.log(int(idx.max()) + 1) / math.log(base))))
    digits = np.empty((n, ndig), dtype=np.int64)
    rem = idx.copy()
    for j in range(ndig):
        digits[:, j] = rem % base
        rem //= base
    weights = base ** -(np.arange(1, ndig + 1, dtype=float))
    cols = []
    for k in range(d):
        # (P^k)[j, l] = C(l, j) * k^(l-j)  (mod base), upper triangular
        t = np.zeros((ndig, ndig), dtype=np.int64)
        for j in range(ndig):
            for l in range(j, ndig):
                t[j, l] = (math.comb(l, j) * pow(k, l - j, base)) % base
        transformed = (digits @ t.T) % base
        cols.append(transformed @ weights)
    pts = np.column_stack(cols)
    return SampleSet(
        pts,
        UNIT_CUBE,
        "faure",
        None,
        {"base": base, "include_zero": include_zero},
    )


# ---------------------------------------------------------------------------
# binary-fraction (direction-number) sequence


@dataclass(frozen=True)
class SobolParams:
    """Per-dimension primitive polynomials and initial direction integers.

    ``polys[j] = (q, a)`` encodes x^q + b1 x^{q-1} + ... + b_{q-1} x + 1
    with the interior bits b1..b_{q-1} packed into ``a``; ``minit[j]``
    holds the odd initial integers m_i (v_i = m_i / 2^i). Dimension 1 is
    the degenerate q = 0 entry: every m_i is 1.
    """

    polys: tuple
    minit: tuple
    w: int = 32

    @property
    def dims(self):
        return len(self.polys)

    @classmethod
    def from_file(cls, path, w=32):
        polys, minit = [], []
        with open(path) as fh:
            for raw in fh:
                line = raw.split("#")[0].strip()
                if not line:
                    continue
                vals = [int(v) for v in line.split()]
                _, q, a, ms = vals[0], vals[1], vals[2], vals[3:]
                polys.append((q, a))
                minit.append(tuple(ms))
        return cls(tuple(polys), tuple(minit), w)

    @classmethod
    def load_default(cls):
        return _default_sobol_params()

    def direction_numbers(self, d):
        """Integer direction numbers, shape (d, w): V[j, i-1] = m_i << (w-i)."""
        if d > self.dims:
            raise DimensionError(
                f"catalog covers {self.dims} dimensions, requested {d}"
            )
        w = self.w
        v = np.zeros((d, w), dtype=np.uint64)
        for j in range(d):
            q, a = self.polys[j]
            if q == 0:
                mm = [1] * w
            else:
                mm = list(self.minit[j][:q])
                for i in range(q, w):
                    new = mm[i - q] ^ (mm[i - q] << q)
                    for t in range(1, q):
                        if (a >> (q - 1 - t)) & 1:
                            new ^= mm[i - t] << t
                    mm.append(new)
            for i in range(w):
                v[j, i] = np.uint64(mm[i] << (w - 1 - i))
        return v


@functools.lru_cache(maxsize=1)
def _default_sobol_params():
    path = resources.files("doeforge").joinpath("data/sobol_params.txt")
    with resources.as_file(path) as p:
        return SobolParams.from_file(p)


def sobol(n, d, params=None, order="plain", include_zero=False):
    """Direction-number sequence: XOR of v_i over the set bits of the index.

    ``order="plain"`` uses the raw binary digits of the index;
    ``order="gray"`` emits the same point set in Gray-code order.
    """
    if params is None:
        params = SobolParams.load_default()
    if d < 1:
        raise DimensionError("need d >= 1")
    if n < 1:
        raise SizeError("need n >= 1")
    if order not in ("plain", "gray"):
        raise ValueError(f"unknown order {order!r}")
    start = 0 if include_zero else 1
    if start + n > (1 << params.w):
        raise SizeError(f"index range exceeds 2^{params.w}")
    v = params.direction_numbers(d)
    idx = np.arange(start, start + n, dtype=np.uint64)
    if order == "gray":
        idx = idx ^ (idx >> np.uint64(1))
    acc = np.zeros((n, d), dtype=np.uint64)
    for k in range(params.w):
        mask = (idx >> np.uint64(k)) & np.uint64(1) == 1
        if np.any(mask):
            acc[mask] ^= v[:, k]
    pts = acc / float(1 << params.w)
    return SampleSet(
        pts,
        UNIT_CUBE,
        "sobol",
        None,
        {"order": order, "include_zero": include_zero, "w": params.w},
    )


# ---------------------------------------------------------------------------
# Latin hypercube


def _lhs_matrix(n, d, rng):
    """One LHS draw: column j is (P_j(i) - U_j(i)) / n."""
    x = np.empty((n, d))
    for j in range(d):
        perm = rng.permutation(n) + 1
        u = rng.random(n)
        u[u == 0.0] = np.nextafter(0.0, 1.0)  # keep jitter in (0, 1)
        x[:, j] = (perm - u) / n
    return x


def lhs_basic(n, d, stream: RandomStream):
    """Basic Latin hypercube: one point per 1/n stratum in every dimension."""
    if n < 1 or d < 1:
        raise SizeError("need n >= 1 and d >= 1")
    pts = _lhs_matrix(n, d, stream.generator())
    return SampleSet(
        pts, UNIT_CUBE, "lhs", stream.seed,
        {"substream": stream.substream, "rng": RNG_NAME},
    )


@dataclass
class MaximinState:
    """Best-so-far tracking across interchange restarts."""

    current: np.ndarray
    best: np.ndarray
    best_min_dist: float

    def offer(self, design, min_dist):
        self.current = design
        if min_dist > self.best_min_dist:
            self.best = design
            self.best_min_dist = min_dist


def lhs_maximin(n, d, stream: RandomStream, n_iter=10, m=100):
    """Latin hypercube improved by distance-increasing value interchanges.

    Each round draws a fresh basic hypercube and applies ``m`` random
    within-column interchanges, keeping a swap only when it increases the
    minimum pairwise distance. Rounds stop early once a round ends worse
    than its predecessor; the best design over all rounds is returned, so
    the result never regresses below the first basic draw.
    """
    if n < 2:
        raise SizeError("need n >= 2 for pairwise distances")
    rng = stream.generator()
    state = None
    prev = None
    history = []
    rounds = 0
    for _ in range(n_iter):
        rounds += 1
        x = _lhs_matrix(n, d, rng)
        rand = rng.random((m, 3))
        x, dmin2 = kernels.maximin_interchange(x, rand)
        dmin = math.sqrt(dmin2)
        if state is None:
            state = MaximinState(x, x, dmin)
        else:
            state.offer(x, dmin)
        history.append(state.best_min_dist)
        if prev is not None and dmin < prev:
            break
        prev = dmin
    params = {
        "substream": stream.substream,
        "rng": RNG_NAME,
        "n_iter": n_iter,
        "m": m,
        "rounds_run": rounds,
        "min_distance": state.best_min_dist,
        "min_distance_history": tuple(history),
    }
    return SampleSet(state.best, UNIT_CUBE, "maximin-lhs", stream.seed, params)


# ---------------------------------------------------------------------------
# centroidal Voronoi tessellation


@dataclass(frozen=True)
class CvtConfig:
    """Averaged-update weights and stopping rule for CVT sampling.

    The update for a generator whose cell received sample mean u is
    x <- ((a1*p + b1)*x + (a2*p + b2)*u) / (p + 1), p <- p + 1, with
    a1 + a2 = 1 and b1 + b2 = 1.
    """

    n_iter: int = 200
    m: int | None = None  # default max(1000, 100 n), resolved at call time
    alpha1: float = 0.5
    alpha2: float = 0.5
    beta1: float = 0.5
    beta2: float = 0.5
    tol: float = 1e-4

    def __post_init__(self):
        if abs(self.alpha1 + self.alpha2 - 1.0) > 1e-12:
            raise ValueError("alpha1 + alpha2 must equal 1")
        if abs(self.beta1 + self.beta2 - 1.0) > 1e-12:
            raise ValueError("beta1 + beta2 must equal 1")
        if self.alpha2 <= 0 or self.beta2 <= 0:
            raise ValueError("alpha2 and beta2 must be positive")
        if self.n_iter < 1 or self.tol <= 0:
            raise ValueError("need n_iter >= 1 and tol > 0")


def _draw_density(rng, m, d, density):
    """m points distributed as the (vectorized) density via rejection."""
    if density is None:
        return rng.random((m, d))
    pilot = rng.random((4096, d))
    vals = np.asarray(density(pilot), dtype=float)
    if np.any(vals < 0):
        raise DensityError("density returned negative values")
    bound = float(vals.max())
    if bound <= 0.0:
        raise DensityError("density vanishes everywhere on the pilot sample")
    bound *= 2.0  # headroom over the pilot estimate of the sup
    out = np.empty((m, d))
    have = 0
    while have < m:
        cand = rng.random((m, d))
        keep = rng.random(m) * bound < np.asarray(density(cand), dtype=float)
        took = cand[keep][: m - have]
        out[have : have + took.shape[0]] = took
        have += took.shape[0]
    return out


def cvt(n, d, stream: RandomStream, cfg: CvtConfig | None = None, density=None):
    """Centroidal Voronoi tessellation generators by averaged updates.

    Per iteration, m density-distributed points are assigned to their
    nearest generator; each non-empty generator moves toward its cell
    mean under the config's weight rule (empty cells stay put). Stops at
    n_iter or when the mean generator displacement drops below tol.
    """
    if n < 1 or d < 1:
        raise SizeError("need n >= 1 and d >= 1")
    cfg = cfg or CvtConfig()
    m = cfg.m if cfg.m is not None else max(1000, 100 * n)
    if m < n:
        warnings.warn("cvt: m < n samples per iteration, empty cells likely")
    rng = stream.generator()
    x = rng.random((n, d))
    p = np.ones(n)
    converged = False
    disp = math.inf
    iters = 0
    for _ in range(cfg.n_iter):
        iters += 1
        y = _draw_density(rng, m, d, density)
        counts, sums = kernels.cvt_assign(x, y)
        hit = counts > 0
        moved = np.zeros(n)
        if np.any(hit):
            u = sums[hit] / counts[hit, None]
            ph = p[hit]
            new = (
                (cfg.alpha1 * ph + cfg.beta1)[:, None] * x[hit]
                + (cfg.alpha2 * ph + cfg.beta2)[:, None] * u
            ) / (ph + 1.0)[:, None]
            new = np.clip(new, 0.0, 1.0)
            moved[hit] = np.linalg.norm(new - x[hit], axis=1)
            x[hit] = new
            p[hit] += 1.0
        disp = float(moved.mean())
        if disp < cfg.tol:
            converged = True
            break
    params = {
        "substream": stream.substream,
        "rng": RNG_NAME,
        "n_iter": cfg.n_iter,
        "m": m,
        "alpha1": cfg.alpha1,
        "alpha2": cfg.alpha2,
        "beta1": cfg.beta1,
        "beta2": cfg.beta2,
        "tol": cfg.tol,
        "iterations_run": iters,
        "converged": converged,
        "final_displacement": disp,
        "nonuniform_density": density is not None,
    }
    return SampleSet(x, UNIT_CUBE, "cvt", stream.seed, params)
