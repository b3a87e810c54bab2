"""Tensor-product and hierarchical grids on Chebyshev-Gauss-Lobatto nodes.

Level j holds n_j nodes (1 for j = 1, else 2^(j-1) + 1) at
x_i = -cos(pi (i-1) / (n_j - 1)). Node fractions (i-1)/(n_j-1) are dyadic,
so coarse-level nodes are float-exact members of every finer level; the
hierarchical constructions below rely on that exact nestedness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import CODED, SampleSet
from .errors import DimensionError, DomainError, ShapeError, SizeError

_MAX_POINTS = 10_000_000


@dataclass(frozen=True)
class GridLevelSpec:
    """Hierarchical grid request: level mu in dimension beta."""

    mu: int
    beta: int

    def __post_init__(self):
        if self.mu < 1 or self.beta < 1:
            raise DimensionError("need mu >= 1 and beta >= 1")


@dataclass(frozen=True)
class NodeSet1D:
    """One level of clustered nodes on [-1, 1], strictly increasing."""

    level: int
    nodes: np.ndarray


@dataclass(frozen=True)
class QuadratureWeights:
    """Per-node weights of one level's interpolatory rule on [-1, 1]."""

    level: int
    weights: np.ndarray


def level_size(j):
    """Nodes at level j: 1, then 2^(j-1) + 1."""
    if j < 1:
        raise DimensionError("levels start at 1")
    return 1 if j == 1 else 2 ** (j - 1) + 1


def cgl_nodes(j):
    """Chebyshev-Gauss-Lobatto nodes of level j.

    Level 1 is the single node 0 (the formula's 0/0 limit convention).
    Symmetry and nestedness hold exactly: the second half mirrors the
    first, and each node's cosine argument is a dyadic fraction of pi.
    """
    n = level_size(j)
    if n == 1:
        return NodeSet1D(j, np.zeros(1))
    nodes = np.empty(n)
    for i in range(n):
        t = i / (n - 1)  # dyadic, exact
        if t < 0.5:
            nodes[i] = -math.cos(math.pi * t)
        elif t == 0.5:
            nodes[i] = 0.0
        else:
            nodes[i] = math.cos(math.pi * (1.0 - t))
    return NodeSet1D(j, nodes)


def cgl_weights(j):
    """Interpolatory quadrature weights for the level-j nodes.

    Interior weights follow the cosine-sum closed form; both endpoints
    get 1/(n (n-2)). Level 1 integrates constants exactly: weight 2.
    The second half mirrors the first, so symmetry is float-exact.
    """
    n = level_size(j)
    if n == 1:
        return QuadratureWeights(j, np.array([2.0]))
    w = np.empty(n)
    w[0] = 1.0 / (n * (n - 2))
    half = (n + 1) // 2
    ks = np.arange(1, (n - 3) // 2 + 1)
    for i in range(2, half + 1):  # 1-based node index
        s = float(
            np.sum(
                np.cos(2.0 * math.pi * ks * (i - 1) / (n - 1))
                / (4.0 * ks**2 - 1.0)
            )
        )
        w[i - 1] = (2.0 / (n - 1)) * (
            1.0 - math.cos(math.pi * (i - 1)) / (n * (n - 2)) - 2.0 * s
        )
    w[n - half :] = w[:half][::-1]
    return QuadratureWeights(j, w)


def full_grid(levels):
    """Cartesian product of per-dimension node sets, lexicographic rows."""
    levels = [int(j) for j in levels]
    if not levels:
        raise DimensionError("need at least one level")
    sizes = [level_size(j) for j in levels]
    total = math.prod(sizes)
    if total > _MAX_POINTS:
        raise SizeError(f"{total} grid points exceed the size guard")
    axes = [cgl_nodes(j).nodes for j in levels]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack(mesh, axis=-1).reshape(total, len(levels))
    return SampleSet(pts, CODED, "full-grid", None, {"levels": tuple(levels)})


def _barycentric_basis(nodes, xq):
    """Lagrange basis values at xq for Chebyshev-extrema nodes."""
    n = nodes.shape[0]
    if n == 1:
        return np.ones(1)
    diff = xq - nodes
    hit = np.flatnonzero(diff == 0.0)
    basis = np.zeros(n)
    if hit.size:
        basis[hit[0]] = 1.0
        return basis
    wb = np.ones(n)
    wb[1::2] = -1.0
    wb[0] *= 0.5
    wb[-1] *= 0.5
    t = wb / diff
    return t / t.sum()


def lagrange_interpolate(levels, f_values, query):
    """Tensor-product Lagrange interpolation on a full grid.

    ``f_values`` holds one value per grid node in ``full_grid`` row order;
    ``query`` is a point in [-1, 1]^beta.
    """
    levels = [int(j) for j in levels]
    sizes = [level_size(j) for j in levels]
    f = np.asarray(f_values, dtype=float).ravel()
    if f.size != math.prod(sizes):
        raise ShapeError(
            f"expected {math.prod(sizes)} node values, got {f.size}"
        )
    q = np.asarray(query, dtype=float).ravel()
    if q.size != len(levels):
        raise ShapeError(f"query must have {len(levels)} coordinates")
    vals = f.reshape(sizes)
    for j, xq in zip(levels, q):
        basis = _barycentric_basis(cgl_nodes(j).nodes, xq)
        vals = np.tensordot(basis, vals, axes=(0, 0))
    return float(vals)


def _level_indices(total_max, beta):
    """All multi-indices j (each >= 1) with sum(j) <= total_max."""
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 1:
            for j in range(1, budget + 1):
                out.append(prefix + (j,))
            return
        for j in range(1, budget - (remaining - 1) + 1):
            rec(prefix + (j,), remaining - 1, budget - j)

    rec((), beta, total_max)
    return out


def sparse_grid(spec: GridLevelSpec):
    """Union of tensor grids over multi-indices with sum(j) <= mu + beta - 1.

    Nested nodes are deduplicated by exact coordinate equality; rows are
    sorted lexicographically.
    """
    total = spec.mu + spec.beta - 1
    seen = set()
    for j in _level_indices(total, spec.beta):
        axes = [cgl_nodes(lv).nodes for lv in j]
        for pt in itertools.product(*axes):
            seen.add(pt)
        if len(seen) > _MAX_POINTS:
            raise SizeError("sparse grid exceeds the size guard")
    pts = np.array(sorted(seen))
    return SampleSet(
        pts, CODED, "sparse-grid", None,
        {"mu": spec.mu, "beta": spec.beta},
    )


def _combination_terms(mu, beta):
    """Telescoped difference form: (multi-index, coefficient) pairs."""
    total = mu + beta - 1
    terms = []
    for j in _level_indices(total, beta):
        s = sum(j)
        if s < max(beta, total - beta + 1):
            continue
        c = (-1) ** (total - s) * math.comb(beta - 1, total - s)
        terms.append((j, c))
    return terms


def smolyak_interpolate(spec: GridLevelSpec, f, query):
    """Hierarchical (Smolyak) interpolant of f evaluated at query.

    f is evaluated once per sparse-grid node (exact-coordinate memoized)
    across all tensor terms of the combination formula.
    """
    q = np.asarray(query, dtype=float).ravel()
    if q.size != spec.beta:
        raise ShapeError(f"query must have {spec.beta} coordinates")
    cache = {}

    def f_cached(pt):
        if pt not in cache:
            cache[pt] = float(f(np.array(pt)))
        return cache[pt]

    total = 0.0
    for j, c in _combination_terms(spec.mu, spec.beta):
        axes = [cgl_nodes(lv).nodes for lv in j]
        bases = [_barycentric_basis(ax, xq) for ax, xq in zip(axes, q)]
        vals = np.array(
            [f_cached(pt) for pt in itertools.product(*axes)]
        ).reshape([ax.shape[0] for ax in axes])
        for basis in bases:
            vals = np.tensordot(basis, vals, axes=(0, 0))
        total += c * float(vals)
    return total


def sparse_quadrature(spec: GridLevelSpec, f):
    """Sparse-rule estimate of the integral of f over [-1, 1]^beta."""
    cache = {}

    def f_cached(pt):
        if pt not in cache:
            cache[pt] = float(f(np.array(pt)))
        return cache[pt]

    total = 0.0
    for j, c in _combination_terms(spec.mu, spec.beta):
        axes = [cgl_nodes(lv).nodes for lv in j]
        wts = [cgl_weights(lv).weights for lv in j]
        term = 0.0
        for pt, wprod in zip(
            itertools.product(*axes),
            itertools.product(*wts),
        ):
            term += math.prod(wprod) * f_cached(pt)
        total += c * term
    return total


# ---------------------------------------------------------------------------
# rotations


@dataclass(frozen=True)
class RotationSpec:
    """Shared rotation angle applied to a list of coordinate planes.

    ``planes=None`` means every pair (i, j), i < j, in lexicographic
    order.
    """

    theta: float
    planes: tuple | None = None

    def resolve_planes(self, dims):
        if self.planes is None:
            return tuple(itertools.combinations(range(dims), 2))
        planes = tuple((int(i), int(j)) for i, j in self.planes)
        for i, j in planes:
            if not 0 <= i < j < dims:
                raise DimensionError(f"invalid rotation plane ({i}, {j})")
        return planes


def rotation_matrix(spec: RotationSpec, dims):
    """Product of the plane rotations, applied in listed order."""
    if dims < 2:
        raise DimensionError("rotation needs at least 2 dimensions")
    r = np.eye(dims)
    c, s = math.cos(spec.theta), math.sin(spec.theta)
    for i, j in spec.resolve_planes(dims):
        g = np.eye(dims)
        g[i, i] = c
        g[i, j] = -s
        g[j, i] = s
        g[j, j] = c
        r = g @ r
    return r


def rotate_points(s: SampleSet, spec: RotationSpec):
    """Rotate a coded-domain set, rescaling uniformly back into the cube.

    If any rotated coordinate exceeds 1 in magnitude the whole set is
    scaled by 1/max|coordinate|; the angle, planes and applied scale are
    recorded in params.
    """
    if s.domain != CODED:
        raise DomainError("rotate_points expects a coded-domain sample set")
    r = rotation_matrix(spec, s.dims)
    pts = s.points @ r.T
    mx = float(np.abs(pts).max())
    scale = 1.0 / mx if mx > 1.0 else 1.0
    if scale != 1.0:
        pts = pts * scale
    params = dict(s.params)
    params.update(
        {
            "theta": spec.theta,
            "planes": spec.resolve_planes(s.dims),
            "rescale": scale,
        }
    )
    return SampleSet(pts, CODED, s.method, s.seed, params)


def optimize_rotation(s: SampleSet, objective="maximin", step=math.radians(1.0)):
    """Grid-search the rotation angle over [0, pi/4].

    ``objective="maximin"`` maximizes the minimum pairwise distance of the
    rotated (rescaled) set; ``"centered-l2"`` minimizes its centered-L2
    discrepancy after mapping to the unit cube. Ties break toward the
    smaller angle. Returns (theta, rotated_set).
    """
    from .core import to_unit_cube
    from .metrics import centered_l2_discrepancy, maximin_distance

    if objective not in ("maximin", "centered-l2"):
        raise ValueError(f"unknown objective {objective!r}")
    if step <= 0:
        raise ValueError("step must be positive")
    n_steps = int(math.floor(math.pi / 4 / step + 1e-9))
    angles = [k * step for k in range(n_steps + 1)]
    if angles[-1] < math.pi / 4 - 1e-12:
        angles.append(math.pi / 4)
    if s.n < 2:
        # every rotation is equivalent for a lone point; tie-break to 0
        return 0.0, rotate_points(s, RotationSpec(0.0))
    best_theta = None
    best_score = None
    best_set = None
    for theta in angles:
        rot = rotate_points(s, RotationSpec(theta))
        if objective == "maximin":
            score = maximin_distance(rot)
        else:
            score = -centered_l2_discrepancy(to_unit_cube(rot))
        if best_score is None or score > best_score:
            best_theta, best_score, best_set = theta, score, rot
    return best_theta, best_set
