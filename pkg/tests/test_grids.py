import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from doeforge import (
    CODED,
    GridLevelSpec,
    RotationSpec,
    SampleSet,
    cgl_nodes,
    cgl_weights,
    full_grid,
    lagrange_interpolate,
    optimize_rotation,
    rotate_points,
    rotation_matrix,
    smolyak_interpolate,
    sparse_grid,
    sparse_quadrature,
)
from doeforge.errors import DimensionError, ShapeError


def test_cgl_node_values():
    assert np.array_equal(cgl_nodes(1).nodes, [0.0])
    assert np.array_equal(cgl_nodes(2).nodes, [-1.0, 0.0, 1.0])
    want = [-1.0, -math.sqrt(2) / 2, 0.0, math.sqrt(2) / 2, 1.0]
    assert np.max(np.abs(cgl_nodes(3).nodes - want)) < 1e-15


def test_cgl_nested_exactly():
    for j in range(1, 7):
        coarse = set(cgl_nodes(j).nodes)
        fine = set(cgl_nodes(j + 1).nodes)
        assert coarse <= fine
    nodes = cgl_nodes(6).nodes
    assert np.all(np.diff(nodes) > 0)


def test_cgl_weights_sum_and_symmetry():
    assert np.array_equal(cgl_weights(1).weights, [2.0])
    for j in range(2, 8):
        w = cgl_weights(j).weights
        assert abs(w.sum() - 2.0) < 1e-12
        assert np.array_equal(w, w[::-1])
    assert np.allclose(cgl_weights(2).weights, [1 / 3, 4 / 3, 1 / 3], atol=1e-15)


def test_full_grid_counts_and_order():
    assert full_grid([2, 2]).n == 9
    assert full_grid([3, 3]).n == 25
    g = full_grid([1, 1, 1])
    assert g.n == 1 and np.array_equal(g.points, [[0.0, 0.0, 0.0]])
    keys = [tuple(r) for r in full_grid([2, 3]).points]
    assert keys == sorted(keys)


def test_lagrange_reproduces_nodes():
    g = full_grid([3, 3])
    f = np.array([p[0] ** 3 * p[1] ** 2 for p in g.points])
    for idx in (0, 7, 24):
        got = lagrange_interpolate([3, 3], f, g.points[idx])
        assert abs(got - f[idx]) < 1e-12


def test_lagrange_linear_exact():
    g = full_grid([3, 3])
    f = np.array([p[0] for p in g.points])
    rng = np.random.default_rng(1)
    for q in rng.uniform(-1, 1, size=(25, 2)):
        assert abs(lagrange_interpolate([3, 3], f, q) - q[0]) < 1e-12


def test_lagrange_polynomial_in_span():
    g = full_grid([3, 3])
    f = np.array([p[0] ** 3 * p[1] ** 2 for p in g.points])
    rng = np.random.default_rng(2)
    err = max(
        abs(lagrange_interpolate([3, 3], f, q) - q[0] ** 3 * q[1] ** 2)
        for q in rng.uniform(-1, 1, size=(100, 2))
    )
    assert err < 1e-10


def test_lagrange_shape_error():
    with pytest.raises(ShapeError):
        lagrange_interpolate([3, 3], np.zeros(24), [0.0, 0.0])


# --- independent union-enumeration oracle ---------------------------------
# node identity via exact rational cosine arguments t = (i-1)/(n_j - 1);
# the level-1 node sits at t = 1/2 (the same node as every level's centre)


def _oracle_level_fracs(j):
    if j == 1:
        return [Fraction(1, 2)]
    n = 2 ** (j - 1) + 1
    return [Fraction(i, n - 1) for i in range(n)]


def _oracle_indices(total, beta):
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 1:
            out.extend(prefix + (j,) for j in range(1, budget + 1))
            return
        for j in range(1, budget - (remaining - 1) + 1):
            rec(prefix + (j,), remaining - 1, budget - j)

    rec((), beta, total)
    return out


def sparse_count_oracle(mu, beta):
    pts = set()
    for j in _oracle_indices(mu + beta - 1, beta):
        for pt in itertools.product(*[_oracle_level_fracs(v) for v in j]):
            pts.add(pt)
    return len(pts)


def test_sparse_grid_counts_match_oracle():
    for beta, mus in ((2, (1, 2, 3, 4)), (3, (1, 2, 3))):
        for mu in mus:
            assert sparse_grid(GridLevelSpec(mu, beta)).n == sparse_count_oracle(
                mu, beta
            )
    assert [sparse_grid(GridLevelSpec(m, 2)).n for m in (1, 2, 3, 4)] == [1, 5, 13, 29]
    assert [sparse_grid(GridLevelSpec(m, 3)).n for m in (1, 2, 3)] == [1, 7, 25]


def test_sparse_grid_mu2_beta2_points():
    got = {tuple(r) for r in sparse_grid(GridLevelSpec(2, 2)).points}
    assert got == {(0.0, 0.0), (-1.0, 0.0), (1.0, 0.0), (0.0, -1.0), (0.0, 1.0)}


def test_sparse_grid_nestedness_exact():
    for beta in (2, 3):
        for mu in (1, 2, 3):
            small = {tuple(r) for r in sparse_grid(GridLevelSpec(mu, beta)).points}
            big = {tuple(r) for r in sparse_grid(GridLevelSpec(mu + 1, beta)).points}
            assert small <= big


# --- literal difference-operator oracle ------------------------------------


def _plain_tensor_interp(levels, f, q):
    axes = [cgl_nodes(j).nodes for j in levels]
    total = 0.0
    for pt in itertools.product(*axes):
        w = 1.0
        for k, (x, ax) in enumerate(zip(pt, axes)):
            for other in ax:
                if other != x:
                    w *= (q[k] - other) / (x - other)
        total += w * f(np.array(pt))
    return total


def smolyak_literal_oracle(mu, beta, f, q):
    total = 0.0
    for j in _oracle_indices(mu + beta - 1, beta):
        for drop in itertools.product((0, 1), repeat=beta):
            levels = [jv - dv for jv, dv in zip(j, drop)]
            if any(lv < 1 for lv in levels):
                continue  # the U^0 term vanishes
            total += (-1) ** sum(drop) * _plain_tensor_interp(levels, f, q)
    return total


def test_smolyak_matches_literal_difference_form():
    f = lambda p: math.exp(p[0] + 2.0 * p[1])
    rng = np.random.default_rng(3)
    for q in rng.uniform(-1, 1, size=(5, 2)):
        a = smolyak_interpolate(GridLevelSpec(3, 2), f, q)
        b = smolyak_literal_oracle(3, 2, f, q)
        assert abs(a - b) < 1e-10


def test_smolyak_interpolates_nodes():
    f = lambda p: math.sin(p[0]) + p[1] ** 2
    spec = GridLevelSpec(3, 2)
    for pt in sparse_grid(spec).points:
        assert abs(smolyak_interpolate(spec, f, pt) - f(pt)) < 1e-10


def test_smolyak_constant():
    spec = GridLevelSpec(4, 3)
    for q in ([0.3, -0.2, 0.9], [0.0, 0.0, 0.0]):
        assert abs(smolyak_interpolate(spec, lambda p: 2.5, q) - 2.5) < 1e-12


def test_smolyak_exp_error_converges():
    # oracle-measured accuracy for exp(x+y): the 29-point grid (mu=4)
    # lands near 6e-3, the 65-point grid (mu=5) near 1.3e-4
    f = lambda p: math.exp(p[0] + p[1])
    rng = np.random.default_rng(4)
    queries = rng.uniform(-1, 1, size=(100, 2))
    err4 = max(
        abs(smolyak_interpolate(GridLevelSpec(4, 2), f, q) - f(q))
        for q in queries
    )
    err5 = max(
        abs(smolyak_interpolate(GridLevelSpec(5, 2), f, q) - f(q))
        for q in queries
    )
    assert err4 < 7e-3
    assert err5 < 2e-4
    assert err5 < err4 / 10.0


def test_smolyak_memoizes_f_calls():
    spec = GridLevelSpec(3, 2)
    calls = []

    def f(p):
        calls.append(tuple(p))
        return p[0] + p[1]

    smolyak_interpolate(spec, f, [0.1, 0.2])
    assert len(calls) == len(set(calls)) == sparse_grid(spec).n


def test_quadrature_constant_and_odd():
    for beta in (1, 2, 3):
        for mu in (1, 2, 3):
            spec = GridLevelSpec(mu, beta)
            assert abs(sparse_quadrature(spec, lambda p: 1.0) - 2.0**beta) < 1e-12
            assert abs(sparse_quadrature(spec, lambda p: p[0])) < 1e-12


def test_quadrature_quadratic_exact():
    got = sparse_quadrature(GridLevelSpec(3, 2), lambda p: p[0] ** 2 + p[1] ** 2)
    assert abs(got - 8.0 / 3.0) < 1e-12


def test_quadrature_exponential_vs_analytic():
    want = (math.e - 1.0 / math.e) ** 2
    got = sparse_quadrature(GridLevelSpec(5, 2), lambda p: math.exp(p[0] + p[1]))
    assert abs(got - want) < 1e-6


# --- rotations --------------------------------------------------------------


def test_rotation_matrix_orthogonal():
    for dims, planes in ((2, None), (3, None), (4, ((0, 1), (2, 3)))):
        r = rotation_matrix(RotationSpec(0.7, planes), dims)
        assert np.max(np.abs(r.T @ r - np.eye(dims))) < 1e-12


def test_rotate_identity():
    s = sparse_grid(GridLevelSpec(3, 2))
    out = rotate_points(s, RotationSpec(0.0))
    assert np.array_equal(out.points, s.points)
    assert out.params["rescale"] == 1.0


def test_rotate_quarter_turn_2d():
    s = SampleSet([[0.5, 0.25], [-0.25, 0.75]], CODED, "test")
    out = rotate_points(s, RotationSpec(math.pi / 2))
    want = np.array([[-0.25, 0.5], [-0.75, -0.25]])
    assert np.max(np.abs(out.points - want)) < 1e-12
    assert out.params["rescale"] == 1.0


def test_rotate_preserves_distances_before_rescale():
    s = SampleSet(np.random.default_rng(5).uniform(-0.4, 0.4, (12, 3)),
                  CODED, "test")
    out = rotate_points(s, RotationSpec(0.5))
    assert out.params["rescale"] == 1.0

    def pd(x):
        d = x[:, None, :] - x[None, :, :]
        return np.sqrt((d**2).sum(-1))

    assert np.max(np.abs(pd(out.points) - pd(s.points))) < 1e-12


def test_rotate_roundtrip():
    s = sparse_grid(GridLevelSpec(3, 3))
    spec = RotationSpec(0.3)
    fwd = rotate_points(s, spec)
    planes_rev = tuple(reversed(spec.resolve_planes(3)))
    back = rotate_points(fwd, RotationSpec(-0.3, planes_rev))
    recovered = back.points / (fwd.params["rescale"] * back.params["rescale"])
    assert np.max(np.abs(recovered - s.points)) < 1e-10


def test_rotate_rescales_into_cube():
    s = sparse_grid(GridLevelSpec(3, 2))
    out = rotate_points(s, RotationSpec(math.radians(30)))
    assert np.abs(out.points).max() <= 1.0
    assert out.params["rescale"] < 1.0


def test_optimize_rotation_single_point():
    s = SampleSet([[0.0, 0.0]], CODED, "test")
    theta, out = optimize_rotation(s)
    assert theta == 0.0 and out.n == 1


def test_optimize_rotation_no_worse_than_zero():
    from doeforge import maximin_distance

    s = sparse_grid(GridLevelSpec(3, 2))
    theta, best = optimize_rotation(s, step=math.radians(1.0))
    at_zero = maximin_distance(rotate_points(s, RotationSpec(0.0)))
    assert maximin_distance(best) >= at_zero
    assert 0.0 <= theta <= math.pi / 4 + 1e-12


def test_optimize_rotation_step_consistency():
    s = sparse_grid(GridLevelSpec(3, 2))
    coarse, _ = optimize_rotation(s, step=math.radians(1.0))
    fine, _ = optimize_rotation(s, step=math.radians(0.5))
    assert abs(coarse - fine) <= math.radians(1.0) + 1e-12


def test_optimize_rotation_centered_l2():
    s = sparse_grid(GridLevelSpec(2, 2))
    theta, out = optimize_rotation(s, objective="centered-l2",
                                   step=math.radians(5.0))
    assert 0.0 <= theta <= math.pi / 4 + 1e-12 and out.n == s.n


def test_grid_spec_validation():
    with pytest.raises(DimensionError):
        GridLevelSpec(0, 2)
    with pytest.raises(DimensionError):
        GridLevelSpec(2, 0)
