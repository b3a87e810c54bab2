import numpy as np
import pytest

from doeforge import (
    CvtConfig,
    cvt,
    faure,
    halton,
    hammersley,
    lhs_basic,
    lhs_maximin,
    make_stream,
    sobol,
)
from doeforge.errors import DensityError, DimensionError
from doeforge.quasirandom import SobolParams


def vdc(n, base):
    """Independent radical-inverse oracle (digit loop, float arithmetic)."""
    out, f = 0.0, 1.0 / base
    while n > 0:
        out += f * (n % base)
        n //= base
        f /= base
    return out


# ---------------------------------------------------------------------------
# sequences


def test_sobol_d1_matches_radical_inverse_oracle():
    s = sobol(15, 1)
    want = [vdc(i, 2) for i in range(1, 16)]
    assert np.max(np.abs(s.points.ravel() - want)) < 1e-15


def test_sobol_first_block_is_permutation():
    k = 4
    s = sobol(2**k - 1, 1)
    got = sorted(s.points.ravel())
    want = [i / 2**k for i in range(1, 2**k)]
    assert np.allclose(got, want, atol=0)


def test_sobol_dyadic_elementary_intervals():
    for k in range(1, 7):
        s = sobol(2**k, 1)
        cells = sorted(int(v * 2**k) for v in s.points.ravel())
        assert cells == list(range(2**k))


def test_sobol_include_zero_origin():
    s = sobol(4, 3, include_zero=True)
    assert np.array_equal(s.points[0], np.zeros(3))


def test_sobol_gray_order_same_set():
    plain = sobol(64, 4, include_zero=True)
    gray = sobol(64, 4, order="gray", include_zero=True)
    a = np.array(sorted(map(tuple, plain.points)))
    b = np.array(sorted(map(tuple, gray.points)))
    assert np.array_equal(a, b)
    assert not np.array_equal(plain.points, gray.points)


def test_sobol_matches_scipy_set():
    qmc = pytest.importorskip("scipy.stats.qmc")
    ours = sobol(64, 8, include_zero=True).points
    ref = qmc.Sobol(8, scramble=False).random(64)
    a = np.array(sorted(map(tuple, np.round(ours, 14))))
    b = np.array(sorted(map(tuple, np.round(ref, 14))))
    assert np.allclose(a, b, atol=1e-12)


def test_sobol_catalog_guard():
    with pytest.raises(DimensionError):
        sobol(10, 51)
    assert SobolParams.load_default().dims == 50


def test_sobol_deterministic():
    assert np.array_equal(sobol(100, 5).points, sobol(100, 5).points)


def test_halton_hand_values():
    assert np.allclose(halton(3, 1).points.ravel(), [0.5, 0.25, 0.75], atol=1e-15)
    b3 = halton(3, 2).points[:, 1]
    assert np.allclose(b3, [1 / 3, 2 / 3, 1 / 9], atol=1e-15)
    assert np.allclose(halton(1, 2).points[0], [0.5, 1 / 3], atol=1e-15)


def test_halton_open_interval():
    pts = halton(200, 3).points
    assert np.all(pts > 0.0) and np.all(pts < 1.0)


def test_hammersley_structure():
    s = hammersley(4, 2)
    assert np.allclose(s.points[1], [0.5, 0.25], atol=1e-15)
    assert np.allclose(s.points[:, 0], [0.25, 0.5, 0.75, 1.0], atol=0)
    with pytest.raises(DimensionError):
        hammersley(4, 1)


def test_faure_d1_is_halton_base2():
    assert np.array_equal(faure(32, 1).points, halton(32, 1).points)


def test_faure_pascal_transform_hand_value():
    # base 2, index 3 has digits (1, 1); the once-transformed digits are
    # (1+1 mod 2, 1) = (0, 1), giving 0/2 + 1/4
    s = faure(3, 2)
    assert abs(s.points[2, 1] - 0.25) < 1e-15
    assert abs(s.points[2, 0] - 0.75) < 1e-15  # plain radical inverse


def test_faure_block_stratification():
    # aligned index blocks {0..m-1} and {m..2m-1} hit every 1/m stratum once
    m, d = 5, 4
    s = faure(2 * m, d, include_zero=True)
    assert s.params["base"] == m
    for block in (s.points[:m], s.points[m:]):
        for j in range(d):
            assert sorted(int(v * m) for v in block[:, j]) == list(range(m))


def test_sequences_in_unit_cube():
    for s in (sobol(500, 10), halton(500, 10), hammersley(500, 10), faure(500, 7)):
        assert np.all(s.points >= 0.0) and np.all(s.points <= 1.0)


# ---------------------------------------------------------------------------
# latin hypercube


def stratification_ok(points):
    n = points.shape[0]
    for j in range(points.shape[1]):
        if sorted(np.floor(points[:, j] * n).astype(int)) != list(range(n)):
            return False
    return True


def test_lhs_basic_stratified():
    s = lhs_basic(10, 2, make_stream(3))
    assert stratification_ok(s.points)


def test_lhs_single_point():
    s = lhs_basic(1, 4, make_stream(0))
    assert s.n == 1 and np.all(s.points >= 0) and np.all(s.points < 1)


def test_lhs_deterministic():
    assert np.array_equal(
        lhs_basic(20, 3, make_stream(5)).points,
        lhs_basic(20, 3, make_stream(5)).points,
    )


def min_dist(points):
    d = points[:, None, :] - points[None, :, :]
    dist = np.sqrt((d**2).sum(-1))
    np.fill_diagonal(dist, np.inf)
    return dist.min()


def test_maximin_improves_on_basic():
    for seed in (1, 5, 9):
        base = lhs_basic(20, 2, make_stream(seed))
        improved = lhs_maximin(20, 2, make_stream(seed), n_iter=10, m=100)
        assert min_dist(improved.points) >= min_dist(base.points)
        assert stratification_ok(improved.points)


def test_maximin_strictly_better_at_full_budget():
    base = lhs_basic(20, 2, make_stream(5))
    improved = lhs_maximin(20, 2, make_stream(5), n_iter=50, m=100)
    assert min_dist(improved.points) > min_dist(base.points)


def test_maximin_history_non_decreasing():
    s = lhs_maximin(15, 3, make_stream(2), n_iter=20, m=50)
    hist = s.params["min_distance_history"]
    assert all(b >= a for a, b in zip(hist, hist[1:]))
    assert s.params["min_distance"] == hist[-1]


def test_maximin_n2_d1_swap_is_relabeling():
    base = lhs_basic(2, 1, make_stream(8))
    improved = lhs_maximin(2, 1, make_stream(8), n_iter=1, m=40)
    assert abs(min_dist(improved.points) - min_dist(base.points)) < 1e-15


# ---------------------------------------------------------------------------
# centroidal Voronoi


def test_cvt_single_generator_centers():
    cfg = CvtConfig(n_iter=60, m=10_000, tol=1e-5)
    s = cvt(1, 2, make_stream(4), cfg)
    assert np.all(np.abs(s.points[0] - 0.5) < 0.02)


def test_cvt_two_cells_1d():
    cfg = CvtConfig(n_iter=200, m=4000)
    s = cvt(2, 1, make_stream(12), cfg)
    got = np.sort(s.points.ravel())
    assert abs(got[0] - 0.25) < 0.05 and abs(got[1] - 0.75) < 0.05


def test_cvt_empty_cell_unchanged():
    # replay the stream: initial generators, then the iteration's sample
    rng = make_stream(6).generator()
    init = rng.random((2, 1))
    y = rng.random((1, 1))
    nearest = int(np.argmin(np.abs(init.ravel() - y.ravel()[0])))
    cfg = CvtConfig(n_iter=1, m=1, tol=1e-12)
    with pytest.warns(UserWarning):
        s = cvt(2, 1, make_stream(6), cfg)
    other = 1 - nearest
    assert s.points[other, 0] == init[other, 0]
    assert s.points[nearest, 0] != init[nearest, 0]


def test_cvt_convergence_flags():
    s = cvt(4, 2, make_stream(3), CvtConfig(n_iter=300, m=2000, tol=5e-4))
    assert s.params["converged"] or s.params["iterations_run"] == 300
    if s.params["converged"]:
        assert s.params["final_displacement"] < 5e-4


def test_cvt_density_error():
    with pytest.raises(DensityError):
        cvt(3, 2, make_stream(0), density=lambda x: np.zeros(x.shape[0]))


def test_cvt_nonuniform_density_shifts_mass():
    # weight concentrated near x = 1 pulls the lone generator right
    cfg = CvtConfig(n_iter=40, m=4000)
    s = cvt(1, 1, make_stream(2), cfg, density=lambda x: x[:, 0] ** 4)
    assert s.points[0, 0] > 0.6


def test_cvt_deterministic():
    a = cvt(5, 2, make_stream(9), CvtConfig(n_iter=10, m=500))
    b = cvt(5, 2, make_stream(9), CvtConfig(n_iter=10, m=500))
    assert np.array_equal(a.points, b.points)
