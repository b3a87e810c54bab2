import itertools
import math

import numpy as np
import pytest

from doeforge import (
    UNIT_CUBE,
    SampleSet,
    centered_l2_discrepancy,
    hammersley,
    make_stream,
    maximin_distance,
    mse,
    star_discrepancy_smallcase,
    uniform_random,
)
from doeforge.errors import DomainError, ShapeError, SizeError


def unit(points):
    return SampleSet(points, UNIT_CUBE, "test")


def test_maximin_hand_values():
    assert abs(maximin_distance(unit([[0, 0], [1, 1]])) - math.sqrt(2)) < 1e-15
    assert maximin_distance(unit([[0.3, 0.3], [0.3, 0.3], [0.9, 0.1]])) == 0.0
    with pytest.raises(SizeError):
        maximin_distance(unit([[0.5, 0.5]]))


def test_maximin_matches_bruteforce():
    pts = make_stream(1).generator().random((10, 3))
    best = min(
        math.dist(pts[i], pts[j])
        for i in range(10)
        for j in range(i + 1, 10)
    )
    assert abs(maximin_distance(unit(pts)) - best) < 1e-12


def test_maximin_invariances():
    pts = make_stream(2).generator().random((15, 2))
    base = maximin_distance(unit(pts))
    assert maximin_distance(unit(pts[::-1])) == base
    assert maximin_distance(unit(pts[:, ::-1])) == base


def cl2_loops(points):
    """Independent re-derivation of the closed form with plain loops."""
    n, d = points.shape
    total = (13.0 / 12.0) ** d
    for i in range(n):
        prod = 1.0
        for k in range(d):
            a = abs(points[i, k] - 0.5)
            prod *= 1.0 + 0.5 * a - 0.5 * a * a
        total -= (2.0 / n) * prod
    for i in range(n):
        for j in range(n):
            prod = 1.0
            for k in range(d):
                ai = abs(points[i, k] - 0.5)
                aj = abs(points[j, k] - 0.5)
                prod *= 1.0 + 0.5 * ai + 0.5 * aj - 0.5 * abs(
                    points[i, k] - points[j, k]
                )
            total += prod / n**2
    return math.sqrt(max(total, 0.0))


def test_cl2_matches_loop_oracle():
    pts = make_stream(3).generator().random((25, 3))
    assert abs(centered_l2_discrepancy(unit(pts)) - cl2_loops(pts)) < 1e-12


def test_cl2_single_center_point():
    got = centered_l2_discrepancy(unit([[0.5, 0.5]]))
    # (13/12)^2 - 2*1 + 1 = 25/144
    assert abs(got - math.sqrt(25.0 / 144.0)) < 1e-15


def test_cl2_permutation_invariance():
    pts = make_stream(4).generator().random((20, 2))
    a = centered_l2_discrepancy(unit(pts))
    assert centered_l2_discrepancy(unit(pts[::-1])) == pytest.approx(a, abs=1e-14)
    assert centered_l2_discrepancy(unit(pts[:, ::-1])) == pytest.approx(a, abs=1e-14)


def test_cl2_domain_guard():
    s = SampleSet([[0.5, -0.25]], "coded", "t")
    with pytest.raises(DomainError):
        centered_l2_discrepancy(s)
    with pytest.raises(DomainError):
        star_discrepancy_smallcase(s)


def star_bruteforce(points):
    """Independent exact oracle: enumerate every candidate box corner."""
    pts = np.asarray(points, dtype=float)
    n, d = pts.shape
    axes = [sorted(set(pts[:, k]) | {1.0}) for k in range(d)]
    best = 0.0
    for corner in itertools.product(*axes):
        vol = math.prod(corner)
        closed = sum(
            1 for p in pts if all(p[k] <= corner[k] for k in range(d))
        )
        opened = sum(
            1 for p in pts if all(p[k] < corner[k] for k in range(d))
        )
        best = max(best, closed / n - vol, vol - opened / n)
    return best


def test_star_matches_bruteforce_2d():
    pts = make_stream(5).generator().random((12, 2))
    got = star_discrepancy_smallcase(unit(pts))
    assert abs(got - star_bruteforce(pts)) < 1e-12


def test_star_matches_bruteforce_3d():
    pts = make_stream(6).generator().random((8, 3))
    got = star_discrepancy_smallcase(unit(pts))
    assert abs(got - star_bruteforce(pts)) < 1e-12


def test_star_single_corner_point():
    assert star_discrepancy_smallcase(unit([[1.0, 1.0]])) == 1.0


def test_star_equispaced_1d():
    for n in (4, 9, 50):
        pts = ((np.arange(n) + 0.5) / n).reshape(-1, 1)
        got = star_discrepancy_smallcase(unit(pts))
        assert abs(got - 1.0 / (2 * n)) < 1e-12


def test_star_budget_guard():
    with pytest.raises(SizeError):
        star_discrepancy_smallcase(unit(np.zeros((513, 2)) + 0.5))
    with pytest.raises(SizeError):
        star_discrepancy_smallcase(unit(np.zeros((10, 4)) + 0.5))


def test_star_hammersley_beats_random_and_shrinks():
    ham = star_discrepancy_smallcase(hammersley(128, 2))
    rand_vals = [
        star_discrepancy_smallcase(uniform_random(128, 2, make_stream(s)))
        for s in range(5)
    ]
    assert ham < np.median(rand_vals)
    seq = [star_discrepancy_smallcase(hammersley(n, 2)) for n in (32, 64, 128, 256)]
    assert all(b < a for a, b in zip(seq, seq[1:]))
    assert all(0.0 <= v <= 1.0 for v in seq)


def test_mse():
    assert mse([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert mse([0.0, 0.0], [1.0, 1.0]) == 1.0
    rng = make_stream(7).generator()
    a, b = rng.random(100), rng.random(100)
    want = math.fsum((x - y) ** 2 for x, y in zip(a, b)) / 100.0
    assert abs(mse(a, b) - want) < 1e-14
    with pytest.raises(ShapeError):
        mse([1.0], [1.0, 2.0])
