import numpy as np
import pytest

from waringcert import (
    PointSet,
    PrimeContext,
    cap_formula_dim,
    cb_check,
    evaluation_matrix,
    h1_defect,
    hilbert_profile,
    ideal_piece,
    kruskal_rank,
    kruskal_rank_detail,
    span_intersection_dim,
)
from waringcert.errors import DuplicatePoint, ZeroPoint
from waringcert.fixtures import six_point_sets
from waringcert.points import kruskal_rank_at_least, projectively_equal

from conftest import random_pointset


def conic_points(ctx, ts):
    """Points (1, t, t^2) of the irreducible conic x0*x2 = x1^2."""
    return PointSet(ctx, [(1, t, t * t % ctx.p) for t in ts])


def line_points(ctx, ts):
    return PointSet(ctx, [(1, t, 0) for t in ts])


# ---------------------------------------------------------------- construction

def test_rejects_zero_point(ctx):
    with pytest.raises(ZeroPoint):
        PointSet(ctx, [(1, 2, 3), (0, 0, 0)])


def test_rejects_projective_duplicates(ctx):
    with pytest.raises(DuplicatePoint):
        PointSet(ctx, [(1, 2, 3), (2, 4, 6)])


def test_projective_equality_by_minors(ctx):
    assert projectively_equal((1, 2, 3), (7, 14, 21), ctx.p)
    assert not projectively_equal((1, 2, 3), (1, 2, 4), ctx.p)


def test_union_and_intersection(ctx):
    a = PointSet(ctx, [(1, 0, 0), (0, 1, 0), (1, 1, 1)])
    b = PointSet(ctx, [(2, 2, 2), (0, 0, 5), (0, 1, 1)])
    u = a.union(b)
    assert len(u) == 5  # (2,2,2) ~ (1,1,1)
    assert a.intersection_size(b) == 1


# ------------------------------------------------------------------ evaluation

def test_evaluation_matrix_coordinate_points(ctx):
    z = PointSet(ctx, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    m = evaluation_matrix(z, 1)
    assert np.array_equal(m.a, np.eye(3, dtype=np.int64))


def test_reference_evaluation_ranks(ref_points):
    assert evaluation_matrix(ref_points, 3).rank() == 10
    assert evaluation_matrix(ref_points, 4).rank() == 14
    assert evaluation_matrix(ref_points, 8).rank() == 14


def test_ideal_piece_is_kernel(ref_points):
    quartics = ideal_piece(ref_points, 4)
    assert len(quartics) == 1
    ev = evaluation_matrix(ref_points, 4)
    assert not np.any((ev.a @ quartics[0]) % ref_points.ctx.p)


# ------------------------------------------------------------ hilbert profiles

def test_six_general_profile(ctx):
    prof = hilbert_profile(six_point_sets()["general"], 3)
    assert prof.values == (1, 3, 6, 6)
    assert prof.differences == (1, 2, 3, 0)


def test_six_on_conic_profile(ctx):
    prof = hilbert_profile(six_point_sets()["on_conic"], 4)
    assert prof.values == (1, 3, 5, 6, 6)
    assert prof.differences == (1, 2, 2, 1, 0)


def test_six_five_aligned_profile(ctx):
    prof = hilbert_profile(six_point_sets()["five_aligned"], 5)
    assert prof.values == (1, 3, 4, 5, 6, 6)
    assert prof.differences == (1, 2, 1, 1, 1, 0)


def test_profile_elementary_invariants(ctx):
    from math import comb

    rng = np.random.default_rng(11)
    for n in (2, 3):
        for _ in range(10):
            count = int(rng.integers(2, 15))
            z = random_pointset(ctx, rng, count, n=n)
            prof = hilbert_profile(z, count)
            assert prof.dh(-1) == 0
            assert prof.values[0] == prof.differences[0] == 1
            assert all(d >= 0 for d in prof.differences)
            assert all(
                prof.values[i] == sum(prof.differences[: i + 1])
                for i in range(count + 1)
            )
            assert all(
                prof.values[j] <= min(comb(n + j, n), count)
                for j in range(count + 1)
            )
            assert prof.values[-1] == count
            assert sum(prof.differences) == count


# ---------------------------------------------------------------- kruskal rank

def test_kruskal_coordinate_points(ctx):
    z = PointSet(ctx, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert kruskal_rank(z, 1) == 3


def test_kruskal_collinear(ctx):
    z = line_points(ctx, [0, 1, 2])
    assert kruskal_rank(z, 1) == 2


def test_kruskal_reference_detail(ref_points):
    k, examined = kruskal_rank_detail(ref_points, 3)
    assert k == 10
    assert examined == 1001


def test_kruskal_parallel_agrees(ctx):
    from waringcert.fixtures import reference_pointset

    serial = kruskal_rank_detail(reference_pointset(), 3, jobs=1)
    parallel = kruskal_rank_detail(reference_pointset(), 3, jobs=2)
    assert serial == parallel == (10, 1001)


def test_kruskal_at_least_gate(ctx):
    z = line_points(ctx, [0, 1, 2])
    assert kruskal_rank_at_least(z, 1, 2)
    assert not kruskal_rank_at_least(z, 1, 3)
    assert not kruskal_rank_at_least(z, 1, 4)  # above the hard cap


def test_kruskal_brute_force_agreement(ctx):
    # exhaustive oracle: largest k with every k-subset of full row rank
    from itertools import combinations

    from waringcert.ffield import rank_mod

    rng = np.random.default_rng(23)
    for _ in range(5):
        z = random_pointset(ctx, rng, 6, n=2)
        mat = evaluation_matrix(z, 1).a
        brute = 0
        for k in range(1, 7):
            if all(rank_mod(mat[list(s)], ctx.p) == k
                   for s in combinations(range(6), k)):
                brute = k
        assert kruskal_rank(z, 1) == brute


# ------------------------------------------------------------- cayley-bacharach

def test_cb_examples(ctx):
    sets = six_point_sets()
    assert cb_check(sets["on_conic"], 2)
    assert cb_check(sets["on_conic"], 1)
    assert not cb_check(sets["general"], 2)
    assert cb_check(sets["general"], 1)
    assert not cb_check(sets["five_aligned"], 1)


def test_cb_collinear_threshold(ctx):
    # ell collinear points have the property exactly up to degree ell - 2
    z = line_points(ctx, range(7))
    assert cb_check(z, 5)
    assert not cb_check(z, 6)


def test_extgkr_partial_sums_on_cb_sets(ctx):
    # sum_0^j Dh <= sum_{d+1-j}^{d+1} Dh for sets with the degree-d property
    cases = [
        (conic_points(ctx, range(6)), 2),
        (conic_points(ctx, range(8)), 2),
        (line_points(ctx, range(5)), 3),
        (line_points(ctx, range(9)), 7),
    ]
    for z, d in cases:
        assert cb_check(z, d)
        prof = hilbert_profile(z, d + 1)
        for j in range(d + 2):
            low = sum(prof.dh(i) for i in range(j + 1))
            high = sum(prof.dh(i) for i in range(d + 1 - j, d + 2))
            assert low <= high, (d, j)


def test_cbh1_proper_subsets_drop_defect(ctx):
    rng = np.random.default_rng(5)
    z = conic_points(ctx, range(6))
    d = 2
    full = h1_defect(z, d)
    assert full == 1
    for _ in range(10):
        keep = sorted(rng.choice(6, size=int(rng.integers(1, 6)), replace=False))
        sub = z.subset(keep)
        assert h1_defect(sub, d) < full


def test_subset_monotonicity(ctx):
    rng = np.random.default_rng(7)
    for _ in range(10):
        z = random_pointset(ctx, rng, 10, n=2)
        keep = sorted(rng.choice(10, size=6, replace=False))
        sub = z.subset(keep)
        pz = hilbert_profile(z, 8)
        ps = hilbert_profile(sub, 8)
        assert all(ps.values[j] <= pz.values[j] for j in range(9))
        assert all(ps.differences[j] <= pz.differences[j] for j in range(9))


def test_nonincreasing_tail(ctx):
    rng = np.random.default_rng(9)
    sets = [random_pointset(ctx, rng, int(rng.integers(3, 16)), n=2)
            for _ in range(8)]
    sets.append(conic_points(ctx, range(9)))
    sets.append(line_points(ctx, range(8)))
    for z in sets:
        prof = hilbert_profile(z, len(z) + 1)
        for i in range(1, len(z)):
            if prof.dh(i) <= i:
                assert prof.dh(i + 1) <= prof.dh(i)


# ------------------------------------------------------- h1 and span dimensions

def test_h1_defect_examples(ctx):
    z = conic_points(ctx, range(6))
    assert h1_defect(z, 2) == 1
    assert h1_defect(z, 5) == 0  # regularity: d >= ell - 1


def test_span_intersection_trivial_cases(ctx):
    rng = np.random.default_rng(13)
    a = random_pointset(ctx, rng, 5, n=2)
    assert span_intersection_dim(a, a, 3) == evaluation_matrix(a, 3).rank() - 1
    b = random_pointset(ctx, rng, 4, n=2)
    if evaluation_matrix(a.union(b), 3).rank() == len(a) + len(b):
        assert span_intersection_dim(a, b, 3) == -1


def test_cap_formula_agreement(ctx):
    # the closed form assumes both sets impose independent conditions in
    # degree d (true of non-redundant decompositions, which is where the
    # formula is used); sample within that scope
    rng = np.random.default_rng(17)
    done = 0
    while done < 20:
        n = int(rng.integers(2, 4))
        a = random_pointset(ctx, rng, int(rng.integers(2, 9)), n=n)
        extra = random_pointset(ctx, rng, int(rng.integers(2, 9)), n=n)
        overlap = [a.points[i] for i in
                   rng.choice(len(a), size=int(rng.integers(0, len(a))),
                              replace=False)]
        try:
            b = PointSet(ctx, overlap + list(extra.points)) if overlap else extra
        except DuplicatePoint:
            continue
        d = int(rng.integers(1, 7))
        if evaluation_matrix(a, d).rank() != len(a):
            continue
        if evaluation_matrix(b, d).rank() != len(b):
            continue
        assert span_intersection_dim(a, b, d) == cap_formula_dim(a, b, d)
        done += 1
