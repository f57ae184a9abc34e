"""Finite point sets in projective space and their linear invariants.

The Hilbert function of a point set Z in degree j is the rank of the
evaluation matrix whose rows are the degree-j monomial vectors of the
points; its kernel is the degree-j piece of the ideal of Z.  On top of
that single primitive this module computes first differences, the h^1
defect ell(Z) - h_Z(d), Kruskal ranks by exhaustive subset enumeration,
the Cayley-Bacharach predicate in a given degree, and dimensions of
intersections of Veronese spans.

Projective equality of two coordinate tuples is decided exactly by the
vanishing of all 2x2 minors of the stacked pair.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import DuplicatePoint, ZeroPoint
from .ffield import DenseMatrix, PrimeContext, rank_mod
from .polys import _veronese_rows


def projectively_equal(u, v, p: int) -> bool:
    """True when the two nonzero tuples agree up to a scalar, decided by
    the vanishing of every 2x2 minor of the stacked pair."""
    a = [int(c) % p for c in u]
    b = [int(c) % p for c in v]
    m = len(a)
    for i in range(m):
        for j in range(i + 1, m):
            if (a[i] * b[j] - a[j] * b[i]) % p != 0:
                return False
    return True


def _canonical_point(pt: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Representative scaled so the first nonzero coordinate is 1."""
    for i, c in enumerate(pt):
        if c != 0:
            inv = pow(c, p - 2, p)
            return tuple(x * inv % p for x in pt)
    raise ZeroPoint("zero tuple has no projective representative")


class PointSet:
    """An ordered list of pairwise distinct projective points.

    Coordinate representatives are fixed at construction (reduced mod p)
    and the order is meaningful for reporting.  Evaluation matrices and
    Kruskal ranks are cached per degree since the value is immutable.
    """

    __slots__ = ("ctx", "n", "points", "_ev_cache", "_kruskal_cache")

    def __init__(self, ctx: PrimeContext, points):
        pts = [tuple(int(c) % ctx.p for c in row) for row in points]
        if not pts:
            raise ValueError("a point set needs at least one point")
        n = len(pts[0]) - 1
        if n < 1 or any(len(q) != n + 1 for q in pts):
            raise ValueError("all points need the same n+1 coordinates, n >= 1")
        for i, q in enumerate(pts):
            if not any(q):
                raise ZeroPoint(f"point {i} is the zero tuple")
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if projectively_equal(pts[i], pts[j], ctx.p):
                    raise DuplicatePoint(
                        f"points {i} and {j} are projectively equal"
                    )
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "_ev_cache", {})
        object.__setattr__(self, "_kruskal_cache", {})

    def __setattr__(self, *_):
        raise AttributeError("PointSet is immutable")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def coords_array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64)

    def canonical_keys(self) -> list[tuple[int, ...]]:
        return [_canonical_point(q, self.ctx.p) for q in self.points]

    def subset(self, indices) -> "PointSet":
        return PointSet(self.ctx, [self.points[i] for i in indices])

    def remove(self, index: int) -> "PointSet":
        return self.subset([i for i in range(len(self)) if i != index])

    def union(self, other: "PointSet") -> "PointSet":
        """Union keeping self's order, then the new points of other."""
        if other.ctx != self.ctx or other.n != self.n:
            raise ValueError("point sets live in different spaces")
        mine = set(self.canonical_keys())
        extra = [q for q, key in zip(other.points, other.canonical_keys())
                 if key not in mine]
        return PointSet(self.ctx, list(self.points) + extra)

    def intersection_size(self, other: "PointSet") -> int:
        mine = set(self.canonical_keys())
        return sum(1 for key in other.canonical_keys() if key in mine)

    def contains_point(self, pt) -> bool:
        key = _canonical_point(tuple(int(c) % self.ctx.p for c in pt), self.ctx.p)
        return key in set(self.canonical_keys())

    def __repr__(self):
        return f"PointSet({len(self)} points in P^{self.n} over Z_{self.ctx.p})"


@dataclass(frozen=True)
class HilbertProfile:
    """Hilbert function values h_Z(0..j_max), first differences, and ell(Z)."""

    values: tuple[int, ...]
    differences: tuple[int, ...]
    length: int

    def h(self, j: int) -> int:
        if j < 0:
            return 0
        if j >= len(self.values):
            raise IndexError(f"profile only covers degrees up to {len(self.values) - 1}")
        return self.values[j]

    def dh(self, j: int) -> int:
        if j < 0:
            return 0
        return self.differences[j]


def evaluation_matrix(Z: PointSet, d: int) -> DenseMatrix:
    """ell(Z) x C(n+d, n) matrix whose row i is the degree-d monomial
    vector of point i.  Its kernel is the degree-d ideal piece of Z."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    cached = Z._ev_cache.get(d)
    if cached is None:
        cached = DenseMatrix(Z.ctx, _veronese_rows(Z.ctx, Z.coords_array(), d))
        Z._ev_cache[d] = cached
    return cached


def ideal_piece(Z: PointSet, d: int) -> list[np.ndarray]:
    """Canonical basis of the degree-d piece of the ideal of Z."""
    return evaluation_matrix(Z, d).kernel_basis()


def hilbert_profile(Z: PointSet, j_max: int) -> HilbertProfile:
    """h_Z and its first difference on 0..j_max, with h_Z(-1) = 0."""
    if j_max < 0:
        raise ValueError("j_max must be >= 0")
    values = [evaluation_matrix(Z, j).rank() for j in range(j_max + 1)]
    diffs = [values[0]] + [values[j] - values[j - 1] for j in range(1, j_max + 1)]
    return HilbertProfile(tuple(values), tuple(diffs), len(Z))


def h1_defect(Z: PointSet, d: int) -> int:
    """ell(Z) - h_Z(d); positive iff the points impose dependent
    conditions on degree-d forms."""
    return len(Z) - evaluation_matrix(Z, d).rank()


def _subset_chunk_full_rank(args) -> bool:
    rows_bytes, shape, p, subsets = args
    mat = np.frombuffer(rows_bytes, dtype=np.int64).reshape(shape)
    for sub in subsets:
        if rank_mod(mat[list(sub)], p) != len(sub):
            return False
    return True


def _all_subsets_independent(mat: np.ndarray, p: int, k: int, jobs: int = 1) -> tuple[bool, int]:
    """Whether every k-subset of rows has rank k; also how many subsets
    were examined (all of them on success, a prefix on failure)."""
    ell = mat.shape[0]
    subs = combinations(range(ell), k)
    if jobs <= 1:
        examined = 0
        for sub in subs:
            examined += 1
            if rank_mod(mat[list(sub)], p) != k:
                return False, examined
        return True, examined
    total = comb(ell, k)
    chunk = max(64, total // (8 * jobs) + 1)
    all_subs = list(subs)
    payload = mat.tobytes()
    tasks = [
        (payload, mat.shape, p, all_subs[i:i + chunk])
        for i in range(0, total, chunk)
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        ok = all(pool.map(_subset_chunk_full_rank, tasks))
    return ok, total


def kruskal_rank(Z: PointSet, d: int, jobs: int = 1) -> int:
    """Largest k such that every k-subset of the degree-d Veronese images
    is linearly independent.

    Searches downward from min(C(n+d, n), ell): generic sets pass the
    first candidate, and once all k-subsets are independent every smaller
    subset is too.
    """
    cached = Z._kruskal_cache.get(d)
    if cached is not None:
        return cached[0]
    k, _ = kruskal_rank_detail(Z, d, jobs=jobs)
    return k


def kruskal_rank_detail(Z: PointSet, d: int, jobs: int = 1) -> tuple[int, int]:
    """(kruskal rank, number of subsets examined)."""
    cached = Z._kruskal_cache.get(d)
    if cached is not None:
        return cached
    mat = evaluation_matrix(Z, d).a
    p = Z.ctx.p
    kmax = min(mat.shape[1], len(Z))
    examined = 0
    result = None
    for k in range(kmax, 0, -1):
        ok, n_checked = _all_subsets_independent(mat, p, k, jobs=jobs)
        examined += n_checked
        if ok:
            result = (k, examined)
            break
    if result is None:
        result = (0, examined)
    Z._kruskal_cache[d] = result
    return result


def kruskal_rank_at_least(Z: PointSet, d: int, k: int, jobs: int = 1) -> bool:
    """Fast gate for k_d(Z) >= k: stops at the first dependent subset
    instead of descending to the exact rank."""
    cached = Z._kruskal_cache.get(d)
    if cached is not None:
        return cached[0] >= k
    mat = evaluation_matrix(Z, d).a
    kmax = min(mat.shape[1], len(Z))
    if k > kmax:
        return False
    ok, examined = _all_subsets_independent(mat, Z.ctx.p, k, jobs=jobs)
    if ok and k == kmax:
        # the gate already proved the maximum, so remember it
        Z._kruskal_cache[d] = (k, examined)
    return ok


def cb_check(Z: PointSet, d: int) -> bool:
    """Cayley-Bacharach in degree d: every degree-d form through all but
    one point also passes through the omitted point, whichever it is.

    Equivalently the degree-d ideal piece does not grow when a point is
    dropped: h_{Z minus P}(d) == h_Z(d) for every P.
    """
    if len(Z) < 2:
        raise ValueError("Cayley-Bacharach needs at least two points")
    full = evaluation_matrix(Z, d)
    h = full.rank()
    p = Z.ctx.p
    for i in range(len(Z)):
        rows = np.delete(full.a, i, axis=0)
        if rank_mod(rows, p) != h:
            return False
    return True


def span_intersection_dim(A: PointSet, B: PointSet, d: int) -> int:
    """Projective dimension of the intersection of the two Veronese spans,
    computed directly from three evaluation ranks (-1 means empty).

    Grassmann on the spans: dim(span A) + dim(span B) - dim(span A + span B),
    where the dimension of the joint span is h_{A union B}(d) - 1.
    """
    if A.ctx != B.ctx or A.n != B.n:
        raise ValueError("point sets live in different spaces")
    hA = evaluation_matrix(A, d).rank()
    hB = evaluation_matrix(B, d).rank()
    hU = evaluation_matrix(A.union(B), d).rank()
    return (hA - 1) + (hB - 1) - (hU - 1)


def cap_formula_dim(A: PointSet, B: PointSet, d: int) -> int:
    """The closed-form side of the same dimension:
    ell(A intersect B) - 1 + h^1_{A union B}(d)."""
    if A.ctx != B.ctx or A.n != B.n:
        raise ValueError("point sets live in different spaces")
    return A.intersection_size(B) - 1 + h1_defect(A.union(B), d)
