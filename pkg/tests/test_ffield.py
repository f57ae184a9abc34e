import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waringcert import DenseMatrix, PrimeContext, is_prime, kernel_basis, rank, solve
from waringcert.errors import InconsistentSystem, NotPrime
from waringcert.ffield import matmul_mod, normalize_projective, rank_mod, row_echelon

PRIMES = (5, 101, 31991, 2147483629)


def test_is_prime_basics():
    assert is_prime(2) and is_prime(3) and is_prime(31991)
    assert not is_prime(1) and not is_prime(31989)  # 31989 = 3 * 10663
    assert is_prime(2147483629)  # near the top of the admissible range


def test_context_rejects_bad_moduli():
    with pytest.raises(NotPrime):
        PrimeContext(32000)
    with pytest.raises(NotPrime):
        PrimeContext(2)
    with pytest.raises(NotPrime):
        PrimeContext(2**31 + 11)


def test_context_inverse():
    ctx = PrimeContext(31991)
    for x in (1, 2, 12345):
        assert ctx.inv(x) * x % 31991 == 1
    with pytest.raises(ZeroDivisionError):
        ctx.inv(0)


def test_rank_identity_and_zero(ctx):
    eye = DenseMatrix(ctx, np.eye(3, dtype=np.int64))
    assert rank(eye) == 3
    assert rank(DenseMatrix(ctx, np.zeros((4, 7), dtype=np.int64))) == 0


def test_kernel_identity_empty(ctx):
    assert kernel_basis(DenseMatrix(ctx, np.eye(3, dtype=np.int64))) == []


def test_kernel_forced_normalization(ctx):
    # a single row (1, 1): the canonical kernel vector is (-1, 1)
    (v,) = kernel_basis(DenseMatrix(ctx, [[1, 1]]))
    assert v.tolist() == [ctx.p - 1, 1]


def test_solve_identity_and_zero(ctx):
    eye = DenseMatrix(ctx, np.eye(3, dtype=np.int64))
    x, nd = solve(eye, [5, 6, 7])
    assert x.tolist() == [5, 6, 7] and nd == 0
    zero = DenseMatrix(ctx, np.zeros((2, 2), dtype=np.int64))
    x, nd = solve(zero, [0, 0])
    assert x.tolist() == [0, 0] and nd == 2
    with pytest.raises(InconsistentSystem):
        solve(zero, [1, 0])


def test_negative_entries_are_reduced(ctx):
    m = DenseMatrix(ctx, [[-1, 1], [1, -1]])
    assert m.a[0, 0] == ctx.p - 1
    assert m.rank() == 1


def test_matrix_is_immutable(ctx):
    m = DenseMatrix(ctx, [[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        m.a[0, 0] = 9
    with pytest.raises(AttributeError):
        m.a = None


matrices = st.tuples(
    st.sampled_from(PRIMES),
    st.integers(1, 6),
    st.integers(1, 6),
    st.integers(0, 2**32),
)


@given(matrices)
@settings(max_examples=60)
def test_rank_equals_transpose_rank(params):
    p, m, n, seed = params
    a = np.random.default_rng(seed).integers(0, p, size=(m, n))
    assert rank_mod(a, p) == rank_mod(a.T, p)


@given(matrices)
@settings(max_examples=60)
def test_kernel_vectors_annihilate(params):
    p, m, n, seed = params
    a = np.random.default_rng(seed).integers(0, p, size=(m, n))
    ctx = PrimeContext(p)
    mat = DenseMatrix(ctx, a)
    kern = mat.kernel_basis()
    assert mat.rank() + len(kern) == n
    for v in kern:
        assert np.all(matmul_mod(a, v[:, None], p) == 0)


@given(matrices)
@settings(max_examples=60)
def test_solve_consistency_with_rank(params):
    p, m, n, seed = params
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(m, n))
    b = rng.integers(0, p, size=m)
    r = rank_mod(a, p)
    r_aug = rank_mod(np.hstack([a, b[:, None]]), p)
    mat = DenseMatrix(PrimeContext(p), a)
    if r == r_aug:
        x, nd = mat.solve(b)
        assert nd == n - r
        assert np.all(matmul_mod(a, x[:, None], p)[:, 0] == b % p)
    else:
        with pytest.raises(InconsistentSystem):
            mat.solve(b)


def test_rref_is_idempotent(ctx):
    rng = np.random.default_rng(0)
    a = rng.integers(0, ctx.p, size=(5, 8))
    r1, piv1 = row_echelon(a, ctx.p)
    r2, piv2 = row_echelon(r1, ctx.p)
    assert piv1 == piv2 and np.array_equal(r1, r2)


def test_matmul_mod_large_prime_no_overflow():
    # inner dimension large enough that naive int64 accumulation overflows
    p = 2147483629
    k = 8
    rng = np.random.default_rng(1)
    a = rng.integers(p - 10, p, size=(2, k))
    b = rng.integers(p - 10, p, size=(k, 2))
    expect = [[sum(int(a[i, t]) * int(b[t, j]) for t in range(k)) % p
               for j in range(2)] for i in range(2)]
    assert matmul_mod(a, b, p).tolist() == expect


def test_normalize_projective(ctx):
    v = np.array([0, 7, 21])
    out = normalize_projective(v, ctx.p)
    assert out[0] == 0 and out[1] == 1
    assert out[2] == 3
    with pytest.raises(ValueError):
        normalize_projective(np.zeros(3, dtype=np.int64), ctx.p)
