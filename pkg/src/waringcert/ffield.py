"""Exact dense linear algebra over a prime field Z_p.

All matrices are numpy int64 arrays with entries kept in [0, p).  For
p < 2**31 the product of two residues fits in an int64, so reducing
after every elementary operation keeps the arithmetic exact.  Rank uses
fraction-free forward elimination (no inverses); kernel bases and solves
go through the reduced echelon form so their output is canonical.
"""

from __future__ import annotations

import numpy as np

from .errors import InconsistentSystem, NotPrime

# Witnesses 2,3,5,7 make Miller-Rabin deterministic below 3_215_031_751,
# which covers the whole admissible modulus range p < 2**31.
_MR_WITNESSES = (2, 3, 5, 7)

MAX_PRIME = 2**31
DEFAULT_PRIME = 31991


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2**31."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeContext:
    """The prime modulus carried by every matrix, polynomial and point set."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        p = int(p)
        if not (2 < p < MAX_PRIME):
            raise NotPrime(f"modulus must satisfy 2 < p < 2**31, got {p}")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p

    def inv(self, x: int) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in Z_p")
        return pow(x, self.p - 2, self.p)

    def lift_signed(self, x: int) -> int:
        """Representative in (-p/2, p/2], convenient for printing."""
        x = int(x) % self.p
        return x if x <= self.p // 2 else x - self.p

    def __eq__(self, other):
        return isinstance(other, PrimeContext) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeContext", self.p))

    def __repr__(self):
        return f"PrimeContext({self.p})"


def as_residues(entries, p: int) -> np.ndarray:
    """Copy entries into an int64 array reduced mod p."""
    a = np.array(entries, dtype=np.int64)
    return a % p


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p without int64 overflow.

    Accumulating k products of residues stays below 2**63 only while
    k*(p-1)**2 does; beyond that the inner dimension is chunked.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    k = a.shape[-1]
    if k == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    safe = (2**63 - 1) // ((p - 1) ** 2)
    if k <= safe:
        return (a @ b) % p
    out = None
    for start in range(0, k, max(1, safe)):
        part = a[..., start:start + max(1, safe)] @ b[start:start + max(1, safe)]
        out = part if out is None else out + part
        out %= p
    return out


def row_echelon(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over Z_p.

    Pivot choice is the first nonzero entry of the current column, so the
    result (and everything derived from it) is deterministic.
    Returns (rref matrix, pivot column indices).
    """
    a = as_residues(a, p)
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        f = a[:, c].copy()
        f[r] = 0
        mask = f != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(f[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod(a: np.ndarray, p: int) -> int:
    """Rank over Z_p by fraction-free forward elimination."""
    a = as_residues(a, p)
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = a[r, c]
        below = a[r + 1:]
        f = below[:, c]
        mask = f != 0
        if mask.any():
            below[mask] = (below[mask] * piv - np.outer(f[mask], a[r])) % p
        r += 1
    return r


def kernel_mod(a: np.ndarray, p: int) -> list[np.ndarray]:
    """Canonical right-kernel basis over Z_p.

    One vector per free column of the RREF, in increasing column order;
    the free coordinate is 1 and pivot coordinates carry the negated
    RREF entries.
    """
    a = np.asarray(a)
    n = a.shape[1]
    r, pivots = row_echelon(a, p)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = np.zeros(n, dtype=np.int64)
        v[free] = 1
        for i, c in enumerate(pivots):
            v[c] = (-r[i, free]) % p
        basis.append(v)
    return basis


def solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """Particular solution of a x = b plus the null-space dimension.

    Raises InconsistentSystem when b is outside the column space.  The
    particular solution sets every free variable to 0.
    """
    a = np.asarray(a)
    b = as_residues(b, p).reshape(-1)
    if b.shape[0] != a.shape[0]:
        raise ValueError("right-hand side length must equal the row count")
    n = a.shape[1]
    aug = np.hstack([as_residues(a, p), b[:, None]])
    r, pivots = row_echelon(aug, p)
    if pivots and pivots[-1] == n:
        raise InconsistentSystem("no solution: rank([A|b]) > rank(A)")
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, n]
    return x, n - len(pivots)


def normalize_projective(v: np.ndarray, p: int) -> np.ndarray:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    v = as_residues(v, p)
    nz = np.nonzero(v)[0]
    if nz.size == 0:
        raise ValueError("cannot normalize the zero vector")
    return v * pow(int(v[nz[0]]), p - 2, p) % p


class DenseMatrix:
    """Row-major exact matrix over Z_p.

    Thin immutable wrapper around an int64 array; the raw array is
    exposed as .a for numpy work, with writes disabled.
    """

    __slots__ = ("ctx", "a")

    def __init__(self, ctx: PrimeContext, entries):
        a = as_residues(entries, ctx.p)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d array, got ndim={a.ndim}")
        a.setflags(write=False)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "a", a)

    def __setattr__(self, *_):
        raise AttributeError("DenseMatrix is immutable")

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def rank(self) -> int:
        return rank_mod(self.a, self.ctx.p)

    def rref(self) -> tuple["DenseMatrix", tuple[int, ...]]:
        r, piv = row_echelon(self.a, self.ctx.p)
        return DenseMatrix(self.ctx, r), tuple(piv)

    def kernel_basis(self) -> list[np.ndarray]:
        return kernel_mod(self.a, self.ctx.p)

    def solve(self, b) -> tuple[np.ndarray, int]:
        return solve_mod(self.a, b, self.ctx.p)

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.ctx, self.a.T)

    @property
    def T(self) -> "DenseMatrix":
        return self.transpose()

    def matmul(self, other) -> "DenseMatrix":
        b = other.a if isinstance(other, DenseMatrix) else np.asarray(other)
        return DenseMatrix(self.ctx, matmul_mod(self.a, b, self.ctx.p))

    def __matmul__(self, other):
        return self.matmul(other)

    def __eq__(self, other):
        return (
            isinstance(other, DenseMatrix)
            and other.ctx == self.ctx
            and other.a.shape == self.a.shape
            and bool(np.all(other.a == self.a))
        )

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols} over Z_{self.ctx.p})"


def rank(m: DenseMatrix) -> int:
    """Rank of m over its prime field."""
    return m.rank()


def kernel_basis(m: DenseMatrix) -> list[np.ndarray]:
    """Canonical basis of the right null space of m."""
    return m.kernel_basis()


def solve(m: DenseMatrix, b) -> tuple[np.ndarray, int]:
    """Particular solution of m x = b and the null-space dimension."""
    return m.solve(b)
