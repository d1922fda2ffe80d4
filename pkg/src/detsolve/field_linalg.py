"""Prime field arithmetic, seeded randomness and dense linear algebra.

Field elements are plain Python ints in ``[0, p)``.  The linear algebra
routines are written against a small ring-context protocol (``zero``,
``one``, ``add``, ``sub``, ``mul``, ``neg``, ``inv``, ``is_zero``) so the
same elimination code runs over F_p and over quotient algebras K[Y]/<w>,
where a failed inversion raises :class:`~detsolve.errors.ZeroDivisor`.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass, field

import numpy as np

from .errors import Inconsistent, Underdetermined, ZeroInverse

# 2**62 - 57 is prime
DEFAULT_PRIME = (1 << 62) - 57

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroInverse("inverse of 0")
    return pow(a, -1, p)


class PrimeField:
    """Ring context for F_p."""

    def __init__(self, p: int):
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, c):
        return c % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def scale(self, a, c):
        return a * c % self.p

    def inv(self, a):
        return inv(a, self.p)

    def is_zero(self, a):
        return a == 0

    def random(self, rng):
        return int(rng.integers(0, self.p))


def _key_int(k) -> int:
    if isinstance(k, str):
        return zlib.crc32(k.encode())
    return int(k)


@dataclass(frozen=True)
class FieldCtx:
    """Run-wide arithmetic settings: the prime, the seed, the retry budget."""

    prime: int = DEFAULT_PRIME
    seed: int = 0
    retry_budget: int = 8
    field: PrimeField = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.prime < 3 or not is_probable_prime(self.prime):
            raise ValueError(f"{self.prime} is not an odd prime")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.retry_budget < 1:
            raise ValueError("retry_budget must be positive")
        object.__setattr__(self, "field", PrimeField(self.prime))

    def rng(self, *branch) -> np.random.Generator:
        """Counter-based stream keyed by (seed, branch)."""
        key = tuple(_key_int(k) for k in branch)
        ss = np.random.SeedSequence(self.seed, spawn_key=key)
        return np.random.Generator(np.random.Philox(ss))

    def check_prime_for(self, ebound: int):
        if self.prime <= 2 * ebound:
            raise ValueError(
                f"prime {self.prime} too small: need prime > 2*{ebound}; pass a larger --prime"
            )


def random_elements(rng, p: int, count: int) -> list[int]:
    if p < 1 << 63:
        return [int(x) for x in rng.integers(0, p, size=count)]
    return [int.from_bytes(rng.bytes(16), "little") % p for _ in range(count)]


# ---------------------------------------------------------------------------
# dense linear algebra over a ring context
# ---------------------------------------------------------------------------


def rref(K, A):
    """Reduced row echelon form.

    Returns ``(R, pivots)``.  Pivot rule: for each column, the first row at
    or below the current one holding a nonzero entry.  Over a quotient ring
    the pivot inversion may raise ZeroDivisor.
    """
    R = [list(row) for row in A]
    m = len(R)
    ncols = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if not K.is_zero(R[i][c])), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        f = K.inv(R[r][c])
        R[r] = [K.mul(f, x) for x in R[r]]
        for i in range(m):
            if i != r and not K.is_zero(R[i][c]):
                g = R[i][c]
                R[i] = [K.sub(x, K.mul(g, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(K, A) -> int:
    if not A:
        return 0
    return len(rref(K, A)[1])


def nullspace(K, A, ncols=None):
    """Basis of {x : A x = 0}, one vector per free column."""
    if not A:
        return [[K.one() if i == j else K.zero() for i in range(ncols)] for j in range(ncols)]
    ncols = len(A[0])
    R, pivots = rref(K, A)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = [K.zero()] * ncols
        x[fc] = K.one()
        for row, pc in zip(R, pivots):
            x[pc] = K.neg(row[fc])
        basis.append(x)
    return basis


def solve_linear(K, A, b):
    """Unique solution of A x = b; raises Inconsistent or Underdetermined."""
    m = len(A)
    if m == 0:
        raise Underdetermined("empty system")
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(K, aug)
    if n in pivots:
        raise Inconsistent("system has no solution")
    if len(pivots) < n:
        raise Underdetermined(f"rank {len(pivots)} < {n}")
    x = [K.zero()] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def mat_inverse(K, A):
    n = len(A)
    aug = [list(row) + [K.one() if i == j else K.zero() for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(K, aug)
    if pivots[:n] != list(range(n)):
        raise Underdetermined("singular matrix")
    return [row[n:] for row in R]


def mat_mul(K, A, B):
    Bt = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = K.zero()
            for a, b in zip(row, col):
                acc = K.add(acc, K.mul(a, b))
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(K, A, x):
    out = []
    for row in A:
        acc = K.zero()
        for a, b in zip(row, x):
            acc = K.add(acc, K.mul(a, b))
        out.append(acc)
    return out


def det(K, A):
    """Determinant by elimination (requires inverses)."""
    n = len(A)
    M = [list(r) for r in A]
    d = K.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if not K.is_zero(M[i][c])), None)
        if piv is None:
            return K.zero()
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = K.neg(d)
        d = K.mul(d, M[c][c])
        f = K.inv(M[c][c])
        for i in range(c + 1, n):
            if not K.is_zero(M[i][c]):
                g = K.mul(M[i][c], f)
                M[i] = [K.sub(x, K.mul(g, y)) for x, y in zip(M[i], M[c])]
    return d
