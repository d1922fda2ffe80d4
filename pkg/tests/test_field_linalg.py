import numpy as np
import pytest
from hypothesis import given, strategies as st

from detsolve.errors import Inconsistent, Underdetermined, ZeroInverse
from detsolve.field_linalg import (
    DEFAULT_PRIME,
    FieldCtx,
    PrimeField,
    det,
    inv,
    is_probable_prime,
    mat_inverse,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    rref,
    solve_linear,
)

from helpers import P101

K7 = PrimeField(7)
K = PrimeField(P101)


def test_default_prime():
    assert DEFAULT_PRIME == 2**62 - 57
    assert is_probable_prime(DEFAULT_PRIME)
    assert not is_probable_prime(DEFAULT_PRIME + 2)


def test_small_primes_agree_with_sieve():
    sieve = [True] * 2000
    sieve[0] = sieve[1] = False
    for i in range(2, 2000):
        if sieve[i]:
            for j in range(i * i, 2000, i):
                sieve[j] = False
    assert [n for n in range(2000) if is_probable_prime(n)] == [n for n in range(2000) if sieve[n]]


def test_inverse_examples():
    assert inv(2, 7) == 4
    assert inv(1, 7) == 1
    assert inv(6, 7) == 6
    with pytest.raises(ZeroInverse):
        inv(0, 7)
    with pytest.raises(ZeroInverse):
        inv(14, 7)


def test_composite_modulus_rejected():
    with pytest.raises(ValueError):
        FieldCtx(91)


def test_solve_examples():
    assert solve_linear(K7, [[1, 0], [0, 1]], [3, 5]) == [3, 5]
    with pytest.raises(Inconsistent):
        solve_linear(K7, [[1, 1], [1, 1]], [0, 1])
    assert solve_linear(K7, [[2, 0], [0, 3]], [1, 1]) == [4, 5]
    with pytest.raises(Underdetermined):
        solve_linear(K7, [[1, 1]], [2])


def test_nullspace_examples():
    assert len(nullspace(K7, [[0, 0], [0, 0]])) == 2
    assert nullspace(K7, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []
    (v,) = nullspace(K7, [[1, 1]])
    assert v[0] != 0 and (v[0] + v[1]) % 7 == 0
    assert len(nullspace(K7, [], ncols=3)) == 3


def test_determinant_and_inverse():
    A = [[2, 3], [1, 4]]
    assert det(K7, A) == 5
    Ai = mat_inverse(K7, A)
    assert mat_mul(K7, A, Ai) == [[1, 0], [0, 1]]


def test_rng_branches_are_reproducible():
    ctx = FieldCtx(P101, seed=3)
    a = ctx.rng("column", 0).integers(0, 1000, 5)
    b = ctx.rng("column", 0).integers(0, 1000, 5)
    c = ctx.rng("column", 1).integers(0, 1000, 5)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_prime_must_exceed_twice_bound():
    ctx = FieldCtx(P101, seed=0)
    ctx.check_prime_for(50)
    with pytest.raises(ValueError):
        ctx.check_prime_for(51)


units = st.integers(1, DEFAULT_PRIME - 1)


@given(units, units)
def test_inverse_is_multiplicative(a, b):
    p = DEFAULT_PRIME
    assert inv(a * b % p, p) == inv(a, p) * inv(b, p) % p


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(0, P101 - 1), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


@given(matrices())
def test_rank_nullity(A):
    n = len(A[0])
    basis = nullspace(K, A)
    assert len(basis) + rank(K, A) == n
    for v in basis:
        assert all(x == 0 for x in mat_vec(K, A, v))


@given(matrices(), st.lists(st.integers(0, P101 - 1), min_size=5, max_size=5))
def test_solve_reproduces_rhs(A, x0):
    x0 = x0[: len(A[0])]
    b = mat_vec(K, A, x0)
    try:
        x = solve_linear(K, A, b)
    except Underdetermined:
        assert rank(K, A) < len(A[0])
        return
    assert mat_vec(K, A, x) == b


@given(matrices())
def test_rref_pivots_are_unit_columns(A):
    R, piv = rref(K, A)
    for r, c in enumerate(piv):
        assert [row[c] for row in R] == [1 if i == r else 0 for i in range(len(R))]
