import pytest
from hypothesis import given, strategies as st

from detsolve import oracle
from detsolve.errors import TooLarge

from helpers import P101, problem

p = P101


def test_monomial_basis_size():
    from math import comb

    for n in range(1, 4):
        for d in range(5):
            assert len(oracle.monomials(n, d)) == comb(n + d, d)


def test_multiplicity_examples():
    X1, X2 = oracle.pvar(0, 2), oracle.pvar(1, 2)
    sq = lambda f: oracle.pmul(f, f, p)  # noqa: E731
    assert oracle.local_multiplicity([X1, X2], 2, p) == 1
    assert oracle.local_multiplicity([sq(X1), X2], 3, p) == 2
    assert oracle.local_multiplicity([sq(X1), oracle.pmul(X1, X2, p), sq(X2)], 3, p) == 3


def test_embedded_line_grows_without_bound():
    X1, X2 = oracle.pvar(0, 2), oracle.pvar(1, 2)
    line = [oracle.pmul(X1, X2, p), oracle.pmul(X1, oracle.padd(X1, oracle.pconst(1, 2, p), p, -1), p)]
    dims = [oracle.local_multiplicity(line, mu, p) for mu in range(1, 6)]
    assert dims == [mu + 1 for mu in range(1, 6)]
    assert not oracle.is_isolated_oracle(line, (0, 0), 3, p)
    assert oracle.is_isolated_oracle(line, (1, 0), 3, p)


def test_enumeration_of_linear_problem():
    spec = problem([["x + 2*y - 1", "3*x - y + 4", "x + y + 7"],
                    ["2*x - y + 5", "x + 3*y - 2", "5*x - y + 1"]])
    pts = oracle.enumerate_variety(spec, p)
    # cross-check with a plain double loop over F_101
    polys = oracle.spec_polys(spec, p)
    brute = [(a, b) for a in range(p) for b in range(p)
             if all(oracle.peval(f, (a, b), p) == 0 for f in polys)]
    assert pts == brute


def test_enumeration_limits():
    spec = problem([["x", "y", "z", "w"]], names=("x", "y", "z", "w"))
    with pytest.raises(TooLarge):
        oracle.enumerate_variety(spec, 5)
    spec = problem([["x", "y"]])
    with pytest.raises(TooLarge):
        oracle.enumerate_variety(spec, 1009, budget=1000)


def test_inconsistent_side_equation():
    spec = problem([["x"]], eqs=["1"], names=("x", "y"))
    assert oracle.enumerate_variety(spec, p) == []


@given(st.lists(st.integers(0, p - 1), min_size=4, max_size=4), st.integers(0, p - 1), st.integers(0, p - 1))
def test_grid_scan_matches_pointwise(coeffs, a, b):
    a0, a1, a2, a3 = coeffs
    spec = problem([[f"{a0}*x*y + {a1}*x + {a2}", f"x^2 + {a3}*y"]])
    pts = set(oracle.enumerate_variety(spec, 13))
    polys = oracle.spec_polys(spec, 13)
    x = (a % 13, b % 13)
    assert (x in pts) == all(oracle.peval(f, x, 13) == 0 for f in polys)
