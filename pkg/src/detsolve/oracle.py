"""Brute-force references for the tests, independent of the SLP code.

Polynomials here are expanded dictionaries ``{exponent tuple: coefficient}``
built directly from expression trees.  Point enumeration evaluates them on
the whole grid F_q^n with numpy.
"""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement, permutations

import numpy as np

from .errors import TooLarge
from .field_linalg import PrimeField, rank

DEFAULT_BUDGET = 4_000_000


# ---------------------------------------------------------------------------
# expanded polynomials
# ---------------------------------------------------------------------------


def padd(a, b, q, sign=1):
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + sign * c) % q
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def pmul(a, b, q):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = (out.get(m, 0) + ca * cb) % q
    return {m: c for m, c in out.items() if c}


def pconst(c, n, q):
    c %= q
    return {(0,) * n: c} if c else {}


def pvar(i, n):
    return {tuple(1 if j == i else 0 for j in range(n)): 1}


def from_ast(node, n, q):
    kind = node[0]
    if kind == "num":
        return pconst(node[1], n, q)
    if kind == "var":
        return pvar(node[1], n)
    if kind == "neg":
        return padd({}, from_ast(node[1], n, q), q, -1)
    if kind == "pow":
        base = from_ast(node[1], n, q)
        out = pconst(1, n, q)
        for _ in range(node[2]):
            out = pmul(out, base, q)
        return out
    a = from_ast(node[1], n, q)
    b = from_ast(node[2], n, q)
    if kind == "add":
        return padd(a, b, q)
    if kind == "sub":
        return padd(a, b, q, -1)
    return pmul(a, b, q)


def _perm_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def leibniz_det(M, mul, add, neg, one):
    """Determinant by the permutation expansion over arbitrary values."""
    k = len(M)
    total = None
    for perm in permutations(range(k)):
        term = one
        for i, j in enumerate(perm):
            term = mul(term, M[i][j])
        if _perm_sign(perm) < 0:
            term = neg(term)
        total = term if total is None else add(total, term)
    return total


def expanded_minors(F, p, q_cols, n, q):
    """All maximal minors of a p x q_cols matrix of expanded polynomials."""
    out = []
    for cols in combinations(range(q_cols), p):
        sub = [[F[i][j] for j in cols] for i in range(p)]
        out.append(leibniz_det(sub, lambda a, b: pmul(a, b, q), lambda a, b: padd(a, b, q),
                               lambda a: padd({}, a, q, -1), pconst(1, n, q)))
    return out


def pderiv(a, i, q):
    out = {}
    for m, c in a.items():
        if m[i]:
            mm = list(m)
            mm[i] -= 1
            v = c * m[i] % q
            if v:
                out[tuple(mm)] = (out.get(tuple(mm), 0) + v) % q
    return {m: c for m, c in out.items() if c}


def peval(a, x, q):
    total = 0
    for m, c in a.items():
        t = c
        for xi, e in zip(x, m):
            t = t * pow(xi, e, q) % q
        total += t
    return total % q


def pshift(a, x, q):
    """a(X + x), expanded."""
    n = len(x)
    out = {}
    for m, c in a.items():
        term = pconst(c, n, q)
        for i, e in enumerate(m):
            lin = padd(pvar(i, n), pconst(x[i], n, q), q)
            for _ in range(e):
                term = pmul(term, lin, q)
        out = padd(out, term, q)
    return out


def spec_polys(spec, q):
    """Expanded (G, minors of F) for a parsed problem."""
    n = len(spec.var_names)
    F = [[from_ast(e, n, q) for e in row] for row in spec.F]
    G = [from_ast(g, n, q) for g in spec.G]
    return G + expanded_minors(F, spec.p, spec.q, n, q)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _grid_eval(poly, powers, q, size):
    acc = np.zeros(size, dtype=np.int64)
    for m, c in poly.items():
        term = np.full(size, c % q, dtype=np.int64)
        for i, e in enumerate(m):
            if e:
                term = term * powers[i][e] % q
        acc = (acc + term) % q
    return acc


def enumerate_variety(spec, small_prime: int, budget: int = DEFAULT_BUDGET):
    """All points of F_q^n where rank F < p and G vanishes (sorted)."""
    q = small_prime
    n = len(spec.var_names)
    if n > 3:
        raise TooLarge("enumeration is limited to n <= 3")
    size = q ** n
    if size > budget:
        raise TooLarge(f"{q}^{n} points exceed the budget of {budget}")
    grids = np.meshgrid(*[np.arange(q, dtype=np.int64)] * n, indexing="ij")
    coords = [g.ravel() for g in grids]
    polys = spec_polys(spec, q)
    maxdeg = max((max(m) for poly in polys for m in poly), default=0)
    powers = []
    for x in coords:
        pw = [np.ones(size, dtype=np.int64), x]
        for _ in range(2, maxdeg + 1):
            pw.append(pw[-1] * x % q)
        powers.append(pw)
    mask = np.ones(size, dtype=bool)
    for poly in polys:
        if not mask.any():
            break
        mask &= _grid_eval(poly, powers, q, size) == 0
    idx = np.nonzero(mask)[0]
    return sorted(tuple(int(c[i]) for c in coords) for i in idx)


def jacobian_rank(polys, x, q):
    n = len(x)
    J = [[peval(pderiv(f, i, q), x, q) for i in range(n)] for f in polys]
    return rank(PrimeField(q), J) if J else 0


def simple_points(spec, q, points):
    """Subset of ``points`` where the Jacobian of (G, minors) has rank n."""
    polys = spec_polys(spec, q)
    n = len(spec.var_names)
    return [x for x in points if jacobian_rank(polys, x, q) == n]


# ---------------------------------------------------------------------------
# local multiplicity
# ---------------------------------------------------------------------------


def monomials(n, d):
    """Exponent tuples of total degree <= d, graded then lexicographic."""
    out = []
    for k in range(d + 1):
        for combo in combinations_with_replacement(range(n), k):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return sorted(set(out), key=lambda m: (sum(m), tuple(-x for x in m)))


def local_multiplicity(polys, mu: int, q: int, n: int | None = None) -> int:
    """dim K[X] / (<polys> + m^(mu+1)) at the origin, by a Macaulay matrix."""
    if n is None:
        n = len(next(iter(next(p for p in polys if p))))
    basis = monomials(n, mu)
    index = {m: k for k, m in enumerate(basis)}
    rows = []
    for f in polys:
        for a in basis:
            row = [0] * len(basis)
            for m, c in f.items():
                mm = tuple(x + y for x, y in zip(m, a))
                k = index.get(mm)
                if k is not None:
                    row[k] = (row[k] + c) % q
            if any(row):
                rows.append(row)
    return len(basis) - (rank(PrimeField(q), rows) if rows else 0)


def is_isolated_oracle(polys, x, mu, q):
    """Origin-translated multiplicity test: isolated iff dimension <= mu."""
    shifted = [pshift(f, x, q) for f in polys]
    n = len(x)
    return local_multiplicity(shifted, mu, q, n) <= mu
