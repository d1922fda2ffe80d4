"""Isolated-point test through the local dual space (integration method).

The dual space of the local ring at a point is grown one order at a time.
Each functional beta_i is stored through the coefficients of its products
X_k . beta_i = sum_{j<i} lam[k][i][j] beta_j, i.e. through strictly lower
triangular matrices M_k with M_k[i][j] = lam[k][i][j].  For any polynomial
h, the column (beta_1(h), ..., beta_s(h)) equals h(M_1, ..., M_n) e_1.

Everything is written against a ring context, so a whole parametrization
can be tested at once over K[Y]/<w>; zero divisors surface as ZeroDivisor.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import NotARoot
from .field_linalg import nullspace
from .rings import MatrixAlgebra
from .slp import Slp, divided_difference_transform, evaluate, shifted


@dataclass(frozen=True)
class DualBasis:
    """Functionals beta_1..beta_s via their multiplication matrices."""

    ctx: object
    n: int
    M: tuple  # n matrices, each s x s, stored as tuples of rows
    block_sizes: tuple

    @property
    def s(self) -> int:
        return len(self.M[0]) if self.M else 1

    @classmethod
    def point(cls, ctx, n):
        z = ctx.zero()
        return cls(ctx, n, tuple(((z,),) for _ in range(n)), (1,))

    def commutes(self) -> bool:
        A = MatrixAlgebra(self.ctx, self.s)
        for k in range(self.n):
            for l in range(k + 1, self.n):
                if A.mul(self.M[k], self.M[l]) != A.mul(self.M[l], self.M[k]):
                    return False
        return True


class Status(enum.Enum):
    EXTENDED = "extended"
    STABLE = "stable"
    EXCEEDED = "exceeded"


@dataclass(frozen=True)
class LocalSystem:
    """A system prepared for dual-space computations at a point x.

    ``dd[k]`` computes the k-th divided difference of the translated system
    C(X + x); its inputs are (X_1..X_n, x_1..x_n).
    """

    system: Slp
    dd: tuple

    @classmethod
    def prepare(cls, system: Slp):
        sh = shifted(system)
        return cls(system, tuple(divided_difference_transform(sh, k) for k in range(system.n_inputs)))

    @property
    def n(self):
        return self.system.n_inputs


def eval_duals(basis: DualBasis, prog: Slp, extra=()):
    """Matrix of beta_i(h_r): s rows, one column per output of ``prog``.

    ``prog`` reads n inputs bound to M_1..M_n, followed by ``extra`` inputs
    bound to scalar matrices.
    """
    A = MatrixAlgebra(basis.ctx, basis.s)
    point = list(basis.M) + [A.scalar(c) for c in extra]
    outs = evaluate(prog, A, point)
    return [[h[i][0] for h in outs] for i in range(basis.s)]


def _generator_columns(basis: DualBasis, local: LocalSystem, x):
    """For each k: rows j = beta_j(delta_k(c_r(X_1..X_k, 0..0) shifted))."""
    A = MatrixAlgebra(basis.ctx, basis.s)
    n = basis.n
    z = A.zero()
    cols = []
    for k in range(n):
        point = [basis.M[i] if i <= k else z for i in range(n)]
        point += [A.scalar(c) for c in x]
        outs = evaluate(local.dd[k], A, point)
        cols.append([[h[i][0] for h in outs] for i in range(basis.s)])
    return cols


def extend(basis: DualBasis, local: LocalSystem, mu: int, x):
    """One growth step.  Returns (Status, basis)."""
    K = basis.ctx
    n, s = basis.n, basis.s
    M = basis.M
    nunk = n * s
    rows = []
    # commutation: sum_j lam(k)_j (X_k'.beta_j) - lam(k')_j (X_k.beta_j) = 0
    for k in range(n):
        for k2 in range(k + 1, n):
            for l in range(s):
                row = [K.zero()] * nunk
                for j in range(s):
                    row[k * s + j] = M[k2][j][l]
                    row[k2 * s + j] = K.neg(M[k][j][l])
                if any(not K.is_zero(c) for c in row):
                    rows.append(row)
    gen = _generator_columns(basis, local, x)
    nout = len(local.system.outputs)
    for r in range(nout):
        row = [gen[k][j][r] for k in range(n) for j in range(s)]
        if any(not K.is_zero(c) for c in row):
            rows.append(row)
    kernel = nullspace(K, rows, nunk) if rows else nullspace(K, [], nunk)
    known = [[M[k][i][j] for k in range(n) for j in range(s)] for i in range(1, s)]
    fresh = _complement(K, known, kernel)
    if not fresh:
        return Status.STABLE, basis
    s2 = s + len(fresh)
    if s2 > mu:
        return Status.EXCEEDED, basis
    z = K.zero()
    newM = []
    for k in range(n):
        mat = [list(row) + [z] * (s2 - s) for row in M[k]]
        for vec in fresh:
            mat.append(list(vec[k * s:(k + 1) * s]) + [z] * (s2 - s))
        newM.append(tuple(tuple(r) for r in mat))
    return Status.EXTENDED, DualBasis(K, n, tuple(newM), basis.block_sizes + (s2,))


def _complement(K, known, candidates):
    """Candidates that stay independent modulo the span of ``known``."""
    echelon = []  # list of (pivot, row normalized at pivot)

    def reduce(vec):
        v = list(vec)
        for piv, row in echelon:
            c = v[piv]
            if not K.is_zero(c):
                v = [K.sub(a, K.mul(c, b)) for a, b in zip(v, row)]
        return v

    def insert(vec):
        v = reduce(vec)
        piv = next((i for i, c in enumerate(v) if not K.is_zero(c)), None)
        if piv is None:
            return False
        f = K.inv(v[piv])
        echelon.append((piv, [K.mul(f, c) for c in v]))
        return True

    for vec in known:
        insert(vec)
    return [vec for vec in candidates if insert(vec)]


def is_isolated(system, x, mu: int, ctx, local: LocalSystem | None = None,
                return_basis: bool = False):
    """Decide whether the root x of ``system`` is isolated (multiplicity <= mu)."""
    if mu < 1:
        raise ValueError("mu must be at least 1")
    local = local or LocalSystem.prepare(system)
    vals = evaluate(local.system, ctx, list(x))
    if any(not ctx.is_zero(v) for v in vals):
        raise NotARoot("the point does not cancel the system")
    basis = DualBasis.point(ctx, local.n)
    while True:
        status, basis = extend(basis, local, mu, x)
        if status is not Status.EXTENDED:
            verdict = status is Status.STABLE
            return (verdict, basis) if return_basis else verdict
