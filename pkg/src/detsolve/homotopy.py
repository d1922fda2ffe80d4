"""Symbolic homotopy: lift the start solutions of B(0, X) over K[[T]],
rebuild a parametrization over K(T) and read off its limit at T = 1.

Pipeline: decompose -> lift -> reconstruct -> limit_at_one -> filter.
Start points with coordinates in F_p are lifted one by one over F_p[[T]];
the remaining (non-split) part of the start parametrization is lifted over
(K[Y]/<w>)[[T]] with dynamic evaluation.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import upoly
from .errors import (
    CountMismatch,
    Degenerate,
    Exhausted,
    NoInvertibleMinor,
    NoSolution,
    ResidualNonzero,
    RetryableError,
)
from .field_linalg import PrimeField, mat_inverse, rref
from .localdim import LocalSystem, is_isolated
from .rings import QuotientRing, SeriesRing
from .slp import Slp, evaluate, jacobian_transform, select_outputs, specialize
from .zdp import ZeroDimParam, crt_combine, dynamic, residual, restrict

log = logging.getLogger(__name__)

# extra series terms used to cross-check every rational reconstruction
CHECK_MARGIN = 4


@dataclass
class HomotopyInstance:
    """B(T, X) with inputs (T, X_1..X_n), its solved start fibre R0, bounds."""

    B: Slp
    R0: ZeroDimParam
    e: int
    c: int
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n = self.B.n_inputs - 1
        if n != self.R0.n:
            raise ValueError("B and R0 disagree on the number of variables")
        if self.B.n_outputs < n:
            raise ValueError("need at least as many equations as unknowns")
        if self.R0.degree > self.c:
            raise ValueError("start fibre larger than the multiplicity bound")
        if any(residual(self.R0, self.start_system)):
            raise ValueError("R0 does not solve B at T = 0")

    @property
    def n(self):
        return self.B.n_inputs - 1

    @property
    def p(self):
        return self.R0.p

    @property
    def lam(self):
        return self.R0.lam

    def _get(self, key, make):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    @property
    def start_system(self):
        return self._get("B0", lambda: specialize(self.B, {0: 0}))

    @property
    def target_system(self):
        return self._get("B1", lambda: specialize(self.B, {0: 1}))

    def start_jacobian(self):
        return self._get("J0", lambda: jacobian_transform(self.start_system))

    def target_jacobian(self):
        return self._get("J1", lambda: jacobian_transform(self.target_system))

    def newton_program(self, rows):
        key = ("newton", tuple(rows))
        return self._get(key, lambda: jacobian_transform(select_outputs(self.B, rows),
                                                         wrt=range(1, self.n + 1)))

    def local_system(self):
        return self._get("local", lambda: LocalSystem.prepare(self.target_system))


@dataclass
class LiftedBranch:
    """Solutions over one factor of w0, carried as coordinates in A[[T]].

    ``ring`` is F_p for a single rational point, or K[Y]/<w_branch>.
    """

    ring: object
    w: tuple
    rows: tuple
    x: list
    Z: list
    prec: int = 1

    @property
    def degree(self):
        return len(self.w) - 1


@dataclass(frozen=True)
class ParamKT:
    """Parametrization over K(T): coefficient fractions (num, den) in T."""

    w: tuple
    v: tuple
    lam: tuple
    p: int

    @property
    def degree(self):
        return len(self.w) - 1


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------


def _jacobian_matrix(prog_values, m, n):
    vals = prog_values[m:]
    return [vals[j * n:(j + 1) * n] for j in range(m)]


def _select(A, jac, n):
    """Rows giving an invertible n x n minor, and the inverse of that minor."""
    m = len(jac)
    transposed = [[jac[j][i] for j in range(m)] for i in range(n)]
    _, pivots = rref(A, transposed)
    if len(pivots) < n:
        raise NoInvertibleMinor("start point is singular")
    rows = tuple(pivots)
    sub = [jac[r] for r in rows]
    return rows, mat_inverse(A, sub)


def decompose(inst: HomotopyInstance):
    """Branch seeds with chosen equations and inverse Jacobian minors."""
    R0 = inst.R0
    p, n = R0.p, R0.n
    m = inst.B.n_outputs
    J0 = inst.start_jacobian()
    F = PrimeField(p)
    branches = []
    if R0.degree == 0:
        return branches
    roots, rest = upoly.split_rational(list(R0.w), p)
    dw = upoly.deriv(list(R0.w), p)
    for t in roots:
        c = pow(upoly.evaluate(dw, t, p), -1, p)
        x = [upoly.evaluate(list(vi), t, p) * c % p for vi in R0.v]
        jac = _jacobian_matrix(evaluate(J0, F, x), m, n)
        rows, Z = _select(F, jac, n)
        branches.append(LiftedBranch(F, (-t % p, 1), rows, x, Z))
    if len(rest) > 1:
        def seed(piece):
            Q, xs = piece.coordinates()
            jac = _jacobian_matrix(evaluate(J0, Q, xs), m, n)
            rows, Z = _select(Q, jac, n)
            return LiftedBranch(Q, piece.w, rows, xs, Z)

        for _, br in dynamic(restrict(R0, rest), seed):
            branches.append(br)
    return branches


# ---------------------------------------------------------------------------
# lift
# ---------------------------------------------------------------------------


def lift(inst: HomotopyInstance, br: LiftedBranch, target: int) -> LiftedBranch:
    """Newton iteration over A[[T]], doubling the precision up to ``target``."""
    A = br.ring
    n = inst.n
    prog = inst.newton_program(br.rows)
    S = SeriesRing(A, br.prec)
    X = [x if br.prec > 1 else S.embed(x) for x in br.x]
    Z = [[z if br.prec > 1 else S.embed(z) for z in row] for row in br.Z]
    k = br.prec
    while k < target:
        k = min(2 * k, target)
        S = SeriesRing(A, k)
        X = [S.from_coeffs(x) for x in X]
        Z = [[S.from_coeffs(z) for z in row] for row in Z]
        out = evaluate(prog, S, [S.gen()] + X)
        Fv = out[:n]
        J = [out[n + j * n:n + (j + 1) * n] for j in range(n)]
        # Z <- Z + Z (I - J Z)
        JZ = _matmul(S, J, Z)
        E = [[S.sub(S.one() if i == j else S.zero(), JZ[i][j]) for j in range(n)] for i in range(n)]
        Z = [[S.add(Z[i][j], v) for j, v in enumerate(row)] for i, row in enumerate(_matmul(S, Z, E))]
        step = [_dot(S, Z[i], Fv) for i in range(n)]
        X = [S.sub(X[i], step[i]) for i in range(n)]
    S = SeriesRing(A, target)
    X = [S.from_coeffs(x) for x in X]
    vals = evaluate(inst.B, S, [S.gen()] + X)
    if any(not S.is_zero(v) for v in vals):
        raise ResidualNonzero("lifted branch does not cancel every equation")
    return LiftedBranch(A, br.w, br.rows, X, Z, target)


def _matmul(S, A, B):
    n = len(B[0])
    return [[_dot(S, row, [B[k][j] for k in range(len(B))]) for j in range(n)] for row in A]


def _dot(S, xs, ys):
    acc = S.zero()
    for a, b in zip(xs, ys):
        acc = S.add(acc, S.mul(a, b))
    return acc


# ---------------------------------------------------------------------------
# reconstruct
# ---------------------------------------------------------------------------


def _ypoly_mul(a, b, N, p):
    """Product of polynomials in Y whose coefficients are series mod T^N."""
    if not a or not b:
        return []
    stride = 2 * N - 1
    pad = [0] * (stride - N)
    fa = []
    for s in a:
        fa.extend(s)
        fa.extend(pad)
    fb = []
    for s in b:
        fb.extend(s)
        fb.extend(pad)
    prod = upoly.mul_raw(fa, fb, p)
    out = []
    for k in range(len(a) + len(b) - 1):
        chunk = prod[k * stride:k * stride + N]
        out.append(chunk + [0] * (N - len(chunk)))
    return out


def _ypoly_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = [list(s) for s in a]
    for k, s in enumerate(b):
        out[k] = [(x + y) % p for x, y in zip(out[k], s)]
    return out


def _branch_param(inst, br: LiftedBranch, N):
    """(w_b, [v_b1..v_bn]) as polynomials in Y with series coefficients."""
    p = inst.p
    lam = inst.lam
    A = br.ring
    S = SeriesRing(A, N)
    L = S.zero()
    for li, xi in zip(lam, br.x):
        if li:
            L = S.add(L, S.scale(xi, li))
    if isinstance(A, PrimeField):
        one = [1] + [0] * (N - 1)
        w = [[-c % p for c in L], one]
        v = [[list(xi)] for xi in br.x]
        return w, v
    # trace formulas over K[Y]/<w_b>
    d = A.d
    F = PrimeField(p)
    SF = SeriesRing(F, N)
    tr = lambda s: tuple(A.trace(c) for c in s)  # noqa: E731
    pows = [S.one()]
    for _ in range(d):
        pows.append(S.mul(pows[-1], L))
    ps = [tr(pows[k]) for k in range(1, d + 1)]
    W = upoly.poly_from_power_sums(ps, d, SF, p)
    v = []
    for xi in br.x:
        t = [tr(S.mul(xi, pows[j])) for j in range(d)]
        coeffs = []
        for k in range(d):
            acc = SF.zero()
            for j in range(k + 1, d + 1):
                acc = SF.add(acc, SF.mul(W[j], t[j - k - 1]))
            coeffs.append(list(acc))
        v.append(coeffs)
    return [list(c) for c in W], v


def _combine(parts, N, p):
    """Product of the w's and the matching numerators, by a product tree."""
    if len(parts) == 1:
        return parts[0]
    mid = len(parts) // 2
    wl, vl = _combine(parts[:mid], N, p)
    wr, vr = _combine(parts[mid:], N, p)
    w = _ypoly_mul(wl, wr, N, p)
    v = [_ypoly_add(_ypoly_mul(a, wr, N, p), _ypoly_mul(b, wl, N, p), p) for a, b in zip(vl, vr)]
    return w, v


def series_param(inst: HomotopyInstance, branches, N):
    """w(T, Y) and v_i(T, Y) as Y-polynomials with coefficients mod T^N."""
    parts = [_branch_param(inst, br, N) for br in branches]
    if not parts:
        return [[1] + [0] * (N - 1)], [[] for _ in range(inst.n)]
    w, v = _combine(parts, N, inst.p)
    d = len(w) - 1
    v = [(vi + [[0] * N] * d)[:d] for vi in v]
    return w, v


def reconstruct(inst: HomotopyInstance, branches, N=None) -> ParamKT:
    """Rational reconstruction of every coefficient of w(T,Y), v_i(T,Y)."""
    p, e = inst.p, inst.e
    if N is None:
        N = branches[0].prec if branches else 2 * e + 1 + CHECK_MARGIN
    w, v = series_param(inst, branches, N)
    # T = 0 must give back the start parametrization
    w0 = upoly.norm([s[0] for s in w])
    v0 = [tuple(upoly.norm([s[0] for s in vi])) for vi in v]
    if tuple(w0) != inst.R0.w or tuple(v0) != inst.R0.v:
        raise Degenerate("series parametrization does not specialize to R0")

    def rr(s):
        num, den = upoly.rational_reconstruct(s, e, p, prec=N)
        check = upoly.series_mul(den, s, N, p)
        if upoly.norm(check) != num:
            raise NoSolution("reconstruction inconsistent with the extra terms")
        return tuple(num), tuple(den)

    wf = tuple(rr(s) for s in w[:-1]) + (((1,), (1,)),)
    vf = tuple(tuple(rr(s) for s in vi) for vi in v)
    return ParamKT(wf, vf, inst.lam, p)


# ---------------------------------------------------------------------------
# limit at T = 1
# ---------------------------------------------------------------------------

_INF = float("inf")


def _at_one(poly, p):
    """(order of vanishing at T = 1, leading value there)."""
    if not poly:
        return _INF, 0
    a = list(poly)
    order = 0
    while True:
        # synthetic division by (T - 1)
        q = [0] * (len(a) - 1)
        acc = 0
        for i in range(len(a) - 1, 0, -1):
            acc = (acc + a[i]) % p
            q[i - 1] = acc
        r = (acc + a[0]) % p
        if r:
            return order, r
        a = q
        order += 1


def _frac_at_one(frac, p):
    num, den = frac
    vn, ln = _at_one(num, p)
    if vn == _INF:
        return _INF, 0
    vd, ld = _at_one(den, p)
    return vn - vd, ln * pow(ld, -1, p) % p


def limit_at_one(param: ParamKT) -> ZeroDimParam:
    """Parametrization of the finite limits at T = 1 of the solution paths.

    w(T, Y) is scaled by (T-1)^(-v) with v the least order at T = 1 among
    its coefficients; at T = 1 the unbounded paths drop out of the degree.
    Coinciding limits are merged by dividing out g = gcd(W, W').
    """
    p = param.p
    lam = param.lam
    n = len(lam)
    wv = [_frac_at_one(f, p) for f in param.w]
    vmin = min(o for o, _ in wv)
    W = upoly.norm([c if o == vmin else 0 for o, c in wv])
    V = []
    for vi in param.v:
        coeffs = []
        for f in vi:
            o, c = _frac_at_one(f, p)
            if o < vmin:
                raise Degenerate("numerator diverges faster than w at T = 1")
            coeffs.append(c if o == vmin else 0)
        V.append(upoly.norm(coeffs))
    if len(W) <= 1:
        return ZeroDimParam((1,), tuple(() for _ in range(n)), lam, p)
    c = pow(W[-1], -1, p)
    W = upoly.scale(W, c, p)
    V = [upoly.scale(vi, c, p) for vi in V]
    dW = upoly.deriv(W, p)
    g = upoly.gcd(W, dW, p)
    w1 = upoly.exact_quo(W, g, p)
    dW_g = upoly.exact_quo(dW, g, p)
    dw1 = upoly.deriv(w1, p)
    try:
        den = upoly.inverse_mod(upoly.rem(dW_g, w1, p), w1, p) if len(w1) > 1 else []
    except ArithmeticError as exc:
        raise Degenerate("merged limit points cannot be separated") from exc
    v1 = []
    for vi in V:
        q, r = upoly.poly_divmod(vi, g, p)
        if r:
            raise Degenerate("numerator not divisible by the repeated part of w")
        v1.append(tuple(upoly.rem(upoly.mul(upoly.mul(q, den, p), dw1, p), w1, p)))
    try:
        return ZeroDimParam(tuple(w1), tuple(v1), lam, p)
    except ValueError as exc:
        raise Degenerate(str(exc)) from exc


# ---------------------------------------------------------------------------
# filters and drivers
# ---------------------------------------------------------------------------


def _full_rank_pieces(inst, r: ZeroDimParam):
    """Split r into (piece, jacobian has rank n) pairs."""
    n, m = inst.n, inst.B.n_outputs
    J1 = inst.target_jacobian()

    def test(piece):
        Q, xs = piece.coordinates()
        jac = _jacobian_matrix(evaluate(J1, Q, xs), m, n)
        transposed = [[jac[j][i] for j in range(m)] for i in range(n)]
        return len(rref(Q, transposed)[1]) == n

    if r.degree == 0:
        return []
    return dynamic(r, test)


def _isolated_pieces(inst, r: ZeroDimParam):
    local = inst.local_system()

    def test(piece):
        Q, xs = piece.coordinates()
        return is_isolated(local.system, xs, inst.c, Q, local=local)

    return dynamic(r, test)


def endpoints(inst: HomotopyInstance) -> ZeroDimParam:
    """Limits of the bounded paths (before the isolated/simple filter)."""
    N = 2 * inst.e + 1 + CHECK_MARGIN
    branches = [lift(inst, br, N) for br in decompose(inst)]
    if not branches:
        return ZeroDimParam((1,), tuple(() for _ in range(inst.n)), inst.lam, inst.p)
    return limit_at_one(reconstruct(inst, branches, N))


def _finish(inst, kept, R1):
    out = crt_combine(kept) if kept else ZeroDimParam((1,), tuple(() for _ in range(inst.n)), inst.lam, inst.p)
    if any(residual(out, inst.target_system)):
        raise ResidualNonzero("output does not cancel the target system")
    if out.degree > inst.c:
        raise CountMismatch("more output points than the bound c")
    return out


def run_simple(inst: HomotopyInstance) -> ZeroDimParam:
    R1 = endpoints(inst)
    kept = [piece for piece, ok in _full_rank_pieces(inst, R1) if ok]
    return _finish(inst, kept, R1)


def run_isolated(inst: HomotopyInstance) -> ZeroDimParam:
    R1 = endpoints(inst)
    kept = []
    for piece, simple in _full_rank_pieces(inst, R1):
        if simple:
            kept.append(piece)
        else:
            kept.extend(sub for sub, ok in _isolated_pieces(inst, piece) if ok)
    return _finish(inst, kept, R1)


def run(inst: HomotopyInstance, simple: bool) -> ZeroDimParam:
    return run_simple(inst) if simple else run_isolated(inst)


def with_retries(make_instance, budget: int, simple: bool, stats=None):
    """Build and run instances until one passes every check.

    ``make_instance(attempt)`` must draw fresh randomness per attempt.
    """
    last = None
    for attempt in range(budget):
        try:
            inst = make_instance(attempt)
            return run(inst, simple)
        except RetryableError as exc:
            last = exc
            log.debug("attempt %d failed: %r", attempt, exc)
            if stats is not None:
                stats["retries"] = stats.get("retries", 0) + 1
    raise Exhausted(budget, last)
