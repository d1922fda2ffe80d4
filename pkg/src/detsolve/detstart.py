"""Degree bounds and the two start systems (column degrees, row degrees).

Affine forms are pairs ``(c0, (c_1, ..., c_n))`` meaning c0 + sum c_i X_i;
a product of forms is a tuple of such pairs.  Target systems are given as
a program F with p*q outputs (row-major) and an optional program G with s
outputs, both in n inputs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, product
from math import prod

from .errors import (
    CountMismatch,
    Exhausted,
    Inconsistent,
    InvalidProfile,
    NotCoprime,
    RankDeficientBranch,
    RetryableError,
    Underdetermined,
)
from .field_linalg import FieldCtx, PrimeField, random_elements, solve_linear
from .homotopy import HomotopyInstance, run
from .slp import Slp, SlpBuilder, berkowitz_det
from .zdp import ZeroDimParam, change_lambda, crt_combine, empty, extend_coordinates, from_points

log = logging.getLogger(__name__)


def elem_sym(k: int, values) -> int:
    """E_k: sum over k-subsets of the products."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    e = [1] + [0] * k
    for x in values:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * x
    return e[k]


def complete_sym(k: int, values) -> int:
    """S_k: sum over all degree-k monomials in the values."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    h = [1] + [0] * k
    for x in values:
        for j in range(1, k + 1):
            h[j] += h[j - 1] * x
    return h[k]


@dataclass(frozen=True)
class DegreeProfile:
    p: int
    q: int
    s: int
    n: int
    cdeg: tuple
    rdeg: tuple
    gdeg: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cdeg", tuple(self.cdeg))
        object.__setattr__(self, "rdeg", tuple(self.rdeg))
        object.__setattr__(self, "gdeg", tuple(self.gdeg))
        if self.p < 1 or self.q < self.p:
            raise InvalidProfile(f"need 1 <= p <= q, got p={self.p}, q={self.q}")
        if self.s < 0 or len(self.gdeg) != self.s:
            raise InvalidProfile("need one degree per side equation")
        if len(self.cdeg) != self.q or len(self.rdeg) != self.p:
            raise InvalidProfile("need q column degrees and p row degrees")
        if self.n != self.q - self.p + self.s + 1:
            raise InvalidProfile(f"n = {self.n} but q - p + s + 1 = {self.q - self.p + self.s + 1}")
        for j, d in enumerate(self.cdeg):
            if d < 1:
                raise InvalidProfile(
                    f"column {j + 1} of F consists of constants; if it is nonzero the "
                    "problem reduces to a smaller matrix, and that column can then be discarded")
        for i, d in enumerate(self.rdeg):
            if d < 1:
                raise InvalidProfile(
                    f"row {i + 1} of F consists of constants; row operations reduce the "
                    "problem to a smaller matrix, and that row can then be discarded")
        for i, d in enumerate(self.gdeg):
            if d < 1:
                raise InvalidProfile(f"equation g_{i + 1} is constant; drop it or the system is empty")


@dataclass(frozen=True)
class Bounds:
    c: int
    cprime: int
    e: int
    eprime: int

    def to_json(self):
        return {"c": self.c, "cprime": self.cprime, "e": self.e, "eprime": self.eprime}


def bounds(profile: DegreeProfile) -> Bounds:
    k = profile.n - profile.s
    g = prod(profile.gdeg)
    g1 = prod(d + 1 for d in profile.gdeg)
    return Bounds(
        c=g * elem_sym(k, profile.cdeg),
        cprime=g * complete_sym(k, profile.rdeg),
        e=g1 * elem_sym(k, [d + 1 for d in profile.cdeg]),
        eprime=g1 * complete_sym(k, [d + 1 for d in profile.rdeg]),
    )


# ---------------------------------------------------------------------------
# affine forms
# ---------------------------------------------------------------------------


def random_form(rng, p, n):
    vals = random_elements(rng, p, n + 1)
    return (vals[0], tuple(vals[1:]))


def random_product(rng, p, n, degree):
    return tuple(random_form(rng, p, n) for _ in range(degree))


def eval_form(form, x, p):
    c0, cs = form
    return (c0 + sum(c * xi for c, xi in zip(cs, x))) % p


def eliminate(equations, n, elim, p):
    """Solve affine equations for the variables ``elim``.

    Returns one affine form per eliminated variable, written in the kept
    variables (in increasing index order).
    """
    keep = [i for i in range(n) if i not in elim]
    F = PrimeField(p)
    A = [[eq[1][j] for j in elim] for eq in equations]
    forms = [None] * len(elim)
    # x_e = -A^{-1} (c0 + B x_k): solve column by column
    rhs_cols = [[-eq[0] % p for eq in equations]]
    rhs_cols += [[-eq[1][k] % p for eq in equations] for k in keep]
    sols = []
    for col in rhs_cols:
        try:
            sols.append(solve_linear(F, A, col))
        except (Inconsistent, Underdetermined) as exc:
            raise RankDeficientBranch("eliminated block is singular") from exc
    for t in range(len(elim)):
        forms[t] = (sols[0][t], tuple(sols[1 + j][t] for j in range(len(keep))))
    return keep, forms


def substitute(form, n, keep, elim, elim_forms, p):
    """Rewrite a form in the kept variables after elimination."""
    c0, cs = form
    c0 = c0 + sum(cs[e] * f[0] for e, f in zip(elim, elim_forms))
    new = []
    for j, k in enumerate(keep):
        new.append((cs[k] + sum(cs[e] * f[1][j] for e, f in zip(elim, elim_forms))) % p)
    return (c0 % p, tuple(new))


def solve_forms(forms, p):
    """The unique common zero of n affine forms in n variables."""
    F = PrimeField(p)
    A = [list(f[1]) for f in forms]
    b = [-f[0] % p for f in forms]
    try:
        return tuple(solve_linear(F, A, b))
    except (Inconsistent, Underdetermined) as exc:
        raise RankDeficientBranch("branch linear system is singular") from exc


def _product_slot(builder, forms, xs, scale=1):
    slots = [builder.affine(f[0], f[1], xs) for f in forms]
    out = builder.prod(slots)
    if scale != 1:
        out = builder.mul(builder.const(scale), out)
    return out


def forms_program(entries, n, p):
    """Program whose outputs are the given products of forms (None = 0)."""
    b = SlpBuilder(n)
    xs = [b.input(i) for i in range(n)]
    outs = [b.const(0) if e is None else _product_slot(b, e, xs) for e in entries]
    return b.build(outs)


def blend(start_matrix, start_eqs, F: Slp, G: Slp | None, n, p, q, prime):
    """B(T, X): (1-T) a_i + T g_i, then the p-minors of (1-T) L + T F.

    ``start_matrix`` holds (scale, forms) per entry, or None for a zero entry.
    """
    b = SlpBuilder(n + 1)
    T = b.input(0)
    xs = [b.input(i + 1) for i in range(n)]
    one_t = b.sub(b.const(1), T)
    fo = b.embed(F, xs)
    go = b.embed(G, xs) if G is not None else []
    outs = []
    for eq, g in zip(start_eqs, go):
        a = _product_slot(b, eq, xs)
        outs.append(b.add(b.mul(one_t, a), b.mul(T, g)))
    U = []
    for i in range(p):
        row = []
        for j in range(q):
            entry = start_matrix[i][j]
            tf = b.mul(T, fo[i * q + j])
            if entry is None:
                row.append(tf)
            else:
                scale, forms = entry
                row.append(b.add(b.mul(one_t, _product_slot(b, forms, xs, scale % prime)), tf))
        U.append(row)
    for cols in combinations(range(q), p):
        outs.append(berkowitz_det(b, [[U[i][j] for j in cols] for i in range(p)]))
    return b.build(outs)


def target_program(F: Slp, G: Slp | None, p, q):
    """The target system (g_1..g_s, p-minors of F) in n inputs."""
    n = F.n_inputs
    b = SlpBuilder(n)
    xs = [b.input(i) for i in range(n)]
    fo = b.embed(F, xs)
    outs = list(b.embed(G, xs)) if G is not None else []
    for cols in combinations(range(q), p):
        outs.append(berkowitz_det(b, [[fo[i * q + j] for j in cols] for i in range(p)]))
    return b.build(outs)


def _random_lambda(rng, p, n):
    return tuple(random_elements(rng, p, n))


# ---------------------------------------------------------------------------
# column-degree start
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColumnStart:
    col_forms: tuple  # per column: product of delta_j forms
    eq_forms: tuple  # per side equation: product of gamma_i forms
    R0: ZeroDimParam
    B: Slp | None

    def entry(self, i, j):
        """(scale, forms) of L[i][j] = (j+1)^(i+1) * lambda_j (0-based i, j)."""
        return ((j + 1) ** (i + 1), self.col_forms[j])


def column_start_points(profile: DegreeProfile, col_forms, eq_forms, p):
    pts = []
    k = profile.n - profile.s
    for u in product(*[range(d) for d in profile.gdeg]):
        base = [eq_forms[i][u[i]] for i in range(profile.s)]
        for cols in combinations(range(profile.q), k):
            for v in product(*[range(profile.cdeg[j]) for j in cols]):
                eqs = base + [col_forms[j][vt] for j, vt in zip(cols, v)]
                pts.append(solve_forms(eqs, p))
    return pts


def build_column_start(profile: DegreeProfile, rng, p, F=None, G=None) -> ColumnStart:
    if p <= profile.q:
        raise ValueError("prime must exceed q")
    n = profile.n
    col_forms = tuple(random_product(rng, p, n, d) for d in profile.cdeg)
    eq_forms = tuple(random_product(rng, p, n, d) for d in profile.gdeg)
    pts = column_start_points(profile, col_forms, eq_forms, p)
    if len(set(pts)) != len(pts) or len(pts) != bounds(profile).c:
        raise CountMismatch("column start points are not distinct")
    R0 = from_points(pts, _random_lambda(rng, p, n), p)
    B = None
    if F is not None:
        L = [[((j + 1) ** (i + 1), col_forms[j]) for j in range(profile.q)] for i in range(profile.p)]
        B = blend(L, eq_forms, F, G, n, profile.p, profile.q, p)
    return ColumnStart(col_forms, eq_forms, R0, B)


def column_degree(F: Slp, G: Slp | None, profile: DegreeProfile, ctx: FieldCtx,
                  simple: bool = False, key=("column",), stats=None) -> ZeroDimParam:
    """Isolated (or simple) points of V_p(F) and V(G) via the column start."""
    bd = bounds(profile)
    ctx.check_prime_for(bd.e)
    target = target_program(F, G, profile.p, profile.q)
    last = None
    for attempt in range(ctx.retry_budget):
        rng = ctx.rng(*key, attempt)
        try:
            start = build_column_start(profile, rng, ctx.prime, F, G)
            inst = HomotopyInstance(start.B, start.R0, e=bd.e, c=bd.c)
            out = run(inst, simple)
            _check_output(out, target)
            return out
        except RetryableError as exc:
            last = exc
            log.debug("column attempt %d failed: %r", attempt, exc)
            if stats is not None:
                stats["retries"] = stats.get("retries", 0) + 1
    raise Exhausted(ctx.retry_budget, last)


def _check_output(out, target):
    from .zdp import residual
    from .errors import ResidualNonzero

    if any(residual(out, target)):
        raise ResidualNonzero("output does not cancel the target system")


# ---------------------------------------------------------------------------
# row-degree start
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RowForms:
    """Start matrix N: diagonal products, zeros, then a dense right block."""

    p: int
    q: int
    n: int
    diag: tuple  # p products
    right: tuple  # p x (q - p) products
    rdeg: tuple

    def entry(self, i, j):
        if j < self.p:
            return (1, self.diag[i]) if i == j else None
        return (1, self.right[i][j - self.p])

    def matrix(self):
        return [[self.entry(i, j) for j in range(self.q)] for i in range(self.p)]

    def substituted(self, keep, elim, elim_forms, prime):
        sub = lambda f: substitute(f, self.n, keep, elim, elim_forms, prime)  # noqa: E731
        diag = tuple(tuple(sub(f) for f in d) for d in self.diag)
        right = tuple(tuple(tuple(sub(f) for f in e) for e in row) for row in self.right)
        return RowForms(self.p, self.q, len(keep), diag, right, self.rdeg)


def random_row_forms(rng, p, q, n, rdeg, prime):
    diag = tuple(random_product(rng, prime, n, a) for a in rdeg)
    right = tuple(tuple(random_product(rng, prime, n, a) for _ in range(q - p)) for a in rdeg)
    return RowForms(p, q, n, diag, right, tuple(rdeg))


@dataclass(frozen=True)
class RowStart:
    N: RowForms
    eq_forms: tuple
    B: Slp | None


def build_row_start(profile: DegreeProfile, rng, p, F=None, G=None) -> RowStart:
    N = random_row_forms(rng, profile.p, profile.q, profile.n, profile.rdeg, p)
    eq_forms = tuple(random_product(rng, p, profile.n, d) for d in profile.gdeg)
    B = None
    if F is not None:
        B = blend(N.matrix(), eq_forms, F, G, profile.n, profile.p, profile.q, p)
    return RowStart(N, eq_forms, B)


def _lift_back(r: ZeroDimParam, n, keep, elim, elim_forms, lam):
    """Re-insert eliminated coordinates and switch to the global form lam."""
    order = keep + elim
    ext = extend_coordinates(r, list(elim_forms))
    # coordinates of ext follow ``order``; permute back to 0..n-1
    pos = {v: i for i, v in enumerate(order)}
    v = tuple(ext.v[pos[i]] for i in range(n))
    lam_ext = tuple(ext.lam[pos[i]] for i in range(n))
    permuted = ZeroDimParam(ext.w, v, lam_ext, ext.p)
    return change_lambda(permuted, lam)


def row_degree_diagonal(N: RowForms, ctx: FieldCtx, lam, key=("diag",), stats=None) -> ZeroDimParam:
    """Parametrization of V_p(N) for a start matrix of the row shape (s = 0)."""
    p, n = ctx.prime, N.n
    if n != N.q - N.p + 1:
        raise ValueError("row start needs n = q - p + 1")
    pieces = []
    for kappa in range(1, min(n - 1, N.p) + 1):
        elim = list(range(n - kappa, n))
        for rows in combinations(range(N.p), kappa):
            for r in product(*[range(N.rdeg[i]) for i in rows]):
                eqs = [N.diag[i][ri] for i, ri in zip(rows, r)]
                keep, forms = eliminate(eqs, n, elim, p)
                sub = N.substituted(keep, elim, forms, p)
                entries = [sub.right[i][j] for i in rows for j in range(N.q - N.p)]
                F = forms_program(entries, n - kappa, p)
                prof = DegreeProfile(kappa, N.q - N.p, 0, n - kappa,
                                     cdeg=[max(N.rdeg[i] for i in rows)] * (N.q - N.p),
                                     rdeg=[N.rdeg[i] for i in rows])
                subkey = key + ("k", kappa) + tuple(rows) + ("r",) + tuple(r)
                R = row_degree(F, None, prof, ctx, simple=True, key=subkey, stats=stats)
                pieces.append(_lift_back(R, n, keep, elim, forms, lam))
    if n <= N.p:
        pts = []
        for rows in combinations(range(N.p), n):
            for r in product(*[range(N.rdeg[i]) for i in rows]):
                pts.append(solve_forms([N.diag[i][ri] for i, ri in zip(rows, r)], p))
        if len(set(pts)) != len(pts):
            raise CountMismatch("diagonal points collide")
        pieces.append(from_points(pts, lam, p))
    try:
        out = crt_combine(pieces) if pieces else empty(n, lam, p)
    except NotCoprime as exc:
        raise CountMismatch("branches of the row start share points") from exc
    if out.degree != complete_sym(n, N.rdeg):
        raise CountMismatch(f"row start has {out.degree} points, expected {complete_sym(n, N.rdeg)}")
    return out


def row_start_param(start: RowStart, profile: DegreeProfile, ctx: FieldCtx, lam, key, stats=None):
    """R0 for the row start: one diagonal problem per choice u of side factors."""
    p, n, s = ctx.prime, profile.n, profile.s
    pieces = []
    elim = list(range(n - s, n))
    for u in product(*[range(d) for d in profile.gdeg]):
        if s:
            eqs = [start.eq_forms[i][u[i]] for i in range(s)]
            keep, forms = eliminate(eqs, n, elim, p)
            Nu = start.N.substituted(keep, elim, forms, p)
            sub_lam = tuple(random_elements(ctx.rng(*key, "lam", *u), p, n - s))
            R = row_degree_diagonal(Nu, ctx, sub_lam, key=key + ("u",) + u, stats=stats)
            pieces.append(_lift_back(R, n, keep, elim, forms, lam))
        else:
            pieces.append(row_degree_diagonal(start.N, ctx, lam, key=key + ("u",), stats=stats))
    try:
        R0 = crt_combine(pieces)
    except NotCoprime as exc:
        raise CountMismatch("side-equation branches share points") from exc
    if R0.degree != bounds(profile).cprime:
        raise CountMismatch("row start count differs from c'")
    return R0


def row_degree(F: Slp, G: Slp | None, profile: DegreeProfile, ctx: FieldCtx,
               simple: bool = False, key=("row",), stats=None) -> ZeroDimParam:
    """Isolated (or simple) points of V_p(F) and V(G) via the row start."""
    bd = bounds(profile)
    ctx.check_prime_for(bd.eprime)
    target = target_program(F, G, profile.p, profile.q)
    last = None
    for attempt in range(ctx.retry_budget):
        k = key + (attempt,)
        rng = ctx.rng(*k)
        try:
            start = build_row_start(profile, rng, ctx.prime, F, G)
            lam = _random_lambda(rng, ctx.prime, profile.n)
            R0 = row_start_param(start, profile, ctx, lam, k, stats)
            inst = HomotopyInstance(start.B, R0, e=bd.eprime, c=bd.cprime)
            out = run(inst, simple)
            _check_output(out, target)
            return out
        except RetryableError as exc:
            last = exc
            log.debug("row attempt %s failed: %r", k, exc)
            if stats is not None:
                stats["retries"] = stats.get("retries", 0) + 1
    raise Exhausted(ctx.retry_budget, last)
