"""Zero-dimensional parametrizations (w, v_1..v_n, lambda).

A parametrization encodes the finite set of points
``(v_1(t)/w'(t), ..., v_n(t)/w'(t))`` over the roots t of the monic
squarefree polynomial w, with ``sum lambda_i v_i = Y w' mod w``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import upoly
from .field_linalg import PrimeField
from .errors import LambdaMismatch, NotCoprime, NotSeparating, ZeroDivisor
from .rings import QuotientRing
from .slp import evaluate


@dataclass(frozen=True)
class ZeroDimParam:
    w: tuple
    v: tuple
    lam: tuple
    p: int

    def __post_init__(self):
        w = tuple(upoly.norm(self.w))
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "v", tuple(tuple(upoly.norm(vi)) for vi in self.v))
        object.__setattr__(self, "lam", tuple(x % self.p for x in self.lam))
        if len(self.v) != len(self.lam):
            raise ValueError("need one numerator per coordinate")
        check_invariants(self)

    @property
    def n(self) -> int:
        return len(self.lam)

    @property
    def degree(self) -> int:
        return len(self.w) - 1

    def __len__(self):
        return self.degree

    def rational_points(self):
        """Points of Z(self) with coordinates in F_p, sorted."""
        p = self.p
        dw = upoly.deriv(list(self.w), p)
        pts = []
        for t in upoly.rational_roots(list(self.w), p):
            c = pow(upoly.evaluate(dw, t, p), -1, p)
            pts.append(tuple(upoly.evaluate(list(vi), t, p) * c % p for vi in self.v))
        return sorted(pts)

    def coordinates(self):
        """(Q, [x_1..x_n]) with x_i = v_i / w' in Q = K[Y]/<w>."""
        Q = QuotientRing(self.p, self.w)
        dinv = Q.inv(Q.from_poly(upoly.deriv(list(self.w), self.p)))
        return Q, [Q.mul(Q.from_poly(list(vi)), dinv) for vi in self.v]

    def to_json(self):
        return {
            "lambda": list(self.lam),
            "w": list(self.w),
            "v": [list(vi) for vi in self.v],
            "count": self.degree,
        }


def check_invariants(r: ZeroDimParam):
    p = r.p
    w = list(r.w)
    if not w or w[-1] != 1:
        raise ValueError("w must be monic")
    d = len(w) - 1
    for vi in r.v:
        if len(vi) > d:
            raise ValueError("deg v_i must be below deg w")
    if d == 0:
        return
    dw = upoly.deriv(w, p)
    if len(upoly.gcd(w, dw, p)) > 1:
        raise ValueError("w must be squarefree")
    lhs = []
    for li, vi in zip(r.lam, r.v):
        lhs = upoly.add(lhs, upoly.scale(list(vi), li, p), p)
    rhs = upoly.rem(upoly.mul([0, 1], dw, p), w, p)
    if lhs != rhs:
        raise ValueError("lambda . v != Y w' mod w")


def empty(n: int, lam, p: int) -> ZeroDimParam:
    return ZeroDimParam((1,), tuple(() for _ in range(n)), tuple(lam), p)


def from_points(points, lam, p: int) -> ZeroDimParam:
    """Parametrization of a list of distinct points with coordinates in F_p."""
    points = [tuple(x % p for x in pt) for pt in points]
    n = len(lam)
    if not points:
        return empty(n, lam, p)
    if len(set(points)) != len(points):
        raise ValueError("points must be pairwise distinct")
    vals = [sum(l * x for l, x in zip(lam, pt)) % p for pt in points]
    if len(set(vals)) != len(vals):
        raise NotSeparating("two points share a lambda value")
    w = upoly.from_roots(vals, p)
    v = [[] for _ in range(n)]
    for j, (pt, t) in enumerate(zip(points, vals)):
        cof = upoly.quo(w, [-t % p, 1], p)
        for i in range(n):
            if pt[i]:
                v[i] = upoly.add(v[i], upoly.scale(cof, pt[i], p), p)
    return ZeroDimParam(tuple(w), tuple(tuple(x) for x in v), tuple(lam), p)


def residual(r: ZeroDimParam, system):
    """Outputs of ``system`` at the points of r, as polynomials mod w."""
    if r.degree == 0:
        return [[] for _ in system.outputs]
    Q, xs = r.coordinates()
    return [Q.to_poly(y) for y in evaluate(system, Q, xs)]


def is_solution(r: ZeroDimParam, system) -> bool:
    return all(not res for res in residual(r, system))


def restrict(r: ZeroDimParam, g) -> ZeroDimParam:
    """The part of r on the roots of g, where g is a monic factor of w."""
    p = r.p
    g = upoly.monic(upoly.norm(g), p)
    w = list(r.w)
    if len(g) <= 1:
        return empty(r.n, r.lam, p)
    if len(g) == len(w):
        return r
    s = upoly.exact_quo(w, g, p)
    sinv = upoly.inverse_mod(upoly.rem(s, g, p), g, p)
    v = [tuple(upoly.rem(upoly.mul(list(vi), sinv, p), g, p)) for vi in r.v]
    return ZeroDimParam(tuple(g), tuple(v), r.lam, p)


def split(r: ZeroDimParam, g):
    """Split r along d = gcd(w, g); returns [r] if d is trivial.

    Pieces are (d, v/(w/d) mod d) and (w/d, v/d mod w/d).
    """
    p = r.p
    w = list(r.w)
    d = upoly.gcd(w, upoly.norm(g), p)
    if len(d) <= 1 or len(d) == len(w):
        return [r]
    s = upoly.exact_quo(w, d, p)
    return [restrict(r, d), restrict(r, s)]


def crt_combine(rs) -> ZeroDimParam:
    """Disjoint union of parametrizations sharing the same lambda.

    With W = prod w_j, the numerators combine as
    V_i = sum_j v_ij prod_{k != j} w_k, which reduces to v_ij w_j'^{-1} W'
    modulo each w_j.
    """
    rs = list(rs)
    if not rs:
        raise ValueError("nothing to combine")
    lam, p = rs[0].lam, rs[0].p
    for r in rs[1:]:
        if r.lam != lam or r.p != p:
            raise LambdaMismatch("parametrizations use different linear forms")
    rs = [r for r in rs if r.degree > 0]
    if not rs:
        return empty(len(lam), lam, p)
    W = [1]
    V = [[] for _ in lam]
    for r in rs:
        wr = list(r.w)
        if len(upoly.gcd(W, wr, p)) > 1:
            raise NotCoprime("parametrizations share points")
        V = [upoly.add(upoly.mul(Vi, wr, p), upoly.mul(list(vi), W, p), p) for Vi, vi in zip(V, r.v)]
        W = upoly.mul(W, wr, p)
    return ZeroDimParam(tuple(W), tuple(tuple(x) for x in V), lam, p)


def extend_coordinates(r: ZeroDimParam, forms, lam_tail=None) -> ZeroDimParam:
    """Append coordinates given as affine forms in the existing ones.

    ``forms`` is a list of ``(c0, [c_1..c_n])`` meaning c0 + sum c_i x_i.
    The new coordinates get weight 0 in lambda unless ``lam_tail`` is given
    (then the result is re-parametrized for the extended form).
    """
    p = r.p
    w = list(r.w)
    dw = upoly.deriv(w, p)
    newv = list(r.v)
    for c0, cs in forms:
        acc = upoly.scale(dw, c0, p)
        for ci, vi in zip(cs, r.v):
            acc = upoly.add(acc, upoly.scale(list(vi), ci, p), p)
        newv.append(tuple(upoly.rem(acc, w, p)) if len(w) > 1 else ())
    out = ZeroDimParam(r.w, tuple(newv), tuple(r.lam) + (0,) * len(forms), p)
    if lam_tail is not None:
        out = change_lambda(out, tuple(r.lam) + tuple(lam_tail))
    return out


def change_lambda(r: ZeroDimParam, new_lam) -> ZeroDimParam:
    """Re-parametrize Z(r) with another linear form.

    With x_i in Q = K[Y]/<w> and L = new_lam(x), the new w is the
    characteristic polynomial of L (power sums Tr(L^k)), and
    v_i[k] = sum_{j>k} w_j Tr(x_i L^(j-k-1)).
    Raises NotSeparating if the new form takes a repeated value.
    """
    p = r.p
    new_lam = tuple(x % p for x in new_lam)
    if len(new_lam) != r.n:
        raise ValueError("wrong number of lambda coefficients")
    d = r.degree
    if d == 0:
        return empty(r.n, new_lam, p)
    if new_lam == r.lam:
        return r
    Q, xs = r.coordinates()
    L = Q.zero()
    for li, xi in zip(new_lam, xs):
        L = Q.add(L, Q.scale(xi, li))
    pows = [Q.one()]
    for _ in range(d):
        pows.append(Q.mul(pows[-1], L))
    F = PrimeField(p)
    ps = [Q.trace(pows[k]) for k in range(1, d + 1)]
    W = upoly.poly_from_power_sums(ps, d, F, p)
    if len(upoly.gcd(W, upoly.deriv(W, p), p)) > 1:
        raise NotSeparating("new linear form is not separating")
    V = []
    for xi in xs:
        tr = [Q.trace(Q.mul(xi, pows[t])) for t in range(d)]
        coeffs = []
        for k in range(d):
            coeffs.append(sum(W[j] * tr[j - k - 1] for j in range(k + 1, d + 1)) % p)
        V.append(tuple(upoly.norm(coeffs)))
    return ZeroDimParam(tuple(W), tuple(V), new_lam, p)


def same_points(a: ZeroDimParam, b: ZeroDimParam, rng=None) -> bool:
    """Whether two parametrizations describe the same point set."""
    if a.p != b.p or a.n != b.n or a.degree != b.degree:
        return False
    if a.degree == 0:
        return True
    rng = rng or random.Random(12345)
    for _ in range(8):
        lam = tuple(rng.randrange(a.p) for _ in range(a.n))
        try:
            ca = change_lambda(a, lam)
            cb = change_lambda(b, lam)
        except NotSeparating:
            continue
        return ca.w == cb.w and ca.v == cb.v
    raise NotSeparating("could not find a common separating form")


def dynamic(r: ZeroDimParam, fn, max_splits=None):
    """Run ``fn(piece)`` on r, splitting whenever it raises ZeroDivisor.

    Returns a list of ``(piece, result)`` whose pieces partition r.
    """
    out = []
    work = [r]
    splits = 0
    limit = r.degree if max_splits is None else max_splits
    while work:
        piece = work.pop()
        try:
            out.append((piece, fn(piece)))
        except ZeroDivisor as exc:
            pieces = split(piece, exc.factor)
            if len(pieces) == 1:
                raise
            splits += 1
            if splits > limit:
                raise RuntimeError("dynamic evaluation did not terminate")
            work.extend(pieces)
    return out
