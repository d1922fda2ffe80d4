"""Dense univariate polynomials and truncated power series over F_p.

A polynomial is a list of ints, lowest degree first, with no trailing
zeros; the zero polynomial is ``[]``.  Truncated series are plain lists of
length ``prec`` (the precision travels with the caller or the ring context).
"""
from __future__ import annotations

import random

from .errors import NoSolution, NotCoprime, ZeroDivisor, ZeroInverse

_KRONECKER_MIN = 24


def norm(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def const(c, p):
    c %= p
    return [c] if c else []


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % p
    return norm(out)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return norm(out)


def neg(a, p):
    return [-x % p for x in a]


def scale(a, c, p):
    c %= p
    if c == 0:
        return []
    return [x * c % p for x in a]


def _pack(a, nbytes):
    return int.from_bytes(b"".join(x.to_bytes(nbytes, "little") for x in a), "little")


def _kronecker(a, b, p):
    n = min(len(a), len(b))
    bits = 2 * p.bit_length() + n.bit_length() + 1
    nb = (bits + 7) // 8
    prod = _pack(a, nb) * _pack(b, nb)
    k = len(a) + len(b) - 1
    raw = prod.to_bytes(nb * k, "little")
    fb = int.from_bytes
    return [fb(raw[i * nb:(i + 1) * nb], "little") % p for i in range(k)]


def mul_raw(a, b, p):
    """Product without normalization (inputs may carry trailing zeros)."""
    if not a or not b:
        return []
    if min(len(a), len(b)) >= _KRONECKER_MIN:
        return _kronecker(a, b, p)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % p for c in out]


def mul(a, b, p):
    return norm(mul_raw(a, b, p))


def series_mul(a, b, prec, p):
    """Product truncated mod T^prec; inputs are lists of length <= prec."""
    if not a or not b:
        return [0] * prec
    a = a[:prec]
    b = b[:prec]
    if min(len(a), len(b)) >= _KRONECKER_MIN:
        out = _kronecker(a, b, p)[:prec]
    else:
        out = [0] * min(prec, len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                lim = min(len(b), prec - i)
                for j in range(lim):
                    out[i + j] += x * b[j]
        out = [c % p for c in out]
    if len(out) < prec:
        out.extend([0] * (prec - len(out)))
    return out


def series_inv(a, prec, p):
    """1/a mod T^prec by Newton iteration; a[0] must be invertible."""
    if not a or a[0] % p == 0:
        raise ZeroInverse("series with zero constant term")
    x = [pow(a[0], -1, p)]
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        ax = series_mul(a[:k], x, k, p)
        e = [(-c) % p for c in ax]
        e[0] = (e[0] + 2) % p
        x = series_mul(x, e, k, p)
    return (x + [0] * prec)[:prec]


def monic(a, p):
    if not a:
        return []
    c = pow(a[-1], -1, p)
    return [x * c % p for x in a]


def poly_divmod(a, b, p):
    if not b:
        raise ZeroInverse("division by the zero polynomial")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], norm(a)
    c = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        t = a[i] * c % p
        if t:
            q[i - db] = t
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - t * b[j]) % p
    return norm(q), norm(a[:db])


def rem(a, b, p):
    return poly_divmod(a, b, p)[1]


def quo(a, b, p):
    return poly_divmod(a, b, p)[0]


def exact_quo(a, b, p):
    q, r = poly_divmod(a, b, p)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def gcd(a, b, p):
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = norm(a), norm(b)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a, b, p):
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = norm(a), norm(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return [], [], []
    c = pow(r0[-1], -1, p)
    return scale(r0, c, p), scale(s0, c, p), scale(t0, c, p)


def inverse_mod(a, w, p):
    """Inverse of a modulo w; raises ZeroDivisor carrying gcd(a, w)."""
    a = rem(a, w, p)
    if not a:
        raise ZeroInverse("inverse of 0 modulo w")
    g, s, _ = xgcd(a, w, p)
    if len(g) > 1:
        raise ZeroDivisor(g)
    return rem(s, w, p)


def deriv(a, p):
    return norm([i * a[i] % p for i in range(1, len(a))])


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def powmod(a, k, w, p):
    result = [1] if len(w) > 1 else []
    base = rem(a, w, p)
    while k:
        if k & 1:
            result = rem(mul(result, base, p), w, p)
        k >>= 1
        if k:
            base = rem(mul(base, base, p), w, p)
    return result


def squarefree_part(a, p):
    """Monic squarefree part (assumes p exceeds deg a)."""
    a = norm(a)
    if not a:
        raise ValueError("squarefree part of the zero polynomial")
    g = gcd(a, deriv(a, p), p)
    return monic(quo(a, g, p), p)


def from_roots(roots, p):
    w = [1]
    for r in roots:
        w = mul(w, [-r % p, 1], p)
    return w


def interpolate(xs, ys, p):
    """Lagrange interpolation through distinct nodes."""
    w = from_roots(xs, p)
    dw = deriv(w, p)
    out = []
    for x, y in zip(xs, ys):
        if y % p == 0:
            continue
        basis = quo(w, [-x % p, 1], p)
        out = add(out, scale(basis, y * pow(evaluate(dw, x, p), -1, p), p), p)
    return out


def crt_pair(w_a, r_a, w_b, r_b, p):
    """Combine residues modulo coprime moduli.

    ``r_a`` and ``r_b`` are lists of residues (one per coordinate).  Returns
    ``(w_a*w_b, [r_1, ..., r_k])`` with each r_i reducing to the given
    residues modulo w_a and w_b.
    """
    if len(w_b) <= 1:
        if not w_b:
            raise NotCoprime("modulus 0")
        return list(w_a), [rem(r, w_a, p) for r in r_a]
    if len(w_a) <= 1:
        if not w_a:
            raise NotCoprime("modulus 0")
        return list(w_b), [rem(r, w_b, p) for r in r_b]
    g, s, _ = xgcd(w_a, w_b, p)
    if g != [1]:
        raise NotCoprime(f"moduli share a factor of degree {len(g) - 1}")
    w = mul(w_a, w_b, p)
    inv_a = rem(s, w_b, p)
    out = []
    for ra, rb in zip(r_a, r_b):
        ra = rem(ra, w_a, p)
        t = rem(mul(sub(rb, ra, p), inv_a, p), w_b, p)
        out.append(add(ra, mul(w_a, t, p), p))
    return w, out


def rational_reconstruct(f, e, p, prec=None):
    """Pade-type reconstruction of a truncated series.

    Finds ``num/den`` with deg num <= e, deg den <= e and
    den*f = num mod T^prec, den(0) = 1.  Extended Euclid on (T^prec, f),
    stopped at the first remainder of degree <= e.  Raises NoSolution.
    """
    prec = len(f) if prec is None else prec
    if prec < 2 * e:
        raise ValueError("precision must be at least 2e")
    r0 = [0] * prec + [1]
    r1 = norm(f[:prec])
    t0, t1 = [], [1]
    while r1 and len(r1) - 1 > e:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    num, den = r1, t1
    if not num:
        return [], [1]
    if len(den) - 1 > e or den[0] % p == 0:
        raise NoSolution("no rational function of the requested degrees")
    g = gcd(num, den, p)
    if len(g) > 1:
        num, den = quo(num, g, p), quo(den, g, p)
    c = pow(den[0], -1, p)
    return scale(num, c, p), scale(den, c, p)


def power_sums(w, count, p):
    """Power sums P_0..P_{count-1} of the roots of a monic w (with multiplicity)."""
    d = len(w) - 1
    a = [w[d - i] for i in range(d + 1)]  # a[i] = coefficient of Y^(d-i)
    P = [d % p]
    for k in range(1, count):
        acc = 0
        if k <= d:
            acc = -k * a[k]
            for i in range(1, k):
                acc -= a[i] * P[k - i]
        else:
            for i in range(1, d + 1):
                acc -= a[i] * P[k - i]
        P.append(acc % p)
    return P[:count]


def poly_from_power_sums(ps, d, K, p):
    """Monic degree-d polynomial (coefficients in ring K) from P_1..P_d.

    Newton identities k*e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) P_i; needs p > d.
    """
    if p <= d:
        raise ValueError("characteristic must exceed the degree")
    e = [K.one()]
    for k in range(1, d + 1):
        acc = K.zero()
        for i in range(1, k + 1):
            term = K.mul(e[k - i], ps[i - 1])
            acc = K.add(acc, term) if i % 2 == 1 else K.sub(acc, term)
        e.append(K.mul(acc, K.from_int(pow(k, -1, p))))
    coeffs = [None] * (d + 1)
    for k in range(d + 1):
        coeffs[d - k] = e[k] if k % 2 == 0 else K.neg(e[k])
    return coeffs


def rational_roots(w, p, rng=None):
    """Sorted list of the distinct roots of w lying in F_p."""
    w = monic(norm(w), p)
    if len(w) <= 1:
        return []
    rng = rng or random.Random(0)
    g = gcd(w, sub(powmod([0, 1], p, w, p), [0, 1], p), p)
    roots = []
    stack = [g]
    while stack:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            roots.append(-h[0] % p)
            continue
        while True:
            a = rng.randrange(p)
            t = sub(powmod([a, 1], (p - 1) // 2, h, p), [1], p)
            f = gcd(h, t, p)
            if 1 < len(f) < len(h):
                stack.append(f)
                stack.append(quo(h, f, p))
                break
    return sorted(roots)


def split_rational(w, p, rng=None):
    """(roots in F_p, cofactor of w without those linear factors)."""
    w = monic(norm(w), p)
    roots = rational_roots(w, p, rng)
    rest = quo(w, from_roots(roots, p), p) if roots else w
    return roots, rest
