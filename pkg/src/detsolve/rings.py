"""Ring contexts used to evaluate straight-line programs.

Every context exposes ``zero``, ``one``, ``from_int``, ``add``, ``sub``,
``neg``, ``mul`` and ``is_zero``; contexts that are fields (or behave as
fields under dynamic evaluation) also expose ``inv``.
"""
from __future__ import annotations

from . import upoly
from .errors import ZeroInverse
from .field_linalg import PrimeField


class QuotientRing:
    """K[Y]/<w> for a monic w of degree d >= 1; elements are d-tuples."""

    def __init__(self, p: int, w):
        w = upoly.norm(w)
        if len(w) < 2 or w[-1] != 1:
            raise ValueError("modulus must be monic of positive degree")
        self.p = p
        self.w = tuple(w)
        self.d = len(w) - 1
        self._zero = (0,) * self.d
        self._psums = None

    def __repr__(self):
        return f"QuotientRing(p={self.p}, deg={self.d})"

    def zero(self):
        return self._zero

    def one(self):
        return self.from_int(1)

    def from_int(self, c):
        return (c % self.p,) + (0,) * (self.d - 1)

    def gen(self):
        if self.d == 1:
            return (-self.w[0] % self.p,)
        return (0, 1) + (0,) * (self.d - 2)

    def reduce(self, a):
        """Reduce a coefficient list of any length modulo w."""
        d, p, w = self.d, self.p, self.w
        r = list(a)
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i] % p
            if c:
                base = i - d
                for j in range(d):
                    r[base + j] -= c * w[j]
        r = [x % p for x in r[:d]]
        if len(r) < d:
            r.extend([0] * (d - len(r)))
        return tuple(r)

    def from_poly(self, a):
        return self.reduce(a)

    def to_poly(self, a):
        return upoly.norm(a)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        return self.reduce(upoly.mul_raw(a, b, self.p))

    def scale(self, a, c):
        p = self.p
        return tuple(x * c % p for x in a)

    def is_zero(self, a):
        return not any(a)

    def inv(self, a):
        if not any(a):
            raise ZeroInverse("inverse of 0 in K[Y]/<w>")
        return self.reduce(upoly.inverse_mod(upoly.norm(a), list(self.w), self.p))

    def power_sums(self):
        if self._psums is None:
            self._psums = upoly.power_sums(list(self.w), self.d, self.p)
        return self._psums

    def trace(self, a):
        """Trace of multiplication by a (sum of a over the roots of w)."""
        ps = self.power_sums()
        return sum(x * y for x, y in zip(a, ps)) % self.p


class SeriesRing:
    """Truncated power series base[[T]] mod T^prec; elements are tuples."""

    def __init__(self, base, prec: int):
        if prec < 1:
            raise ValueError("precision must be positive")
        self.base = base
        self.prec = prec
        self._zero = (base.zero(),) * prec
        self._fp = isinstance(base, PrimeField)
        self._quot = isinstance(base, QuotientRing)

    def __repr__(self):
        return f"SeriesRing({self.base!r}, prec={self.prec})"

    def zero(self):
        return self._zero

    def one(self):
        return self.from_int(1)

    def from_int(self, c):
        return self.embed(self.base.from_int(c))

    def embed(self, c):
        return (c,) + self._zero[1:]

    def gen(self):
        """The series variable T."""
        if self.prec == 1:
            return self._zero
        return (self.base.zero(), self.base.one()) + self._zero[2:]

    def from_coeffs(self, coeffs):
        c = tuple(coeffs[: self.prec])
        return c + self._zero[len(c):]

    def add(self, a, b):
        add = self.base.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.base.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.base.neg
        return tuple(neg(x) for x in a)

    def is_zero(self, a):
        z = self.base.is_zero
        return all(z(x) for x in a)

    def mul(self, a, b):
        if self._fp:
            return tuple(upoly.series_mul(_trim(a), _trim(b), self.prec, self.base.p))
        if self._quot:
            return self._mul_quotient(a, b)
        base = self.base
        N = self.prec
        out = list(self._zero)
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j in range(N - i):
                y = b[j]
                if not base.is_zero(y):
                    out[i + j] = base.add(out[i + j], base.mul(x, y))
        return tuple(out)

    def _mul_quotient(self, a, b):
        # pack the bivariate product through Kronecker substitution in Y
        Q = self.base
        d, N, p = Q.d, self.prec, Q.p
        S = 2 * d - 1
        la = _last_nonzero(a, Q)
        lb = _last_nonzero(b, Q)
        if la < 0 or lb < 0:
            return self._zero
        fa = []
        for t in range(la + 1):
            fa.extend(a[t])
            fa.extend([0] * (S - d))
        fb = []
        for t in range(lb + 1):
            fb.extend(b[t])
            fb.extend([0] * (S - d))
        prod = upoly.mul_raw(fa, fb, p)
        out = []
        for t in range(N):
            chunk = prod[t * S:(t + 1) * S]
            if not chunk:
                out.append(Q.zero())
            else:
                out.append(Q.reduce(chunk))
        return tuple(out)

    def scale(self, a, c):
        sc = self.base.scale
        return tuple(sc(x, c) for x in a)

    def inv(self, a):
        base = self.base
        if base.is_zero(a[0]):
            raise ZeroInverse("series with zero constant term")
        x = self.embed(base.inv(a[0]))
        two = self.from_int(2)
        k = 1
        while k < self.prec:
            k = min(2 * k, self.prec)
            x = self.mul(x, self.sub(two, self.mul(a, x)))
        return x

    def truncate(self, a, prec):
        return tuple(a[:prec]) + self._zero[prec:]

    def coeff(self, a, i):
        return a[i]


def _trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return list(a[:n])


def _last_nonzero(a, base):
    for i in range(len(a) - 1, -1, -1):
        if not base.is_zero(a[i]):
            return i
    return -1


class MatrixAlgebra:
    """s x s matrices over a base context; constants embed as scalars."""

    def __init__(self, base, s: int):
        self.base = base
        self.s = s
        z = base.zero()
        self._zero = tuple((z,) * s for _ in range(s))

    def zero(self):
        return self._zero

    def one(self):
        return self.from_int(1)

    def scalar(self, c):
        z = self.base.zero()
        return tuple(tuple(c if i == j else z for j in range(self.s)) for i in range(self.s))

    def from_int(self, c):
        return self.scalar(self.base.from_int(c))

    def from_rows(self, rows):
        return tuple(tuple(r) for r in rows)

    def add(self, a, b):
        add = self.base.add
        return tuple(tuple(add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def sub(self, a, b):
        sub = self.base.sub
        return tuple(tuple(sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def neg(self, a):
        neg = self.base.neg
        return tuple(tuple(neg(x) for x in r) for r in a)

    def is_zero(self, a):
        z = self.base.is_zero
        return all(z(x) for r in a for x in r)

    def mul(self, a, b):
        base = self.base
        add, mul, isz = base.add, base.mul, base.is_zero
        s = self.s
        out = []
        for row in a:
            acc = list(self._zero[0])
            for k in range(s):
                x = row[k]
                if isz(x):
                    continue
                bk = b[k]
                for j in range(s):
                    y = bk[j]
                    if not isz(y):
                        acc[j] = add(acc[j], mul(x, y))
            out.append(tuple(acc))
        return tuple(out)


class DualNumbers:
    """base[eps_1..eps_n]/(eps_i eps_j): values paired with a gradient."""

    def __init__(self, base, n: int):
        self.base = base
        self.n = n

    def zero(self):
        return (self.base.zero(), (self.base.zero(),) * self.n)

    def one(self):
        return self.from_int(1)

    def from_int(self, c):
        return (self.base.from_int(c), (self.base.zero(),) * self.n)

    def variable(self, value, i):
        z = self.base.zero()
        return (value, tuple(self.base.one() if j == i else z for j in range(self.n)))

    def add(self, a, b):
        add = self.base.add
        return (add(a[0], b[0]), tuple(add(x, y) for x, y in zip(a[1], b[1])))

    def sub(self, a, b):
        sub = self.base.sub
        return (sub(a[0], b[0]), tuple(sub(x, y) for x, y in zip(a[1], b[1])))

    def neg(self, a):
        neg = self.base.neg
        return (neg(a[0]), tuple(neg(x) for x in a[1]))

    def mul(self, a, b):
        B = self.base
        return (
            B.mul(a[0], b[0]),
            tuple(B.add(B.mul(a[0], y), B.mul(x, b[0])) for x, y in zip(a[1], b[1])),
        )

    def is_zero(self, a):
        return self.base.is_zero(a[0]) and all(self.base.is_zero(x) for x in a[1])
