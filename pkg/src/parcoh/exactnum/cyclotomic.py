"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) as integer
numerators over one positive common denominator.  Mixed conductors are
merged to their lcm before any operation.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "CycNum", "cyc_make", "cyc_embed", "cyclotomic_poly", "euler_phi",
    "min_poly_Q", "denominator_support", "zeta", "omega", "sqrt_m3",
    "sqrt_m7", "as_cyc",
]


def _lcm(a, b):
    return a // gcd(a, b) * b


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n):
    if n < 1:
        raise ValueError("conductor must be positive")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_exact_div(num, den):
    # integer polynomials, low-to-high, den monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("polynomial division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_exact_div(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n):
    # row k = coefficients of z^k reduced mod Phi_n, for 0 <= k < 2n
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(2 * n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(d):
                cur[j] -= top * phi[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _trace_vector(n):
    # trace of z^k over Q, used for a conductor-independent hash
    d = euler_phi(n)
    out = []
    for k in range(d):
        g = gcd(k, n)
        m = n // g
        out.append(_mobius(m) * d // euler_phi(m))
    return tuple(out)


def _mobius(m):
    res, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    if m > 1:
        res = -res
    return res


def _reduce_long(n, coeffs):
    """Reduce an integer coefficient list of any length modulo Phi_n."""
    d = euler_phi(n)
    if len(coeffs) <= d:
        return list(coeffs) + [0] * (d - len(coeffs))
    table = _power_table(n)
    out = list(coeffs[:d])
    for k in range(d, len(coeffs)):
        c = coeffs[k]
        if c:
            row = table[k % n]
            for j in range(d):
                out[j] += c * row[j]
    return out


class CycNum:
    """An element of Q(zeta_n); immutable."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n, num, den=1):
        # trusted constructor: num already reduced to length phi(n)
        g = gcd(den, *num) if num else den
        if g == 0:
            g = 1
        if den < 0:
            g = -g
        if g != 1:
            num = tuple(x // g for x in num)
            den //= g
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)
        if not any(num):
            object.__setattr__(self, "den", 1)

    def __setattr__(self, key, value):
        raise AttributeError("CycNum is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_rational(cls, q, n=1):
        q = Fraction(q)
        num = [0] * euler_phi(n)
        num[0] = q.numerator
        return cls(n, num, q.denominator)

    @classmethod
    def zero(cls, n=1):
        return cls(n, [0] * euler_phi(n), 1)

    @classmethod
    def one(cls, n=1):
        return cls.from_rational(1, n)

    # -- views ------------------------------------------------------------
    @property
    def coeffs(self):
        return tuple(Fraction(a, self.den) for a in self.num)

    def is_zero(self):
        return not any(self.num)

    def is_one(self):
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("%s is not rational" % self)
        return Fraction(self.num[0], self.den)

    # -- conductor handling -----------------------------------------------
    def embed(self, n):
        return cyc_embed(self, n)

    def _pair(self, other):
        if not isinstance(other, CycNum):
            other = as_cyc(other)
        if self.n == other.n:
            return self, other
        m = _lcm(self.n, other.n)
        return cyc_embed(self, m), cyc_embed(other, m)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        if a.den == b.den:
            return CycNum(a.n, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CycNum(a.n, [x * b.den + y * a.den for x, y in zip(a.num, b.num)],
                      a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.n, [-x for x in self.num], self.den)

    def __sub__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        if a.den == b.den:
            return CycNum(a.n, [x - y for x, y in zip(a.num, b.num)], a.den)
        return CycNum(a.n, [x * b.den - y * a.den for x, y in zip(a.num, b.num)],
                      a.den * b.den)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        an, bn = a.num, b.num
        d = len(an)
        if b.is_rational():
            c = bn[0]
            return CycNum(a.n, [x * c for x in an], a.den * b.den)
        if a.is_rational():
            c = an[0]
            return CycNum(a.n, [x * c for x in bn], a.den * b.den)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        prod[i + j] += x * y
        return CycNum(a.n, _reduce_long(a.n, prod), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.n)
        if self.is_rational():
            q = 1 / Fraction(self.num[0], self.den)
            return CycNum.from_rational(q, self.n)
        # product of the non-trivial Galois conjugates over the rational norm
        prod = CycNum.one(self.n)
        for k in _units(self.n)[1:]:
            prod = prod * self.galois(k)
        norm = (self * prod).to_fraction()
        return prod * CycNum.from_rational(1 / norm)

    def inverse_euclid(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.n)
        inv = _poly_inverse_mod(self.coeffs, cyclotomic_poly(self.n))
        return _from_fractions(self.n, inv)

    def galois(self, k):
        """Image under the automorphism zeta_n -> zeta_n^k, gcd(k, n) = 1."""
        if gcd(k, self.n) != 1:
            raise ValueError("%d is not a unit mod %d" % (k, self.n))
        long = [0] * self.n
        for i, c in enumerate(self.num):
            if c:
                long[(i * k) % self.n] += c
        return CycNum(self.n, _reduce_long(self.n, long), self.den)

    def __truediv__(self, other):
        if not isinstance(other, CycNum):
            try:
                other = as_cyc(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_cyc(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, CycNum):
            try:
                other = as_cyc(other)
            except TypeError:
                return NotImplemented
        if self.n == other.n:
            return self.den == other.den and self.num == other.num
        a, b = self._pair(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        # normalized trace does not depend on the conductor used
        t = _trace_vector(self.n)
        tr = Fraction(sum(a * b for a, b in zip(self.num, t)),
                      self.den * euler_phi(self.n))
        return hash(tr)

    def key(self):
        return (self.n, self.den) + self.num

    def __repr__(self):
        return "CycNum(%d, %s)" % (self.n, str(self))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mon = "z%d" % self.n if k == 1 else "z%d^%d" % (self.n, k)
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append("-" + mon)
                else:
                    terms.append("%s*%s" % (c, mon))
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    # -- serialization ----------------------------------------------------
    def to_json(self):
        return {"n": self.n, "c": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "n" not in obj or "c" not in obj:
            raise ValueError("CycNum object needs keys 'n' and 'c': %r" % (obj,))
        return cyc_make(int(obj["n"]), [Fraction(c) for c in obj["c"]])


def _from_fractions(n, coeffs):
    den = 1
    for c in coeffs:
        den = _lcm(den, c.denominator)
    return CycNum(n, [int(c * den) for c in coeffs], den)


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
        a.pop()
        _poly_trim(a)
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _poly_trim(out)


def _poly_inverse_mod(a, m):
    """Inverse of a modulo m over Q by the extended Euclidean algorithm."""
    r0, r1 = [Fraction(x) for x in m], _poly_trim([Fraction(x) for x in a])
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    d = len(m) - 1
    inv = [x / c for x in s1] + [Fraction(0)] * d
    return inv[:d]


def as_cyc(x, n=1):
    if isinstance(x, CycNum):
        return x if x.n == n or n == 1 else cyc_embed(x, _lcm(x.n, n))
    if isinstance(x, (int, Fraction)):
        return CycNum.from_rational(x, n)
    if isinstance(x, str):
        return CycNum.from_rational(Fraction(x), n)
    raise TypeError("cannot convert %r to CycNum" % (x,))


def cyc_make(n, coeffs):
    """Element sum(coeffs[k] * zeta_n^k), reduced modulo Phi_n.

    Exponents are read modulo n, so any coefficient list of length <= n is
    accepted; longer lists are rejected.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("conductor must be a positive integer, got %r" % (n,))
    if len(coeffs) > n:
        raise ValueError("at most n=%d coefficients allowed, got %d" % (n, len(coeffs)))
    fr = [Fraction(c) for c in coeffs]
    den = 1
    for c in fr:
        den = _lcm(den, c.denominator)
    ints = [int(c * den) for c in fr]
    return CycNum(n, _reduce_long(n, ints), den)


def cyc_embed(a, n):
    """Re-express a in Q(zeta_n) via zeta_m = zeta_n^(n/m)."""
    if n % a.n:
        raise ValueError("conductor %d does not divide %d" % (a.n, n))
    if n == a.n:
        return a
    step = n // a.n
    long = [0] * n
    for k, c in enumerate(a.num):
        if c:
            long[(k * step) % n] += c
    return CycNum(n, _reduce_long(n, long), a.den)


def zeta(n, k=1):
    coeffs = [0] * n
    coeffs[k % n] = 1
    return cyc_make(n, coeffs)


def omega():
    """Primitive cube root of unity zeta_3 = (-1 + sqrt(-3))/2."""
    return zeta(3)


def sqrt_m3():
    return 2 * omega() + 1


def sqrt_m7():
    """Quadratic Gauss sum over zeta_7; squares to -7."""
    coeffs = [0] * 7
    for k in range(1, 7):
        coeffs[k] = 1 if pow(k, 3, 7) == 1 else -1
    return cyc_make(7, coeffs)


def min_poly_Q(a):
    """Monic minimal polynomial of a over Q, coefficients low to high."""
    d = euler_phi(a.n)
    basis = []  # echelon rows: (pivot, row, combination)
    power = CycNum.one(a.n)
    for k in range(d + 1):
        vec = list(power.coeffs)
        comb = [Fraction(0)] * (k + 1)
        comb[k] = Fraction(1)
        for piv, row, rc in basis:
            c = vec[piv]
            if c:
                vec = [x - c * y for x, y in zip(vec, row)]
                for i, y in enumerate(rc):
                    comb[i] -= c * y
        nz = next((i for i, x in enumerate(vec) if x), None)
        if nz is None:
            lead = comb[k]
            return tuple(c / lead for c in comb)
        c = vec[nz]
        basis.append((nz, [x / c for x in vec], [x / c for x in comb]))
        power = power * a
    raise ArithmeticError("no dependence found among powers")  # unreachable


@lru_cache(maxsize=None)
def _units(n):
    return tuple(k for k in range(1, max(n, 2)) if gcd(k, n) == 1)


def _prime_factors(m):
    out, p = set(), 2
    while p * p <= m:
        while m % p == 0:
            out.add(p)
            m //= p
        p += 1
    if m > 1:
        out.add(m)
    return out


def denominator_support(a):
    return _prime_factors(a.den)


def _startup_check():
    if sqrt_m3() * sqrt_m3() != -3 or sqrt_m7() * sqrt_m7() != -7:
        raise AssertionError("square root constructions are inconsistent")


_startup_check()
