"""Residue fields of Q(zeta_n): factoring Phi_n mod p and reducing elements.

Polynomials over F_p are plain lists of ints, lowest degree first, with no
trailing zeros (the zero polynomial is []).
"""
from __future__ import annotations

import random

from .cyclotomic import CycNum, cyclotomic_poly

__all__ = [
    "FqElem", "factor_cyclotomic_mod_p", "residue", "multiplicative_order",
    "is_irreducible_mod_p", "poly_mul_mod_p",
]

DEFAULT_SEED = 20031


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _norm(a, p):
    return _trim([x % p for x in a])


def _add(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def _sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def poly_mul_mod_p(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _norm(out, p)


def _divmod(a, b, p):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] = (a[k + j] - c * y) % p
        _trim(a)
    return _trim(q), a


def _mod(a, b, p):
    return _divmod(a, b, p)[1]


def _monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _gcd(a, b, p):
    while b:
        a, b = b, _mod(a, b, p)
    return _monic(a, p)


def _powmod(a, e, m, p):
    result = [1]
    base = _mod(a, m, p)
    while e:
        if e & 1:
            result = _mod(poly_mul_mod_p(result, base, p), m, p)
        base = _mod(poly_mul_mod_p(base, base, p), m, p)
        e >>= 1
    return result


def multiplicative_order(a, n):
    if n == 1:
        return 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
        if k > n:
            raise ValueError("%d is not a unit mod %d" % (a, n))
    return k


def _split_equal_degree(f, d, p, rng):
    """Cantor-Zassenhaus splitting of f, a product of degree-d irreducibles."""
    if len(f) - 1 == d:
        return [f]
    deg = len(f) - 1
    while True:
        a = _trim([rng.randrange(p) for _ in range(deg)])
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, cur = list(a), list(a)
            for _ in range(d - 1):
                cur = _mod(poly_mul_mod_p(cur, cur, p), f, p)
                t = _add(t, cur, p)
            g = _gcd(f, t, p)
        else:
            e = (p ** d - 1) // 2
            g = _gcd(f, _sub(_powmod(a, e, f, p), [1], p), p)
        if 0 < len(g) - 1 < deg:
            h = _monic(_divmod(f, g, p)[0], p)
            return (_split_equal_degree(g, d, p, rng)
                    + _split_equal_degree(h, d, p, rng))


def factor_cyclotomic_mod_p(n, p, seed=DEFAULT_SEED):
    """Monic irreducible factors of Phi_n over F_p, sorted by coefficients."""
    if n % p == 0:
        raise ValueError("p=%d divides the conductor %d" % (p, n))
    f = _norm(list(cyclotomic_poly(n)), p)
    d = multiplicative_order(p, n)
    rng = random.Random(seed)
    # distinct-degree step: every factor of Phi_n has degree ord_n(p)
    xq = _powmod([0, 1], p ** d, f, p)
    if _mod(_sub(xq, [0, 1], p), f, p):
        raise ArithmeticError("Phi_%d mod %d is not a product of degree-%d factors" % (n, p, d))
    factors = _split_equal_degree(f, d, p, rng)
    return sorted(tuple(g) for g in factors)


def is_irreducible_mod_p(f, p):
    """Rabin-style test: no common factor with x^(p^e) - x for e < deg f."""
    f = _monic(_norm(list(f), p), p)
    deg = len(f) - 1
    if deg < 1:
        return False
    if _mod(_sub(_powmod([0, 1], p ** deg, f, p), [0, 1], p), f, p):
        return False
    for e in range(1, deg):
        if deg % e:
            continue
        g = _gcd(f, _sub(_powmod([0, 1], p ** e, f, p), [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


class FqElem:
    """Element of F_p[x]/(modulus)."""

    __slots__ = ("p", "modulus", "coeffs")

    def __init__(self, p, modulus, coeffs):
        modulus = tuple(modulus)
        red = _mod(_norm(list(coeffs), p), list(modulus), p)
        red = red + [0] * (len(modulus) - 1 - len(red))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(red))

    def __setattr__(self, key, value):
        raise AttributeError("FqElem is immutable")

    def _same(self, other):
        if isinstance(other, int):
            return FqElem(self.p, self.modulus, [other])
        if self.p != other.p or self.modulus != other.modulus:
            raise ValueError("elements of different residue fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        return FqElem(self.p, self.modulus, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same(other)
        return FqElem(self.p, self.modulus, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return FqElem(self.p, self.modulus, [-a for a in self.coeffs])

    def __mul__(self, other):
        other = self._same(other)
        prod = poly_mul_mod_p(_trim(list(self.coeffs)), _trim(list(other.coeffs)), self.p)
        return FqElem(self.p, self.modulus, prod)

    __rmul__ = __mul__

    def __pow__(self, e):
        q = self.p ** (len(self.modulus) - 1)
        if e < 0:
            if self.is_zero():
                raise ZeroDivisionError("inverse of zero in residue field")
            e %= q - 1
        res = _powmod(_trim(list(self.coeffs)), e, list(self.modulus), self.p)
        return FqElem(self.p, self.modulus, res)

    def inverse(self):
        return self ** -1

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = FqElem(self.p, self.modulus, [other])
        if not isinstance(other, FqElem):
            return NotImplemented
        return (self.p, self.modulus, self.coeffs) == (other.p, other.modulus, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.modulus, self.coeffs))

    def __repr__(self):
        return "FqElem(p=%d, %s)" % (self.p, list(self.coeffs))

    def to_json(self):
        return {"p": self.p, "mod": list(self.modulus), "c": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["p"]), [int(x) for x in obj["mod"]], [int(x) for x in obj["c"]])


def residue(a: CycNum, p: int, factor) -> FqElem:
    """Image of a under zeta_n -> x mod (p, factor)."""
    if a.den % p == 0:
        raise ValueError("denominator %d of %s is divisible by %d" % (a.den, a, p))
    factor = list(factor)
    if _mod(_norm(list(cyclotomic_poly(a.n)), p), factor, p):
        raise ValueError("factor %s does not divide Phi_%d mod %d" % (factor, a.n, p))
    dinv = pow(a.den, -1, p)
    return FqElem(p, factor, [c * dinv for c in a.num])
