"""Dense exact matrices over a cyclotomic field.

Vectors are rows and matrices act on the right, v -> v * M.  Every basis
returned here is the set of rows of a reduced row echelon form, so results
are reproducible entry for entry.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactnum import CycNum, as_cyc, cyc_embed

__all__ = [
    "Mat", "rref", "kernel_basis", "image_basis", "rank", "solve",
    "Rank2Class", "classify_rank2", "vec_mat", "vec_add", "vec_sub",
    "vec_scale", "vec_is_zero", "zero_vec", "Solver", "span_rows",
]


def _common(entries):
    n = 1
    for x in entries:
        if x.n != n:
            m = x.n
            a, b = n, m
            while b:
                a, b = b, a % b
            n = n // a * m
    return n


def _lift(x, n):
    if not isinstance(x, CycNum):
        x = as_cyc(x)
    return x if x.n == n else cyc_embed(x, n)


class Mat:
    """Immutable rows x cols matrix of CycNum sharing one conductor."""

    __slots__ = ("rows", "cols", "n", "e")

    def __init__(self, entries, n=None):
        entries = [list(r) for r in entries]
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        if any(len(r) != cols for r in entries):
            raise ValueError("ragged matrix rows")
        flat = [as_cyc(x) if not isinstance(x, CycNum) else x for r in entries for x in r]
        if n is None:
            n = _common(flat)
        else:
            n = n if not flat else _common(flat + [CycNum.zero(n)])
        self.rows, self.cols, self.n = rows, cols, n
        self.e = tuple(tuple(_lift(x, n) for x in r) for r in entries)

    @classmethod
    def identity(cls, dim, n=1):
        one, zero = CycNum.one(n), CycNum.zero(n)
        return cls([[one if i == j else zero for j in range(dim)] for i in range(dim)], n)

    @classmethod
    def zeros(cls, rows, cols, n=1):
        zero = CycNum.zero(n)
        m = cls.__new__(cls)
        m.rows, m.cols, m.n = rows, cols, n
        m.e = tuple(tuple(zero for _ in range(cols)) for _ in range(rows))
        return m

    @classmethod
    def scalar(cls, c, dim):
        c = as_cyc(c) if not isinstance(c, CycNum) else c
        zero = CycNum.zero(c.n)
        return cls([[c if i == j else zero for j in range(dim)] for i in range(dim)], c.n)

    @classmethod
    def diag(cls, values):
        vals = [as_cyc(v) if not isinstance(v, CycNum) else v for v in values]
        n = _common(vals)
        zero = CycNum.zero(n)
        return cls([[vals[i] if i == j else zero for j in range(len(vals))]
                    for i in range(len(vals))], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.e[i][j]

    def row(self, i):
        return self.e[i]

    def at(self, n):
        if n == self.n:
            return self
        return Mat(self.e, n)

    def is_square(self):
        return self.rows == self.cols

    # -- arithmetic -------------------------------------------------------
    def _align(self, other):
        if self.n == other.n:
            return self, other
        n = _common([CycNum.zero(self.n), CycNum.zero(other.n)])
        return self.at(n), other.at(n)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch %dx%d + %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        a, b = self._align(other)
        return Mat([[x + y for x, y in zip(r, s)] for r, s in zip(a.e, b.e)], a.n)

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch %dx%d - %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        a, b = self._align(other)
        return Mat([[x - y for x, y in zip(r, s)] for r, s in zip(a.e, b.e)], a.n)

    def __neg__(self):
        return Mat([[-x for x in r] for r in self.e], self.n)

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ValueError("shape mismatch %dx%d * %dx%d" % (self.rows, self.cols, other.rows, other.cols))
            a, b = self._align(other)
            cols = list(zip(*b.e)) if b.rows else [() for _ in range(b.cols)]
            zero = CycNum.zero(a.n)
            out = []
            for r in a.e:
                out.append([_dot(r, c, zero) for c in cols])
            return Mat(out, a.n) if out else Mat.zeros(0, b.cols, a.n)
        c = other if isinstance(other, CycNum) else as_cyc(other)
        return Mat([[x * c for x in r] for r in self.e])

    def __rmul__(self, other):
        c = other if isinstance(other, CycNum) else as_cyc(other)
        return Mat([[c * x for x in r] for r in self.e])

    def __pow__(self, k):
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return self.inv() ** (-k)
        result = Mat.identity(self.rows, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def transpose(self):
        return Mat([list(c) for c in zip(*self.e)], self.n)

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        t = CycNum.zero(self.n)
        for i in range(self.rows):
            t = t + self.e[i][i]
        return t

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.e]
        size = self.rows
        d = CycNum.one(self.n)
        for c in range(size):
            piv = next((r for r in range(c, size) if not m[r][c].is_zero()), None)
            if piv is None:
                return CycNum.zero(self.n)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            d = d * m[c][c]
            inv = m[c][c].inverse()
            for r in range(c + 1, size):
                f = m[r][c]
                if not f.is_zero():
                    f = f * inv
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return d

    def inv(self):
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        R, piv, T = rref(self)
        if len(piv) < self.rows:
            raise ZeroDivisionError("matrix is singular")
        return T

    def is_identity(self):
        for i, r in enumerate(self.e):
            for j, x in enumerate(r):
                if (i == j and not x.is_one()) or (i != j and not x.is_zero()):
                    return False
        return True

    def is_scalar(self):
        if not self.is_square() or not self.rows:
            return False
        c = self.e[0][0]
        return all((x == c) if i == j else x.is_zero()
                   for i, r in enumerate(self.e) for j, x in enumerate(r))

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(x == y for r, s in zip(self.e, other.e) for x, y in zip(r, s))

    def __hash__(self):
        return hash(tuple(hash(x) for r in self.e for x in r))

    def key(self):
        return (self.rows, self.cols, self.n) + tuple(x.key() for r in self.e for x in r)

    def __repr__(self):
        return "Mat(%s)" % self.pretty()

    def pretty(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.e) + "]"

    # -- serialization ----------------------------------------------------
    def to_json(self):
        return {"n": self.n, "rows": self.rows, "cols": self.cols,
                "e": [[x.to_json() for x in r] for r in self.e]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "e" not in obj:
            raise ValueError("matrix object needs key 'e'")
        rows = [[CycNum.from_json(x) for x in r] for r in obj["e"]]
        n = int(obj.get("n", 1))
        m = cls(rows, n) if rows else cls.zeros(int(obj.get("rows", 0)), int(obj.get("cols", 0)), n)
        if "rows" in obj and m.rows != int(obj["rows"]):
            raise ValueError("declared rows %s but found %d" % (obj["rows"], m.rows))
        if "cols" in obj and m.cols != int(obj["cols"]):
            raise ValueError("declared cols %s but found %d" % (obj["cols"], m.cols))
        return m


def _dot(r, c, zero):
    acc = zero
    for x, y in zip(r, c):
        if not x.is_zero() and not y.is_zero():
            acc = acc + x * y
    return acc


# -- vectors ------------------------------------------------------------------

def zero_vec(length, n=1):
    z = CycNum.zero(n)
    return tuple(z for _ in range(length))


def vec_mat(v, M):
    """Row vector times matrix."""
    if len(v) != M.rows:
        raise ValueError("vector of length %d times %dx%d matrix" % (len(v), M.rows, M.cols))
    zero = CycNum.zero(M.n)
    out = []
    for j in range(M.cols):
        acc = zero
        for i, x in enumerate(v):
            if not x.is_zero():
                y = M.e[i][j]
                if not y.is_zero():
                    acc = acc + x * y
        out.append(acc)
    return tuple(out)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    return tuple(c * x for x in a)


def vec_is_zero(a):
    return all(x.is_zero() for x in a)


# -- elimination ----------------------------------------------------------------

def _rref_rows(rows, ncols, n, track=True):
    m = [list(r) for r in rows]
    nrows = len(m)
    if track:
        one, zero = CycNum.one(n), CycNum.zero(n)
        t = [[one if i == j else zero for j in range(nrows)] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((k for k in range(r, nrows) if not m[k][c].is_zero()), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            if track:
                t[r], t[piv] = t[piv], t[r]
        inv = m[r][c].inverse()
        if not inv.is_one():
            m[r] = [x * inv for x in m[r]]
            if track:
                t[r] = [x * inv for x in t[r]]
        for k in range(nrows):
            if k != r:
                f = m[k][c]
                if not f.is_zero():
                    m[k] = [x - f * y for x, y in zip(m[k], m[r])]
                    if track:
                        t[k] = [x - f * y for x, y in zip(t[k], t[r])]
        pivots.append(c)
        r += 1
    return m, pivots, (t if track else None)


def rref(A: Mat):
    """Return (R, pivots, T) with T * A = R in reduced row echelon form."""
    m, pivots, t = _rref_rows(A.e, A.cols, A.n)
    R = Mat(m, A.n) if A.rows else Mat.zeros(0, A.cols, A.n)
    T = Mat(t, A.n) if A.rows else Mat.zeros(0, 0, A.n)
    return R, pivots, T


def rank(A: Mat) -> int:
    return len(_rref_rows(A.e, A.cols, A.n, track=False)[1])


def image_basis(A: Mat):
    """Echelon basis of the row space {v * A}."""
    m, pivots, _ = _rref_rows(A.e, A.cols, A.n, track=False)
    return [tuple(m[i]) for i in range(len(pivots))]


def kernel_basis(A: Mat):
    """Echelon basis of the left kernel {v : v * A = 0}."""
    m, pivots, t = _rref_rows(A.e, A.cols, A.n)
    null = [t[i] for i in range(len(pivots), A.rows)]
    if not null:
        return []
    return image_basis(Mat(null, A.n))


def span_rows(vectors, n):
    """Echelon basis of the span of the given row vectors."""
    if not vectors:
        return []
    return image_basis(Mat(vectors, n))


class Solver:
    """Coordinates with respect to a fixed list of independent row vectors."""

    def __init__(self, basis, length, n):
        self.basis = [tuple(b) for b in basis]
        self.length, self.n = length, n
        if self.basis:
            m, pivots, t = _rref_rows(self.basis, length, n)
            if len(pivots) != len(self.basis):
                raise ValueError("basis vectors are linearly dependent")
            self._R, self._pivots, self._T = m, pivots, t
        else:
            self._R, self._pivots, self._T = [], [], []

    def coords(self, v):
        """Coefficients c with sum c_k basis_k = v, or None if v is outside the span."""
        if not self.basis:
            return () if vec_is_zero(v) else None
        y = [v[p] for p in self._pivots]
        rest = list(v)
        for yk, row in zip(y, self._R):
            if not yk.is_zero():
                rest = [x - yk * r for x, r in zip(rest, row)]
        if not all(x.is_zero() for x in rest):
            return None
        zero = CycNum.zero(self.n)
        out = []
        for j in range(len(self.basis)):
            acc = zero
            for i, yk in enumerate(y):
                if not yk.is_zero():
                    acc = acc + yk * self._T[i][j]
            out.append(acc)
        return tuple(out)

    def contains(self, v):
        return self.coords(v) is not None


def solve(A: Mat, b) -> Optional[tuple]:
    """Some x with x * A = b (free variables zero), or None."""
    if len(b) != A.cols:
        raise ValueError("right-hand side has length %d, expected %d" % (len(b), A.cols))
    b = [x if isinstance(x, CycNum) else as_cyc(x) for x in b]
    n = _common([CycNum.zero(A.n)] + b)
    A = A.at(n)
    m, pivots, t = _rref_rows(A.e, A.cols, n)
    b = [_lift(x, n) for x in b]
    y = [b[p] for p in pivots]
    rest = list(b)
    for yk, row in zip(y, m):
        if not yk.is_zero():
            rest = [x - yk * r for x, r in zip(rest, row)]
    if not all(x.is_zero() for x in rest):
        return None
    zero = CycNum.zero(n)
    out = []
    for j in range(A.rows):
        acc = zero
        for i, yk in enumerate(y):
            if not yk.is_zero():
                acc = acc + yk * t[i][j]
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class Rank2Class:
    kind: str  # identity | transvection | homology | other
    eigenvalue: Optional[CycNum] = None

    def __str__(self):
        if self.kind == "homology":
            return "homology(%s)" % self.eigenvalue
        return self.kind


def classify_rank2(M: Mat) -> Rank2Class:
    if M.rows != 2 or M.cols != 2:
        raise ValueError("classify_rank2 needs a 2x2 matrix, got %dx%d" % (M.rows, M.cols))
    det = M.det()
    if det.is_zero():
        raise ValueError("matrix is not invertible")
    ident = Mat.identity(2, M.n)
    if M.is_identity():
        return Rank2Class("identity")
    N = M - ident
    if all(x.is_zero() for r in (N * N).e for x in r):
        return Rank2Class("transvection")
    lam = det
    if lam != 1:
        P = N * (M - Mat.scalar(lam, 2))
        if all(x.is_zero() for r in P.e for x in r):
            return Rank2Class("homology", lam)
    return Rank2Class("other")
