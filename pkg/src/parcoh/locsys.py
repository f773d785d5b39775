"""Local systems on the punctured sphere and their parabolic cohomology.

A local system is a tuple g = (g_1, ..., g_r) of invertible matrices with
g_1 * ... * g_r = 1.  Cocycles are elements (v_1, ..., v_r) of V^r, stored
flat as one row vector of length r * dim.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .exactla import (Mat, Solver, image_basis, kernel_basis, span_rows,
                      vec_is_zero, vec_mat)
from .exactnum import CycNum

__all__ = [
    "GTuple", "tuple_make", "h_space", "e_space", "parabolic_space",
    "ParabolicSpace", "expected_dim", "invariants_space", "in_h_space",
    "tuple_to_json", "tuple_from_json", "split_vec", "join_vec",
]


class GTuple:
    """Validated tuple of invertible square matrices with product one."""

    __slots__ = ("mats", "invs", "r", "dim", "n")

    def __init__(self, mats, invs=None, check=True):
        mats = list(mats)
        if len(mats) < 3:
            raise ValueError("need at least 3 matrices, got %d" % len(mats))
        dim = mats[0].rows
        for k, m in enumerate(mats):
            if m.rows != dim or m.cols != dim:
                raise ValueError("entry %d has shape %dx%d, expected %dx%d"
                                 % (k + 1, m.rows, m.cols, dim, dim))
        n = 1
        for m in mats:
            n = _lcm(n, m.n)
        mats = [m.at(n) for m in mats]
        if invs is None:
            invs = []
            for k, m in enumerate(mats):
                try:
                    invs.append(m.inv())
                except ZeroDivisionError:
                    raise ValueError("entry %d is singular" % (k + 1)) from None
        else:
            invs = [m.at(n) for m in invs]
        if check:
            prod = Mat.identity(dim, n)
            for m in mats:
                prod = prod * m
            if not prod.is_identity():
                raise ValueError("product of the tuple is not the identity: %s" % prod.pretty())
        self.mats, self.invs = tuple(mats), tuple(invs)
        self.r, self.dim, self.n = len(mats), dim, n

    def __getitem__(self, i):
        return self.mats[i]

    def __len__(self):
        return self.r

    def __eq__(self, other):
        return isinstance(other, GTuple) and self.mats == other.mats

    def __hash__(self):
        return hash(self.mats)

    def conjugate(self, h, hinv=None):
        """The tuple (h g_i h^-1)_i."""
        hinv = h.inv() if hinv is None else hinv
        return GTuple([h * m * hinv for m in self.mats],
                      [h * m * hinv for m in self.invs], check=False)

    def __repr__(self):
        return "GTuple(%s)" % ", ".join(m.pretty() for m in self.mats)


def _lcm(a, b):
    x, y = a, b
    while y:
        x, y = y, x % y
    return a // x * b


def tuple_make(mats) -> GTuple:
    return GTuple(mats)


def tuple_to_json(g: GTuple):
    return {"n": g.n, "dim": g.dim, "mats": [m.to_json() for m in g.mats]}


def tuple_from_json(obj) -> GTuple:
    if not isinstance(obj, dict) or "mats" not in obj:
        raise ValueError("tuple object needs key 'mats'")
    mats = []
    for k, m in enumerate(obj["mats"]):
        try:
            mats.append(Mat.from_json(m))
        except (ValueError, KeyError, TypeError) as exc:
            raise ValueError("mats[%d]: %s" % (k, exc)) from None
    g = GTuple(mats)
    if "dim" in obj and int(obj["dim"]) != g.dim:
        raise ValueError("declared dim %s but matrices are %dx%d" % (obj["dim"], g.dim, g.dim))
    return g


def split_vec(v, r, dim):
    return [tuple(v[k * dim:(k + 1) * dim]) for k in range(r)]


def join_vec(parts):
    out = []
    for p in parts:
        out.extend(p)
    return tuple(out)


def _minus_one(m):
    return m - Mat.identity(m.rows, m.n)


def _tails(g: GTuple):
    """P_i = g_{i+1} ... g_r for each i (P_r = 1)."""
    tails = [Mat.identity(g.dim, g.n)]
    for m in reversed(g.mats[1:]):
        tails.append(m * tails[-1])
    return list(reversed(tails))


def in_h_space(g: GTuple, v) -> bool:
    """Check the relation and the per-entry image condition directly."""
    parts = split_vec(v, g.r, g.dim)
    acc = None
    for part, tail in zip(parts, _tails(g)):
        t = vec_mat(part, tail)
        acc = t if acc is None else tuple(x + y for x, y in zip(acc, t))
    if not vec_is_zero(acc):
        return False
    for part, m in zip(parts, g.mats):
        img = image_basis(_minus_one(m))
        if not img:
            if not vec_is_zero(part):
                return False
        elif Solver(img, g.dim, g.n).coords(part) is None:
            return False
    return True


def h_space(g: GTuple) -> List[tuple]:
    """Echelon basis of H_g inside V^r."""
    dim, r, n = g.dim, g.r, g.n
    zero = CycNum.zero(n)
    blocks = []   # (slot, image vector)
    for i, m in enumerate(g.mats):
        for b in image_basis(_minus_one(m)):
            blocks.append((i, b))
    if not blocks:
        return []
    tails = _tails(g)
    rel = Mat([vec_mat(b, tails[i]) for i, b in blocks], n)
    coeffs = kernel_basis(rel)
    out = []
    for c in coeffs:
        v = [zero] * (r * dim)
        for ck, (i, b) in zip(c, blocks):
            if ck.is_zero():
                continue
            for j, x in enumerate(b):
                v[i * dim + j] = v[i * dim + j] + ck * x
        out.append(tuple(v))
    return span_rows(out, n)


def _coboundary_rows(g: GTuple):
    dm = [_minus_one(m) for m in g.mats]
    rows = []
    for k in range(g.dim):
        row = []
        for m in dm:
            row.extend(m.e[k])
        rows.append(tuple(row))
    return rows


def e_space(g: GTuple) -> List[tuple]:
    """Echelon basis of the coboundaries (v(g_1-1), ..., v(g_r-1))."""
    return span_rows(_coboundary_rows(g), g.n)


def invariants_space(g: GTuple) -> List[tuple]:
    """Echelon basis of the common fixed space of all g_i."""
    return kernel_basis(Mat(_coboundary_rows(g), g.n))


def expected_dim(g: GTuple):
    """Return (value of the dimension formula, whether it applies)."""
    kers = sum(len(kernel_basis(_minus_one(m))) for m in g.mats)
    value = (g.r - 2) * g.dim - kers
    return value, not invariants_space(g)


@dataclass
class ParabolicSpace:
    tuple: GTuple
    hBasis: List[tuple]
    eBasis: List[tuple]
    wReps: List[tuple]
    _solver: Solver = field(repr=False, default=None)
    _hsolver: Solver = field(repr=False, default=None)

    @property
    def dim_h(self):
        return len(self.hBasis)

    @property
    def dim_e(self):
        return len(self.eBasis)

    @property
    def dim_w(self):
        return len(self.wReps)

    def contains(self, v) -> bool:
        return self._solver.coords(v) is not None

    def wCoords(self, v):
        """Coordinates of the class of v in W_g; raises if v is not in H_g."""
        c = self._solver.coords(v)
        if c is None:
            raise ValueError("vector is not in H_g")
        return c[self.dim_e:]

    def hCoords(self, v, strict=True):
        """Coordinates of v in hBasis; None (or an error if strict) outside H_g."""
        if self._hsolver is None:
            self._hsolver = Solver(self.hBasis, self.tuple.r * self.tuple.dim, self.tuple.n)
        c = self._hsolver.coords(v)
        if c is None and strict:
            raise ValueError("vector is not in H_g")
        return c

    def eCoords(self, v):
        c = self._solver.coords(v)
        if c is None:
            raise ValueError("vector is not in H_g")
        return c[:self.dim_e]

    def with_reps(self, reps) -> "ParabolicSpace":
        """Same space with user-chosen representatives of a W_g basis."""
        return parabolic_space(self.tuple, reps, _h=self.hBasis, _e=self.eBasis)

    def report(self):
        expected, applies = expected_dim(self.tuple)
        return {
            "r": self.tuple.r, "dim": self.tuple.dim, "n": self.tuple.n,
            "dim_H": self.dim_h, "dim_E": self.dim_e, "dim_W": self.dim_w,
            "formula": expected, "formula_applies": applies,
            "H_basis": [[x.to_json() for x in v] for v in self.hBasis],
            "E_basis": [[x.to_json() for x in v] for v in self.eBasis],
            "W_reps": [[x.to_json() for x in v] for v in self.wReps],
        }


def parabolic_space(g: GTuple, reps=None, _h=None, _e=None) -> ParabolicSpace:
    n = g.n
    hb = h_space(g) if _h is None else _h
    eb = e_space(g) if _e is None else _e
    length = g.r * g.dim
    if reps is None:
        # extend the E basis by H basis vectors in echelon order
        chosen = list(eb)
        wreps = []
        for v in hb:
            trial = chosen + [v]
            if len(span_rows(trial, n)) == len(trial):
                chosen = trial
                wreps.append(v)
    else:
        wreps = [tuple(x if isinstance(x, CycNum) else CycNum.from_rational(x) for x in v)
                 for v in reps]
        hs = Solver(hb, length, n)
        for k, v in enumerate(wreps):
            if len(v) != length:
                raise ValueError("representative %d has length %d, expected %d" % (k, len(v), length))
            if hs.coords(v) is None:
                raise ValueError("representative %d is not in H_g" % k)
        if len(eb) + len(wreps) != len(hb):
            raise ValueError("need %d representatives, got %d" % (len(hb) - len(eb), len(wreps)))
        if len(span_rows(list(eb) + wreps, n)) != len(hb):
            raise ValueError("representatives are dependent modulo E_g")
    solver = Solver(list(eb) + list(wreps), length, n)
    return ParabolicSpace(g, hb, eb, wreps, solver)
