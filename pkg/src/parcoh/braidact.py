"""Braid words, the Hurwitz action on tuples, and the cocycle maps Phi and Psi.

Everything acts from the right and composes left to right: the map of a
word w * w' is the map of w followed by the map of w' at the moved tuple.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Tuple

from .exactla import Mat, vec_mat
from .exactnum import CycNum
from .locsys import GTuple, ParabolicSpace, parabolic_space, split_vec, join_vec

__all__ = [
    "BraidWord", "braid_parse", "tuple_act", "phi_gen", "phi_word", "psi",
    "monodromy", "CohMap", "word_from_letters", "act_letter_indices",
    "tuple_act_indices", "monodromy_map",
]

_TOKEN = re.compile(r"^s(\d+)(\^-1|\^\+?1)?$")


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        for i, s in self.letters:
            if not 1 <= i <= self.strands - 1:
                raise ValueError("generator s%d out of range for %d strands" % (i, self.strands))
            if s not in (1, -1):
                raise ValueError("letter sign must be +1 or -1")
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    def __mul__(self, other):
        if self.strands != other.strands:
            raise ValueError("strand mismatch %d vs %d" % (self.strands, other.strands))
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self):
        return BraidWord(self.strands, tuple((i, -s) for i, s in reversed(self.letters)))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.strands, self.letters * k)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join("s%d" % i if s == 1 else "s%d^-1" % i for i, s in self.letters)


def _free_reduce(letters):
    out = []
    for a in letters:
        if out and out[-1][0] == a[0] and out[-1][1] == -a[1]:
            out.pop()
        else:
            out.append(tuple(a))
    return tuple(out)


def word_from_letters(strands, letters) -> BraidWord:
    return BraidWord(strands, tuple((int(i), int(s)) for i, s in letters))


def braid_parse(text: str, strands: int) -> BraidWord:
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError("malformed braid token %r (expected s<k> or s<k>^-1)" % tok)
        i = int(m.group(1))
        if not 1 <= i <= strands - 1:
            raise ValueError("generator s%d out of range for %d strands" % (i, strands))
        letters.append((i, -1 if m.group(2) == "^-1" else 1))
    return BraidWord(strands, tuple(letters))


# -- tuple action -----------------------------------------------------------------

def _act_letter(mats, invs, i, s):
    """Move (mats, invs) by one letter; i is 0-based."""
    a, b = mats[i], mats[i + 1]
    ai, bi = invs[i], invs[i + 1]
    mats, invs = list(mats), list(invs)
    if s == 1:
        mats[i], mats[i + 1] = b, bi * a * b
        invs[i], invs[i + 1] = bi, bi * ai * b
    else:
        mats[i], mats[i + 1] = a * b * ai, a
        invs[i], invs[i + 1] = a * bi * ai, ai
    return mats, invs


def _check_strands(g, w):
    if w.strands != g.r:
        raise ValueError("braid on %d strands applied to a %d-tuple" % (w.strands, g.r))


def tuple_act(g: GTuple, w: BraidWord) -> GTuple:
    _check_strands(g, w)
    mats, invs = list(g.mats), list(g.invs)
    for i, s in w.letters:
        mats, invs = _act_letter(mats, invs, i - 1, s)
    return GTuple(mats, invs, check=False)


def act_letter_indices(mul, inv, t, i, s):
    """Index-level version of one letter on a tuple of group indices."""
    t = list(t)
    a, b = t[i], t[i + 1]
    if s == 1:
        t[i], t[i + 1] = b, mul[mul[inv[b]][a]][b]
    else:
        t[i], t[i + 1] = mul[mul[a][b]][inv[a]], a
    return tuple(t)


def tuple_act_indices(mul, inv, t, w: BraidWord):
    for i, s in w.letters:
        t = act_letter_indices(mul, inv, t, i - 1, s)
    return t


# -- cocycle maps ----------------------------------------------------------------

def _phi_vec(mats, invs, i, s, parts, c=None):
    """Image of a cocycle under one letter, given the tuple before the move.

    c may carry g_{i+1}^-1 g_i g_{i+1} when the caller already knows it.
    """
    parts = list(parts)
    vi, vj = parts[i], parts[i + 1]
    a, b = mats[i], mats[i + 1]
    if s == 1:
        if c is None:
            c = invs[i + 1] * a * b
        t = vec_mat(vj, c)
        u = vec_mat(vi, b)
        parts[i] = vj
        parts[i + 1] = tuple(x - y + z for x, y, z in zip(vj, t, u))
    else:
        # inverse letter: solved from the forward formula at the moved tuple
        t = vec_mat(vi, b)
        w = tuple(x - y + z for x, y, z in zip(t, vi, vj))
        parts[i] = vec_mat(w, invs[i])
        parts[i + 1] = vi
    return parts


@dataclass
class CohMap:
    """Linear map H_source -> H_target, with its induced map on W.

    Row convention: row k of hMatrix is the image of source.hBasis[k] in
    target.hBasis coordinates; row k of wMatrix is the image of the k-th
    W basis class in target W coordinates.
    """
    source: ParabolicSpace
    target: ParabolicSpace
    hMatrix: Mat
    wMatrix: Mat

    def then(self, other: "CohMap") -> "CohMap":
        if other.source.tuple != self.target.tuple:
            raise ValueError("maps do not compose: target and source tuples differ")
        return CohMap(self.source, other.target,
                      _mat_mul(self.hMatrix, other.hMatrix),
                      _mat_mul(self.wMatrix, other.wMatrix))

    def apply(self, v):
        """Image of a vector of H_source, as a vector of V^r."""
        c = self.source.hCoords(v)
        img = vec_mat(c, self.hMatrix) if c else ()
        return _combine(img, self.target.hBasis, self.target.tuple)


def _mat_mul(a, b):
    if a.rows == 0 or b.cols == 0 or a.cols == 0:
        zero = Mat.zeros(a.rows, b.cols, max(a.n, b.n))
        return zero
    return a * b


def _combine(coeffs, basis, g):
    zero = CycNum.zero(g.n)
    out = [zero] * (g.r * g.dim)
    for c, b in zip(coeffs, basis):
        if not c.is_zero():
            out = [x + c * y for x, y in zip(out, b)]
    return tuple(out)


def _build_map(src: ParabolicSpace, tgt: ParabolicSpace, images, what) -> CohMap:
    """Assemble a CohMap from the images of src.hBasis, checking membership."""
    n = tgt.tuple.n
    hrows = []
    for k, v in enumerate(images):
        c = tgt.hCoords(v, strict=False)
        if c is None:
            raise ArithmeticError("%s: image of H basis vector %d leaves the target H space" % (what, k))
        hrows.append(c)
    H = Mat(hrows, n) if hrows else Mat.zeros(0, tgt.dim_h, n)

    def image_of(v):
        return _combine(src.hCoords(v), images, tgt.tuple)

    for k, e in enumerate(src.eBasis):
        if any(not x.is_zero() for x in tgt.wCoords(image_of(e))):
            raise ArithmeticError("%s: coboundary %d does not map into E of the target" % (what, k))
    wrows = [tgt.wCoords(image_of(v)) for v in src.wReps]
    W = Mat(wrows, n) if wrows else Mat.zeros(0, tgt.dim_w, n)
    if W.rows and W.det().is_zero():
        raise ArithmeticError("%s: induced map on W is not invertible" % what)
    return CohMap(src, tgt, H, W)


def _track(g: GTuple, w: BraidWord, vectors, group=None):
    """Push cocycles along the word; returns (moved tuple, images).

    With a FiniteMatrixGroup the tuple is moved through its tables, which
    is much cheaper than multiplying matrices.
    """
    parts = [split_vec(v, g.r, g.dim) for v in vectors]
    if group is None:
        mats, invs = list(g.mats), list(g.invs)
        for i, s in w.letters:
            new_mats, new_invs = _act_letter(mats, invs, i - 1, s)
            c = new_mats[i] if s == 1 else None
            parts = [_phi_vec(mats, invs, i - 1, s, p, c) for p in parts]
            mats, invs = new_mats, new_invs
        return GTuple(mats, invs, check=False), [join_vec(p) for p in parts]
    els, ginv = group.elements, group.inv
    t = tuple(group.index_of(m) for m in g.mats)
    for i, s in w.letters:
        a, b = t[i - 1], t[i]
        mats = {i - 1: els[a], i: els[b]}
        invs = {i - 1: els[ginv[a]], i: els[ginv[b]]}
        t = act_letter_indices(group.mul, ginv, t, i - 1, s)
        c = els[t[i]] if s == 1 else None
        parts = [_phi_vec(mats, invs, i - 1, s, p, c) for p in parts]
    moved = GTuple([els[x] for x in t], [els[ginv[x]] for x in t], check=False)
    return moved, [join_vec(p) for p in parts]


def _space(g, space):
    return parabolic_space(g) if space is None else space


def phi_word(g: GTuple, w: BraidWord, source: ParabolicSpace = None,
             target: ParabolicSpace = None) -> CohMap:
    """Phi(g, w): H_g -> H_{g^w}, composed letter by letter."""
    _check_strands(g, w)
    src = _space(g, source)
    moved, images = _track(src.tuple, w, src.hBasis)
    if target is not None and target.tuple != moved:
        raise ValueError("target space does not belong to the moved tuple")
    tgt = parabolic_space(moved) if target is None else target
    return _build_map(src, tgt, images, "Phi(%s)" % (w or "1"))


def phi_gen(g: GTuple, i: int, sign: int, source: ParabolicSpace = None) -> CohMap:
    return phi_word(g, BraidWord(g.r, ((i, sign),)), source)


def psi(g: GTuple, h: Mat, source: ParabolicSpace = None,
        target: ParabolicSpace = None, hinv: Mat = None) -> CohMap:
    """Psi(g, h): H_{(h g_i h^-1)} -> H_g, v -> v h."""
    if h.rows != g.dim or h.cols != g.dim:
        raise ValueError("conjugator has shape %dx%d, expected %dx%d" % (h.rows, h.cols, g.dim, g.dim))
    hinv = h.inv() if hinv is None else hinv
    conj = g.conjugate(h, hinv)
    if source is not None:
        if source.tuple != conj:
            raise ValueError("source space is not the space of (h g_i h^-1)")
        src = source
    else:
        src = parabolic_space(conj)
    tgt = _space(g, target)
    images = [join_vec(vec_mat(p, h) for p in split_vec(v, g.r, g.dim)) for v in src.hBasis]
    return _build_map(src, tgt, images, "Psi")


def monodromy_map(space: ParabolicSpace, w: BraidWord, h: Mat = None, group=None,
                  what="move") -> CohMap:
    """Phi(g, w) followed by Psi(g, h), as an endomorphism of H_g.

    Requires g^w = (h g_i h^-1)_i.
    """
    g = space.tuple
    _check_strands(g, w)
    if h is None:
        h = Mat.identity(g.dim, g.n)
    moved, images = _track(g, w, space.hBasis, group)
    hinv = h.inv()
    if moved != g.conjugate(h, hinv):
        raise ValueError("%s: g^w is not (h g_i h^-1)_i; wrong conjugator or word" % what)
    images = [join_vec(vec_mat(p, h) for p in split_vec(v, g.r, g.dim)) for v in images]
    return _build_map(space, space, images, what)


def monodromy(g: GTuple, moves, space: ParabolicSpace = None, group=None) -> List[Mat]:
    """W-matrices of Phi(g, w_j) followed by Psi(g, h_j) for each move."""
    sp = _space(g, space)
    return [monodromy_map(sp, w, h, group, "move %d" % (k + 1)).wMatrix
            for k, (w, h) in enumerate(moves)]
