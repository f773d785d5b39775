"""Finite matrix groups by closure, with index-level tables.

After construction every element is an index into ``elements``; products,
inverses and conjugation go through the tables, never through matrices.
"""
from __future__ import annotations

from collections import deque
from typing import Dict, List, Optional, Sequence

from .exactla import Mat

__all__ = [
    "FiniteMatrixGroup", "group_closure", "find_conjugator", "find_conjugators",
    "subgroup_generates", "center", "group_from_json", "group_to_json",
]


class FiniteMatrixGroup:
    """Closed finite group of matrices with Cayley, inverse and class tables."""

    def __init__(self, elements: List[Mat], mul, gens: List[int], central: Optional[int] = None):
        self.elements = elements
        self.mul = mul
        self.order = len(elements)
        self.gens = gens
        ident = Mat.identity(elements[0].rows, elements[0].n)
        self.identity = self.index_of(ident, _lookup=True)
        self.inv = [0] * self.order
        for a in range(self.order):
            row = mul[a]
            self.inv[a] = row.index(self.identity)
        self.elt_order = [self._order(a) for a in range(self.order)]
        self.center = [a for a in range(self.order)
                       if all(mul[a][g] == mul[g][a] for g in gens)]
        self.derived = self._derived()
        self.classes, self.classTable = self._classes()
        self.central = self._pick_central(central)
        self._labels = self._make_labels()

    # -- basic lookups ---------------------------------------------------------
    def index_of(self, m: Mat, _lookup=False) -> int:
        if not hasattr(self, "_index"):
            self._index = {e.key(): k for k, e in enumerate(self.elements)}
        k = self._index.get(m.at(self.elements[0].n).key()) if m.n != self.elements[0].n \
            else self._index.get(m.key())
        if k is None:
            raise KeyError("matrix is not an element of the group")
        return k

    def matrix(self, a: int) -> Mat:
        return self.elements[a]

    def prod(self, seq: Sequence[int]) -> int:
        x = self.identity
        for a in seq:
            x = self.mul[x][a]
        return x

    def conj(self, a: int, h: int) -> int:
        """h^-1 a h."""
        return self.mul[self.mul[self.inv[h]][a]][h]

    def power(self, a: int, k: int) -> int:
        k %= self.elt_order[a]
        x = self.identity
        for _ in range(k):
            x = self.mul[x][a]
        return x

    def _order(self, a):
        x, k = a, 1
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    def closure(self, elems) -> set:
        seen = {self.identity}
        frontier = [self.identity]
        elems = list(set(elems))
        while frontier:
            nxt = []
            for x in frontier:
                for g in elems:
                    y = self.mul[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    # -- structure ---------------------------------------------------------------
    def _derived(self):
        mul, inv = self.mul, self.inv
        comms = set()
        for a in range(self.order):
            ia = inv[a]
            for b in self.gens:
                comms.add(mul[mul[ia][inv[b]]][mul[a][b]])
        # normal closure of the commutators of generators with everything
        # equals the derived subgroup; close under conjugation and products
        sub = self.closure(comms)
        while True:
            extra = {self.conj(x, g) for x in sub for g in self.gens} - sub
            if not extra:
                return frozenset(sub)
            sub = self.closure(sub | extra)

    def _classes(self):
        table = [-1] * self.order
        classes = []
        for a in range(self.order):
            if table[a] >= 0:
                continue
            cid = len(classes)
            orbit = [a]
            table[a] = cid
            q = deque([a])
            while q:
                x = q.popleft()
                for g in self.gens:
                    y = self.conj(x, g)
                    if table[y] < 0:
                        table[y] = cid
                        orbit.append(y)
                        q.append(y)
            classes.append(sorted(orbit))
        return classes, table

    def _pick_central(self, central):
        if central is not None:
            return central
        # smallest central element whose coset generates G / G'
        quotient = self.order // len(self.derived)
        for z in self.center:
            if z == self.identity:
                continue
            cosets, x = set(), self.identity
            for _ in range(quotient):
                x = self.mul[x][z]
                cosets.add(min(self.mul[x][d] for d in self.derived))
            if len(cosets) == quotient:
                return z
        return None

    def coset_index(self, a: int) -> Optional[int]:
        """k with a = y * z^k, y in the derived subgroup, z the central generator."""
        if self.central is None:
            return None
        x = a
        zi = self.inv[self.central]
        for k in range(self.elt_order[self.central]):
            if x in self.derived:
                return k
            x = self.mul[x][zi]
        return None

    def _make_labels(self):
        # the derived part y of a representative fixes order and letter
        labels = {}
        info = []
        for cid, cls in enumerate(self.classes):
            a = cls[0]
            k = self.coset_index(a)
            if k is None:
                y = a
            else:
                y = self.mul[a][self.power(self.inv[self.central], k)]
            info.append((cid, k, self.classTable[y], self.elt_order[y]))
        ycls = sorted({(o, self.classes[c][0], c) for _, _, c, o in info})
        letters, count = {}, {}
        for o, _, c in ycls:
            n = count.get(o, 0)
            letters[c] = _letter(n)
            count[o] = n + 1
        for cid, k, c, o in info:
            labels[cid] = "%d%s%s" % (o, letters[c], "" if k is None else str(k))
        return labels

    def class_label(self, a: int) -> str:
        return self._labels[self.classTable[a]]

    def class_by_label(self, label: str) -> int:
        for cid, lab in self._labels.items():
            if lab == label:
                return cid
        raise KeyError("no conjugacy class labelled %r (have %s)"
                       % (label, ", ".join(sorted(self._labels.values()))))

    def labels(self):
        return dict(self._labels)

    def is_central(self, a: int) -> bool:
        return a in set(self.center)

    def report(self):
        return {
            "order": self.order,
            "center_size": len(self.center),
            "derived_order": len(self.derived),
            "classes": [{"label": self._labels[c], "size": len(cls), "rep": cls[0],
                         "element_order": self.elt_order[cls[0]]}
                        for c, cls in enumerate(self.classes)],
        }


def _letter(n):
    s = ""
    n += 1
    while n:
        n, r = divmod(n - 1, 26)
        s = chr(ord("a") + r) + s
    return s


def group_closure(gens: List[Mat], bound: int, central: Optional[Mat] = None) -> FiniteMatrixGroup:
    """Breadth-first closure of the generators, elements sorted canonically."""
    if not gens:
        raise ValueError("need at least one generator")
    n = 1
    for g in gens:
        a, b = n, g.n
        while b:
            a, b = b, a % b
        n = n // a * g.n
    gens = [g.at(n) for g in gens]
    dim = gens[0].rows
    for g in gens:
        if g.rows != dim or g.cols != dim:
            raise ValueError("generators must be square of equal size")
        if g.det().is_zero():
            raise ValueError("generator is singular")
    ident = Mat.identity(dim, n)
    elems = [ident]
    index = {ident.key(): 0}
    parent, letter = [-1], [-1]
    right = []   # right[a][j] = a * gens[j]
    k = 0
    while k < len(elems):
        row = []
        for j, g in enumerate(gens):
            m = elems[k] * g
            key = m.key()
            t = index.get(key)
            if t is None:
                t = len(elems)
                if t >= bound:
                    raise OverflowError("closure exceeds the bound %d" % bound)
                index[key] = t
                elems.append(m)
                parent.append(k)
                letter.append(j)
            row.append(t)
        right.append(row)
        k += 1
    size = len(elems)
    # a * b = (a * parent(b)) * gen(b), filled in BFS order of b
    cols = [[0] * size for _ in range(size)]   # cols[b][a] = a * b
    cols[0] = list(range(size))
    for b in range(1, size):
        pb, jb = parent[b], letter[b]
        src = cols[pb]
        cols[b] = [right[x][jb] for x in src]
    # canonical order by entry keys
    order = sorted(range(size), key=lambda t: elems[t].key())
    pos = [0] * size
    for new, old in enumerate(order):
        pos[old] = new
    mul = [[0] * size for _ in range(size)]
    for b_old in range(size):
        col = cols[b_old]
        bn = pos[b_old]
        for a_old in range(size):
            mul[pos[a_old]][bn] = pos[col[a_old]]
    elements = [elems[t] for t in order]
    gen_idx = [pos[index[g.key()]] for g in gens]
    cidx = None
    if central is not None:
        ck = central.at(n).key()
        if ck not in index:
            raise ValueError("designated central element is not in the group")
        cidx = pos[index[ck]]
    G = FiniteMatrixGroup(elements, mul, gen_idx, cidx)
    G._index = {e.key(): t for t, e in enumerate(elements)}
    if cidx is not None and cidx not in set(G.center):
        raise ValueError("designated central element is not central")
    return G


def find_conjugators(G: FiniteMatrixGroup, A: Sequence[int], B: Sequence[int]) -> List[int]:
    """All h with h^-1 a_i h = b_i, in index order."""
    if len(A) != len(B):
        raise ValueError("tuples of different length")
    out = []
    for h in range(G.order):
        if all(G.conj(a, h) == b for a, b in zip(A, B)):
            out.append(h)
    return out


def find_conjugator(G: FiniteMatrixGroup, A: Sequence[int], B: Sequence[int]) -> Optional[int]:
    """First h (by index) with h^-1 a_i h = b_i for all i, or None."""
    if len(A) != len(B):
        raise ValueError("tuples of different length")
    mul, inv = G.mul, G.inv
    for h in range(G.order):
        ih = inv[h]
        if all(mul[mul[ih][a]][h] == b for a, b in zip(A, B)):
            return h
    return None


def subgroup_generates(G: FiniteMatrixGroup, elems) -> bool:
    return len(G.closure(elems)) == G.order


def center(G: FiniteMatrixGroup) -> List[int]:
    return list(G.center)


def group_to_json(gens, bound, central=None):
    obj = {"gens": [g.to_json() for g in gens], "bound": bound}
    if central is not None:
        obj["central"] = central.to_json()
    return obj


def group_from_json(obj) -> FiniteMatrixGroup:
    if not isinstance(obj, dict) or "gens" not in obj:
        raise ValueError("group object needs key 'gens'")
    gens = []
    for k, m in enumerate(obj["gens"]):
        try:
            gens.append(Mat.from_json(m))
        except (ValueError, KeyError, TypeError) as exc:
            raise ValueError("gens[%d]: %s" % (k, exc)) from None
    bound = int(obj.get("bound", 100000))
    central = Mat.from_json(obj["central"]) if obj.get("central") is not None else None
    return group_closure(gens, bound, central)
