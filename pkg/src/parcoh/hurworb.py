"""Nielsen classes, braid orbits, the j-line cover and its cusp generators.

Tuples are sequences of group indices.  For r = 4 the reduced classes are
taken modulo the Klein four group Q = <b1 b3^-1, (b1 b2 b3)^2>; the action
on reduced classes factors through PSL_2(Z) with

    d_inf = b1,   d_0 = b1 b2,   d_1728 = b1 b2 b1,

and d_0 d_inf d_1728 = 1, d_0^3 = d_1728^2 = 1.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .braidact import BraidWord, act_letter_indices, monodromy_map, tuple_act_indices
from .exactla import Mat, classify_rank2
from .exactnum import denominator_support
from .fingrp import FiniteMatrixGroup, find_conjugator, subgroup_generates
from .locsys import GTuple, ParabolicSpace, parabolic_space

__all__ = [
    "NielsenClass", "NielsenOrbit", "CoverReport", "CuspGenerators", "Canonizer",
    "nielsen_canonical", "type_arrangements", "enumerate_type", "braid_orbit",
    "cover_analysis", "cusp_generators", "free_reduce", "word_perm",
    "delta_to_braid", "orbit_to_dot", "BMatrices", "bmatrices",
]

Q_WORDS = (((1, 1), (3, -1)), ((1, 1), (2, 1), (3, 1)) * 2)


class Canonizer:
    """Lexicographic minima over simultaneous conjugation (and Q for r = 4)."""

    def __init__(self, G: FiniteMatrixGroup):
        self.G = G
        mul, inv = G.mul, G.inv
        mins = [min(G.classes[G.classTable[a]]) for a in range(G.order)]
        # to_min[a] = all h with h^-1 a h = min of the class of a
        self.to_min = [[] for _ in range(G.order)]
        for h in range(G.order):
            ih = inv[h]
            row = mul[ih]
            for a in range(G.order):
                if mul[row[a]][h] == mins[a]:
                    self.to_min[a].append(h)
        self._cache = {}
        self._qwords = [BraidWord(4, w) for w in Q_WORDS]

    def conj_min(self, t):
        mul, inv = self.G.mul, self.G.inv
        best = None
        for h in self.to_min[t[0]]:
            ih = inv[h]
            c = tuple(mul[mul[ih][x]][h] for x in t)
            if best is None or c < best:
                best = c
        return best

    def q_orbit(self, t):
        G = self.G
        q1, q2 = self._qwords
        a = tuple_act_indices(G.mul, G.inv, t, q1)
        b = tuple_act_indices(G.mul, G.inv, t, q2)
        c = tuple_act_indices(G.mul, G.inv, a, q2)
        return (tuple(t), a, b, c)

    def reduced_min(self, t):
        t = tuple(t)
        hit = self._cache.get(t)
        if hit is not None:
            return hit
        best = min(self.conj_min(u) for u in self.q_orbit(t))
        self._cache[t] = best
        return best

    def canonical(self, t, reduced):
        if reduced:
            if len(t) != 4:
                raise ValueError("reduced classes are defined for r = 4 only")
            return self.reduced_min(t)
        return self.conj_min(tuple(t))


def _canonizer(G) -> Canonizer:
    c = getattr(G, "_canonizer", None)
    if c is None:
        c = Canonizer(G)
        G._canonizer = c
    return c


@dataclass(frozen=True, order=True)
class NielsenClass:
    rep: Tuple[int, ...]
    reduced: bool


def _check_tuple(G, t):
    if G.prod(t) != G.identity:
        raise ValueError("tuple product is not the identity")
    if not subgroup_generates(G, t):
        raise ValueError("tuple does not generate the group")


def nielsen_canonical(G: FiniteMatrixGroup, t: Sequence[int], reduced: bool) -> NielsenClass:
    _check_tuple(G, t)
    return NielsenClass(_canonizer(G).canonical(tuple(t), reduced), reduced)


# -- types -----------------------------------------------------------------------

def _power_class(G, c, n):
    return G.classTable[G.power(G.classes[c][0], n)]


def type_arrangements(G: FiniteMatrixGroup, classes: Sequence[int]) -> List[Tuple[int, ...]]:
    """All ordered class vectors of the type: powers prime to |G|, permutations."""
    multisets = set()
    for n in range(1, G.order + 1):
        if gcd(n, G.order) == 1:
            multisets.add(tuple(sorted(_power_class(G, c, n) for c in classes)))
    out = set()
    for ms in multisets:
        out.update(itertools.permutations(ms))
    return sorted(out)


def enumerate_type(G: FiniteMatrixGroup, classes: Sequence[int], reduced: Optional[bool] = None):
    """All (reduced) Nielsen classes of the given type, sorted."""
    r = len(classes)
    if r < 3:
        raise ValueError("need r >= 3")
    if reduced is None:
        reduced = r == 4
    can = _canonizer(G)
    mul, inv = G.mul, G.inv
    found = set()
    for arr in type_arrangements(G, classes):
        first = G.classes[arr[0]][0]
        middle = [G.classes[c] for c in arr[1:-1]]
        last = arr[-1]
        for mid in itertools.product(*middle):
            x = first
            for m in mid:
                x = mul[x][m]
            g_last = inv[x]
            if G.classTable[g_last] != last:
                continue
            t = (first,) + tuple(mid) + (g_last,)
            found.add(can.canonical(t, reduced))
    out = []
    for t in sorted(found):
        if subgroup_generates(G, t):
            out.append(NielsenClass(t, reduced))
    return out


# -- orbits ----------------------------------------------------------------------

def _compose(p, q):
    """Right action: first p, then q."""
    return [q[x] for x in p]


def _perm_inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return out


@dataclass
class NielsenOrbit:
    points: List[NielsenClass]
    perms: Dict[str, List[int]]
    base: int = 0

    def __len__(self):
        return len(self.points)

    def index(self, cls: NielsenClass) -> int:
        if not hasattr(self, "_index"):
            self._index = {p.rep: k for k, p in enumerate(self.points)}
        return self._index[cls.rep]


def braid_orbit(G: FiniteMatrixGroup, seed: Sequence[int], reduced: Optional[bool] = None) -> NielsenOrbit:
    """Closure of the seed's class under the braid generators, with permutations."""
    r = len(seed)
    if reduced is None:
        reduced = r == 4
    _check_tuple(G, seed)
    can = _canonizer(G)
    start = can.canonical(tuple(seed), reduced)
    index = {start: 0}
    points = [start]
    gens = list(range(1, r))
    images = {i: [] for i in gens}
    k = 0
    while k < len(points):
        t = points[k]
        for i in gens:
            u = can.canonical(act_letter_indices(G.mul, G.inv, t, i - 1, 1), reduced)
            j = index.get(u)
            if j is None:
                j = len(points)
                index[u] = j
                points.append(u)
            images[i].append(j)
        k += 1
    perms = {"b%d" % i: images[i] for i in gens}
    if r == 4 and reduced:
        b1, b2 = perms["b1"], perms["b2"]
        perms["d_inf"] = list(b1)
        perms["d_0"] = _compose(b1, b2)
        perms["d_1728"] = _compose(_compose(b1, b2), b1)
    orbit = NielsenOrbit([NielsenClass(p, reduced) for p in points], perms, 0)
    orbit._index = dict((p, n) for n, p in enumerate(points))
    return orbit


def _cycles(p):
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(cyc)
    return out


@dataclass
class CoverReport:
    degree: int
    cusps: List[Tuple[int, int]]      # (width, representative point)
    genus: int
    fixedPoints: Dict[str, int]
    cycleTypes: Dict[str, List[int]]

    def widths(self):
        return sorted(w for w, _ in self.cusps)

    def to_json(self):
        return {"degree": self.degree, "genus": self.genus,
                "cusps": [{"width": w, "rep": p} for w, p in self.cusps],
                "fixed_points": self.fixedPoints, "cycle_types": self.cycleTypes}


def cover_analysis(orbit: NielsenOrbit) -> CoverReport:
    p0, pinf, p1728 = (orbit.perms[k] for k in ("d_0", "d_inf", "d_1728"))
    N = len(orbit)
    ident = list(range(N))
    if _compose(_compose(p0, pinf), p1728) != ident:
        raise ArithmeticError("d_0 d_inf d_1728 is not the identity permutation")
    cyc = {k: _cycles(orbit.perms[k]) for k in ("d_0", "d_inf", "d_1728")}
    ram = sum(len(c) - 1 for cs in cyc.values() for c in cs)
    twice = 2 * N - ram          # = 2 - 2g for a connected cover
    if twice % 2:
        raise ArithmeticError("Riemann-Hurwitz gives a non-integral genus")
    genus = (2 - twice) // 2
    cusps = sorted((len(c), min(c)) for c in cyc["d_inf"])
    return CoverReport(
        N, cusps, genus,
        {k: sum(1 for c in cyc[k] if len(c) == 1) for k in ("d_0", "d_1728", "d_inf")},
        {k: sorted(len(c) for c in cyc[k]) for k in cyc})


# -- free group words in d_0, d_inf ---------------------------------------------

def free_reduce(word):
    out = []
    for a in word:
        if out and out[-1][0] == a[0] and out[-1][1] == -a[1]:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _winv(word):
    return tuple((x, -s) for x, s in reversed(word))


D1728 = (("d_inf", -1), ("d_0", -1))     # d_1728 = (d_0 d_inf)^-1


def _expand(word):
    out = []
    for x, s in word:
        if x == "d_1728":
            out.extend(D1728 if s == 1 else _winv(D1728))
        else:
            out.append((x, s))
    return tuple(out)


def word_perm(orbit: NielsenOrbit, word, start: int) -> int:
    """Image of a point under a word in d_0, d_inf (right action)."""
    inv = getattr(orbit, "_inv_perms", None)
    if inv is None:
        inv = {k: _perm_inverse(v) for k, v in orbit.perms.items()}
        orbit._inv_perms = inv
    x = start
    for name, s in _expand(word):
        x = orbit.perms[name][x] if s == 1 else inv[name][x]
    return x


def delta_to_braid(word, strands=4) -> BraidWord:
    letters = []
    for name, s in _expand(word):
        if name == "d_inf":
            block = ((1, 1),)
        elif name == "d_0":
            block = ((1, 1), (2, 1))
        else:
            raise ValueError("unknown letter %r" % name)
        if s == -1:
            block = tuple((i, -e) for i, e in reversed(block))
        letters.extend(block)
    return BraidWord(strands, tuple(letters))


def word_str(word):
    return " ".join(n if s == 1 else n + "^-1" for n, s in word) or "1"


@dataclass
class CuspGenerators:
    words: List[tuple]
    widths: List[int]
    points: List[int]
    braidWords: List[BraidWord]
    twists: List[int]
    scalars: List[int] = field(default_factory=list)
    elliptic: List[dict] = field(default_factory=list)
    order: str = "planar"

    def __len__(self):
        return len(self.words)

    def to_json(self):
        return [{"width": w, "point": p, "word": word_str(x), "braid": str(b) or "1", "h": h}
                for w, p, x, b, h in zip(self.widths, self.points, self.words,
                                         self.braidWords, self.twists)]


# Triangulated j-line: the real line cut at p1 (j = 0), p2 (j = inf) and
# p3 (j = 1728) into edges A = [p3, p1], B = [p1, p2], C = [p2, p3].  Each
# sheet i has an upper face U_i and a lower face L_i.  Crossing A keeps the
# sheet, crossing B from below leads to U_{i d_0}, crossing C from below to
# U_{i d_0 d_inf}.  Counterclockwise, U_i has corners p1 (A->B), p2 (B->C),
# p3 (C->A) and L_i has corners p2 (C->B), p1 (B->A), p3 (A->C).
_CORNERS = {
    "U": (("A", "B", "p1"), ("B", "C", "p2"), ("C", "A", "p3")),
    "L": (("C", "B", "p2"), ("B", "A", "p1"), ("A", "C", "p3")),
}
_MOVE = {"p1": "d_0", "p2": "d_inf", "p3": "d_1728"}


def _faces(orbit):
    p0, pinf = orbit.perms["d_0"], orbit.perms["d_inf"]
    p0inf = _compose(p0, pinf)
    inv0, inv0inf = _perm_inverse(p0), _perm_inverse(p0inf)

    def across(face, edge):
        """(neighbour face, word multiplier for the step)."""
        kind, i = face
        if edge == "A":
            return (("L" if kind == "U" else "U", i), ())
        if kind == "L":
            if edge == "B":
                return (("U", p0[i]), (("d_0", 1),))
            return (("U", p0inf[i]), (("d_0", 1), ("d_inf", 1)))
        if edge == "B":
            return (("L", inv0[i]), (("d_0", -1),))
        return (("L", inv0inf[i]), (("d_inf", -1), ("d_0", -1)))
    return across


def _dual_tree(orbit, root):
    """BFS spanning tree of the faces; returns (face words, tree children)."""
    across = _faces(orbit)
    start = ("U", root)
    word = {start: ()}
    children = {start: {}}
    q = deque([start])
    while q:
        f = q.popleft()
        for e in ("A", "B", "C"):
            nb, step = across(f, e)
            if nb not in word:
                word[nb] = free_reduce(word[f] + step)
                children[f][e] = nb
                children[nb] = {}
                q.append(nb)
    return word, children


def _boundary_corners(orbit, root):
    """Corners in the boundary order of the disc cut out by the dual tree."""
    word, children = _dual_tree(orbit, root)
    out = []

    def rotated(face, entry):
        seq = _CORNERS[face[0]]
        k = 0 if entry is None else [c[0] for c in seq].index(entry)
        return [seq[(k + m) % 3] for m in range(3)]

    def walk(face, entry):
        seq = rotated(face, entry)
        if entry is not None:
            out.append((face, seq[0][2]))
            seq = seq[1:]
        for e_in, _e_out, v in seq:
            child = children[face].get(e_in)
            if child is not None:
                walk(child, e_in)
            out.append((face, v))

    walk(("U", root), None)
    return out, word


def _vertex(orbit, cyc_id, face, v):
    """(branch point, cycle id) of the cover vertex at a corner."""
    kind, i = face
    if kind == "L" and v == "p2":
        i = orbit.perms["d_0"][i]
    return (v, cyc_id[_MOVE[v]][i])


def _corner_loop(orbit, word, face, v, length):
    """Loop around the vertex at a corner, based at the root face."""
    kind, i = face
    w = word[face]
    turn = ((_MOVE[v], 1),) * length
    if kind == "L" and v == "p2":
        turn = (("d_0", 1),) + turn + (("d_0", -1),)
    return free_reduce(_expand(w + turn + _winv(w)))


def planar_loops(orbit: NielsenOrbit, root: int = 0):
    """One loop per vertex of the j-line cover, ordered so their product is 1.

    Returns a list of (branch point, cycle length, representative point,
    word) in that order.
    """
    cyc_id, cyc_len = {}, {}
    for name in ("d_0", "d_inf", "d_1728"):
        ids, lens = [0] * len(orbit), []
        for k, c in enumerate(_cycles(orbit.perms[name])):
            for x in c:
                ids[x] = k
            lens.append(len(c))
        cyc_id[name], cyc_len[name] = ids, lens
    corners, word = _boundary_corners(orbit, root)
    for pick in ("first", "last"):
        seq = corners if pick == "first" else corners[::-1]
        seen, chosen = set(), []
        for face, v in seq:
            key = _vertex(orbit, cyc_id, face, v)
            if key in seen:
                continue
            seen.add(key)
            chosen.append((face, v, key))
        if pick == "last":
            chosen.reverse()
        loops = []
        for face, v, (bp, cid) in chosen:
            length = cyc_len[_MOVE[bp]][cid]
            kind, i = face
            point = orbit.perms["d_0"][i] if (kind == "L" and v == "p2") else i
            loops.append((bp, length, point, _corner_loop(orbit, word, face, v, length)))
        for order in (loops, loops[::-1]):
            total = ()
            for item in order:
                total = free_reduce(total + item[3])
            if not total:
                return order
    raise ArithmeticError("no vertex ordering with trivial product was found")


def cusp_generators(G: FiniteMatrixGroup, orbit: NielsenOrbit, seed: Sequence[int],
                    root: Optional[int] = None) -> CuspGenerators:
    """Loops around the cusps in planar order, their braid lifts and twists.

    The seed must have the reduced class orbit.points[root].  Each loop
    stabilises the root; its braid image moves the seed to a conjugate
    h g_i h^-1, and h is recorded as the twist.
    """
    root = orbit.base if root is None else root
    if _canonizer(G).canonical(tuple(seed), True) != orbit.points[root].rep:
        raise ValueError("seed is not a representative of the root class")
    loops = planar_loops(orbit, root)
    gens = CuspGenerators([], [], [], [], [])
    for bp, length, point, word in loops:
        if word_perm(orbit, word, root) != root:
            raise ArithmeticError("loop %s does not stabilise the base point" % word_str(word))
        braid = delta_to_braid(word)
        moved = tuple_act_indices(G.mul, G.inv, tuple(seed), braid)
        h = find_conjugator(G, moved, tuple(seed))
        if h is None:
            raise ArithmeticError("no conjugator for the braid lift of %s" % word_str(word))
        if bp == "p2":
            gens.words.append(word)
            gens.widths.append(length)
            gens.points.append(point)
            gens.braidWords.append(braid)
            gens.twists.append(h)
        else:
            gens.elliptic.append({"branch": "0" if bp == "p1" else "1728", "length": length,
                                  "point": point, "word": word, "braid": braid, "h": h})
    return gens


@dataclass
class BMatrices:
    """Normalized cusp matrices b_j = c^k_j * raw_j with c the central scalar."""
    mats: List[Mat]
    raw: List[Mat]
    scalars: List[int]
    central: object
    space: ParabolicSpace
    product: Mat

    def classes(self):
        return [classify_rank2(b) for b in self.mats]

    def denominators(self):
        out = set()
        for b in self.mats:
            for r in b.e:
                for x in r:
                    out |= denominator_support(x)
        return out


def _eigenvalue_one(m):
    return (m - Mat.identity(m.rows, m.n)).det().is_zero()


def bmatrices(G: FiniteMatrixGroup, seed: Sequence[int], gens: CuspGenerators,
              rep: Optional[GTuple] = None, space: Optional[ParabolicSpace] = None,
              max_prime: Optional[int] = 7) -> BMatrices:
    """Monodromy of the cusp generators on W, normalized by central twists.

    Each b_j is multiplied by the power of the central scalar c that makes it
    a transvection, or failing that gives it the eigenvalue 1.  Replacing h_j
    by h_j z^k does exactly this.  If the product is then c^m I with m != 0,
    one homology is rescaled once more so that the product is I.
    """
    if G.central is None:
        raise ValueError("group has no designated central element")
    zmat = G.matrix(G.central)
    if not zmat.is_scalar():
        raise ValueError("central element is not a scalar matrix")
    c = zmat[0, 0]
    if rep is None:
        rep = GTuple([G.matrix(x) for x in seed])
    sp = parabolic_space(rep) if space is None else space
    zord = G.elt_order[G.central]
    powers = [c ** k for k in range(zord)]

    raw = []
    for j, (w, h) in enumerate(zip(gens.braidWords, gens.twists)):
        raw.append(monodromy_map(sp, w, G.matrix(h), group=G, what="cusp %d" % (j + 1)).wMatrix)

    scalars, mats = [], []
    for b in raw:
        pick = None
        for k in range(zord):
            if classify_rank2(b * powers[k]).kind == "transvection":
                pick = k
                break
        if pick is None:
            pick = next((k for k in range(zord) if _eigenvalue_one(b * powers[k])), 0)
        scalars.append(pick)
        mats.append(b * powers[pick])

    def product():
        P = Mat.identity(mats[0].rows, mats[0].n)
        for b in mats:
            P = P * b
        return P

    P = product()
    if not P.is_scalar():
        raise ArithmeticError("product of the cusp matrices is not scalar: %s" % P.pretty())
    lam = P[0, 0]
    if not lam.is_one():
        m = next((k for k in range(zord) if powers[k] == lam), None)
        if m is None:
            raise ArithmeticError("product %s is not a power of the central scalar" % lam)
        back = (zord - m) % zord
        target = None
        for j, b in enumerate(mats):
            cl = classify_rank2(b)
            if cl.kind == "homology" and cl.eigenvalue == lam:
                target = j
                break
        if target is None:
            target = 0
        scalars[target] = (scalars[target] + back) % zord
        mats[target] = raw[target] * powers[scalars[target]]
        P = product()
        if not P.is_identity():
            raise ArithmeticError("central normalization failed: %s" % P.pretty())
    gens.scalars = list(scalars)
    out = BMatrices(mats, raw, scalars, c, sp, P)
    if max_prime is not None:
        bad = sorted(q for q in out.denominators() if q > max_prime)
        if bad:
            raise ArithmeticError("cusp matrix denominators involve primes %s" % bad)
    return out


def orbit_to_dot(orbit: NielsenOrbit) -> str:
    lines = ["digraph orbit {"]
    for k, p in enumerate(orbit.points):
        lines.append('  %d [label="%d: %s"];' % (k, k, ",".join(map(str, p.rep))))
    colors = {"b1": "red", "b2": "blue", "b3": "green"}
    for name, col in colors.items():
        if name in orbit.perms:
            for a, b in enumerate(orbit.perms[name]):
                lines.append('  %d -> %d [color=%s, label="%s"];' % (a, b, col, name))
    lines.append("}")
    return "\n".join(lines) + "\n"
