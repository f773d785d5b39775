"""End-to-end reproductions: the Picard-Euler monodromy and the PSL_2(p^2) pipeline."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional

import numpy as np

from .braidact import braid_parse, monodromy
from .exactla import Mat, classify_rank2, kernel_basis, span_rows, vec_mat
from .exactnum import (CycNum, as_cyc, cyc_embed, denominator_support,
                       factor_cyclotomic_mod_p, min_poly_Q, omega, residue,
                       sqrt_m3, sqrt_m7, zeta)
from .exactnum.finite import DEFAULT_SEED
from .fingrp import FiniteMatrixGroup, group_closure, subgroup_generates
from .hurworb import (_canonizer, bmatrices, braid_orbit, cover_analysis, cusp_generators,
                      enumerate_type, word_str)
from .locsys import expected_dim, parabolic_space, tuple_make

__all__ = [
    "Check", "ScenarioReport", "build_klein_rep", "klein_k_form", "klein_group",
    "find_seed", "scenario_picard", "scenario_psl2", "picard_tuple",
    "PICARD_WORDS", "PICARD_TARGETS", "psl2_order", "residual_image_order",
    "galois_descent",
]

PSL2_TYPE = ("2a0", "2a0", "3a1", "3a2")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None


@dataclass
class ScenarioReport:
    name: str
    checks: List[Check] = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)
    scalars: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    def add(self, name, passed, detail="", witness=None):
        self.checks.append(Check(name, bool(passed), detail, witness))
        return bool(passed)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def check(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_text(self):
        lines = ["scenario %s: %s" % (self.name, "PASS" if self.passed else "FAIL")]
        for c in self.checks:
            lines.append("  [%s] %s%s" % ("PASS" if c.passed else "FAIL", c.name,
                                          (": " + c.detail) if c.detail else ""))
            if not c.passed and c.witness is not None:
                lines.append("         witness: %s" % (c.witness,))
        for k, v in self.timing.items():
            lines.append("  time %s: %.2fs" % (k, v))
        return "\n".join(lines)

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail,
                        "witness": c.witness} for c in self.checks],
            "artifacts": self.artifacts,
            "scalars": self.scalars,
            "timing": {k: round(v, 3) for k, v in self.timing.items()},
        }


def _gal(M: Mat, k: int) -> Mat:
    return Mat([[x.galois(k) for x in r] for r in M.e], M.n)


def _mat_json(M: Mat):
    return [[str(x) for x in r] for r in M.e]


# -- Picard-Euler -------------------------------------------------------------------

PICARD_WORDS = ("s3 s3", "s3 s2 s2 s3^-1", "s3 s2 s1 s1 s2^-1 s3^-1", "s2 s2", "s2 s1 s1 s2^-1")


def picard_tuple():
    w = omega()
    return tuple_make([Mat([[w]]), Mat([[w]]), Mat([[w]]), Mat([[w]]), Mat([[w * w]])])


def _picard_basis():
    w = omega()
    one, zero = CycNum.one(3), CycNum.zero(3)
    return [(one, zero, zero, zero, -(w * w)),
            (zero, one, zero, zero, -w),
            (zero, zero, one, zero, -one)]


def _picard_conjugator():
    w = omega()
    return Mat([[0, -w - 1, -w], [w + 1, w + 1, w + 1], [1, 0, 0]])


def _picard_targets():
    w = omega()
    w2 = w * w
    return [
        Mat([[w2, 0, 1 - w], [w - w2, 1, w2 - 1], [0, 0, 1]]),
        Mat([[w2, 0, 1 - w2], [1 - w2, 1, w2 - 1], [0, 0, 1]]),
        Mat([[1, 0, 0], [0, w, w2 - 1], [0, w2 - 1, -2 * w]]),
        Mat.diag([w2, 1, 1]),
        Mat([[w2, w - w2, 0], [0, 1, 0], [1 - w, w2 - 1, 1]]),
    ]


PICARD_TARGETS = _picard_targets()


def scenario_picard() -> ScenarioReport:
    """Monodromy of the Picard-Euler system in the classical basis.

    The five eta matrices are computed in the basis of the three given
    cocycle classes and compared with the targets after conjugation by B.
    Both orientations (B M B^-1, B^-1 M B) and both readings of omega in B
    (omega, or its conjugate omega^2 for the conjugate character) are tried;
    the matching one is recorded.
    """
    rep = ScenarioReport("picard")
    t0 = time.perf_counter()
    g = picard_tuple()
    sp = parabolic_space(g)
    expect, applies = expected_dim(g)
    rep.add("dim W = 3", sp.dim_w == 3, "dim H = %d, dim E = %d, dim W = %d"
            % (sp.dim_h, sp.dim_e, sp.dim_w))
    rep.add("dimension formula", applies and expect == sp.dim_w,
            "formula %d, applies %s" % (expect, applies))
    sp = sp.with_reps(_picard_basis())
    moves = [(braid_parse(x, 5), None) for x in PICARD_WORDS]
    etas = monodromy(g, moves, sp)
    B = _picard_conjugator()
    candidates = []
    for reading, Bx in (("omega", B), ("conjugate omega", _gal(B, 2))):
        Bi = Bx.inv()
        candidates.append((reading, "B M B^-1", [Bx * M * Bi for M in etas]))
        candidates.append((reading, "B^-1 M B", [Bi * M * Bx for M in etas]))
    match = None
    for reading, orient, mats in candidates:
        if all(a == b for a, b in zip(mats, PICARD_TARGETS)):
            match = (reading, orient, mats)
            break
    if match is None:
        best = max(candidates, key=lambda c: sum(a == b for a, b in zip(c[2], PICARD_TARGETS)))
        mats = best[2]
        for k, (a, b) in enumerate(zip(mats, PICARD_TARGETS)):
            rep.add("matrix %d" % (k + 1), a == b, "",
                    {"computed": _mat_json(a), "expected": _mat_json(b),
                     "reading": best[0], "orientation": best[1]})
    else:
        reading, orient, mats = match
        for k, (a, b) in enumerate(zip(mats, PICARD_TARGETS)):
            rep.add("matrix %d" % (k + 1), a == b, "braid %s" % PICARD_WORDS[k])
        rep.artifacts["orientation"] = orient
        rep.artifacts["omega_in_B"] = reading
    rep.artifacts["matrices"] = [_mat_json(m) for m in mats]
    rep.artifacts["eta_raw"] = [_mat_json(m) for m in etas]
    rep.timing["total"] = time.perf_counter() - t0
    return rep


# -- the Klein representation ----------------------------------------------------

def _z7(k):
    return cyc_embed(zeta(7, k), 21)


def build_klein_rep(verify=True):
    """S, T, Z over Q(zeta_21) generating PSL_2(7) x C_3 in GL_3.

    S = diag(z^4, z^2, z) and T is the classical symmetric matrix built from
    the Gauss periods, scaled by -1/sqrt(-7) so that det T = 1.
    """
    S = Mat.diag([_z7(4), _z7(2), _z7(1)])
    a, b, c = _z7(1) - _z7(6), _z7(2) - _z7(5), _z7(4) - _z7(3)
    s7 = cyc_embed(sqrt_m7(), 21)
    T = Mat([[a, b, c], [b, c, a], [c, a, b]]) * (-(1 / s7))
    Z = Mat.scalar(cyc_embed(omega(), 21), 3)
    if verify:
        if not (S ** 7).is_identity():
            raise ArithmeticError("S^7 != I")
        if not (T * T).is_identity():
            raise ArithmeticError("T^2 != I")
        if not T.det().is_one():
            raise ArithmeticError("det T != 1")
        n168 = group_closure([S, T], 200).order
        if n168 != 168:
            raise ArithmeticError("<S, T> has order %d, expected 168" % n168)
    return S, T, Z


def galois_descent(gens, k):
    """Conjugate a representation over Q(zeta_n) to one fixed by zeta -> zeta^k.

    Needs the representation to be isomorphic to its Galois twist through a
    unique (up to scalar) intertwiner A with sigma(rho(g)) A = A rho(g) whose
    norm is the identity.  Returns (P, [P g P^-1]).
    """
    n = gens[0].n
    d = gens[0].rows
    zero = CycNum.zero(n)
    rows = []
    for g in gens:
        sg = _gal(g, k)
        for i in range(d):
            for j in range(d):
                coef = [zero] * (d * d)
                for m in range(d):
                    coef[m * d + j] = coef[m * d + j] + sg[i, m]
                    coef[i * d + m] = coef[i * d + m] - g[m, j]
                rows.append(coef)
    sol = kernel_basis(Mat(rows, n).transpose())
    if len(sol) != 1:
        raise ArithmeticError("expected a unique intertwiner, found %d" % len(sol))
    A = Mat([sol[0][i * d:(i + 1) * d] for i in range(d)], n)
    order, x = 1, k % n
    while x != 1:
        x = x * k % n
        order += 1
    # norm N = sigma^{m-1}(A) ... sigma(A) A; rescale is not attempted
    N, cur = A, A
    for _ in range(order - 1):
        cur = _gal(cur, k)
        N = cur * N
    if not N.is_identity():
        raise ArithmeticError("intertwiner norm is not the identity")

    def F(v):
        return vec_mat(tuple(x.galois(k) for x in v), A)

    basis = []
    for t, j in itertools.product(range(n), range(d)):
        w = [zero] * d
        w[j] = cyc_embed(zeta(n, t), n) if t else CycNum.one(n)
        w = tuple(w)
        acc, cur = w, w
        for _ in range(order - 1):
            cur = F(cur)
            acc = tuple(x + y for x, y in zip(acc, cur))
        trial = basis + [acc]
        if len(span_rows(trial, n)) == len(trial):
            basis = trial
        if len(basis) == d:
            break
    P = Mat(basis, n)
    Pi = P.inv()
    out = [P * g * Pi for g in gens]
    for m in out:
        if _gal(m, k) != m:
            raise ArithmeticError("descended generator is not Galois fixed")
    return P, out


def klein_k_form(S=None, T=None, Z=None):
    """The Klein generators conjugated into GL_3(Q(sqrt-3, sqrt-7))."""
    if S is None:
        S, T, Z = build_klein_rep()
    P, (S2, T2) = galois_descent([S, T], 4)
    for m in (S2, T2):
        if any(x.galois(16) != x for r in m.e for x in r):
            raise ArithmeticError("descended generator is not fixed by zeta -> zeta^16")
    return S2, T2, Z, P


@lru_cache(maxsize=2)
def klein_group(k_form=True) -> FiniteMatrixGroup:
    if k_form:
        S, T, Z, _ = klein_k_form()
    else:
        S, T, Z = build_klein_rep()
    G = group_closure([S, T, Z], 1000, Z)
    if G.order != 504:
        raise ArithmeticError("<S, T, Z> has order %d, expected 504" % G.order)
    return G


def find_seed(G: FiniteMatrixGroup, labels=PSL2_TYPE):
    """First generating tuple with the exact class vector, in index order."""
    cls = [G.class_by_label(x) for x in labels]
    mul, inv = G.mul, G.inv
    for head in itertools.product(*[G.classes[c] for c in cls[:-2]]):
        x = G.prod(head)
        for g in G.classes[cls[-2]]:
            last = inv[mul[x][g]]
            if G.classTable[last] != cls[-1]:
                continue
            t = tuple(head) + (g, last)
            if subgroup_generates(G, t):
                return t
    return None


# -- residues -----------------------------------------------------------------------

def psl2_order(q):
    from math import gcd
    return q * (q * q - 1) // gcd(2, q - 1)


def _entries_at(M, n):
    return [[x if x.n == n else cyc_embed(x, n) for x in r] for r in M.e]


def _residue_mat(M, p, f, n=21):
    return [[residue(x, p, f) for x in r] for r in _entries_at(M, n)]


def _commutator_is_identity(X, Y):
    # both have determinant one in the residue field
    (a, b), (c, d) = X
    (e, f), (g, h) = Y
    Xi = ((d, -b), (-c, a))
    Yi = ((h, -f), (-g, e))

    def mul(A, B):
        return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
                (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))
    C = mul(mul(mul(X, Y), Xi), Yi)
    return C[0][0] == 1 and C[1][1] == 1 and C[0][1].is_zero() and C[1][0].is_zero()


def _primes(lo, hi):
    return [p for p in range(max(lo, 2), hi + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def residual_commutators(mats, pmax, seed=DEFAULT_SEED, pmin=11):
    """For each prime and each factor of Phi_21 mod p, a transvection pair
    whose commutator is not the identity in the residue field."""
    trans = [k for k, b in enumerate(mats) if classify_rank2(b).kind == "transvection"]
    dens = set()
    for b in mats:
        for r in b.e:
            for x in r:
                dens |= denominator_support(x)
    rows = []
    for p in _primes(pmin, pmax):
        if 21 % p == 0 or p in dens:
            continue
        factors = factor_cyclotomic_mod_p(21, p, seed)
        per = []
        for f in factors:
            res = {k: _residue_mat(mats[k], p, f) for k in trans}
            found = None
            for i, j in itertools.combinations(trans, 2):
                if not _commutator_is_identity(res[i], res[j]):
                    found = (i, j)
                    break
            per.append({"factor": list(f), "pair": found})
        rows.append({"p": p, "p_mod_21": p % 21, "split_in_K": p % 21 in (1, 4, 16),
                     "degree": len(factors[0]) - 1, "factors": per,
                     "ok": all(x["pair"] is not None for x in per)})
    return rows


def _quadratic_generator(p):
    """A generator of K that is a non-square mod p, with its square."""
    for name, elt, sq in (("sqrt-3", sqrt_m3(), -3), ("sqrt-7", sqrt_m7(), -7),
                          ("sqrt21", None, 21)):
        if pow(sq % p, (p - 1) // 2, p) == p - 1:
            if elt is None:
                elt = cyc_embed(sqrt_m3(), 21) * cyc_embed(sqrt_m7(), 21)
            return name, cyc_embed(elt, 21), sq % p
    return None


def residual_image_order(mats, p, seed=DEFAULT_SEED):
    """Order of the group generated by the projective images of the 2x2
    matrices in PGL_2 of the residue field F_{p^2} of K at a prime above p.

    Returns (order, details).  Elements of F_{p^2} are encoded as a + p b
    for a + b alpha with alpha^2 a non-square of F_p.
    """
    gen = _quadratic_generator(p)
    if gen is None:
        raise ValueError("p = %d splits in K; the residue field is F_p" % p)
    name, alpha, s = gen
    f = factor_cyclotomic_mod_p(21, p, seed)[0]
    ra, one = residue(alpha, p, f), residue(CycNum.one(21), p, f)
    lookup = {}
    for a in range(p):
        for b in range(p):
            lookup[one * a + ra * b] = a + p * b
    q = p * p
    idx = np.arange(q)
    A, Bc = idx % p, idx // p
    add = (A[:, None] + A[None, :]) % p + p * ((Bc[:, None] + Bc[None, :]) % p)
    mul = ((A[:, None] * A[None, :] + s * Bc[:, None] * Bc[None, :]) % p
           + p * ((A[:, None] * Bc[None, :] + Bc[:, None] * A[None, :]) % p))
    inv = np.zeros(q, dtype=np.int64)
    rr, cc = np.nonzero(mul == 1)
    inv[rr] = cc

    def enc(M):
        out = []
        for r in _residue_mat(M, p, f):
            for x in r:
                if x not in lookup:
                    raise ArithmeticError("entry does not reduce into F_%d" % q)
                out.append(lookup[x])
        return np.array(out, dtype=np.int64)

    def normalize(X):
        lead = np.where(X[:, 0] != 0, X[:, 0], X[:, 1])
        li = inv[lead]
        return mul[li[:, None], X]

    def keys(X):
        a0 = X[:, 0] != 0
        k1 = (X[:, 1] * q + X[:, 2]) * q + X[:, 3]
        k0 = q ** 3 + X[:, 2] * q + X[:, 3]
        return np.where(a0, k1, k0)

    def times(X, g):
        a, b, c, d = (X[:, i] for i in range(4))
        e, f_, g_, h = (int(v) for v in g)
        return np.stack([add[mul[a, e], mul[b, g_]], add[mul[a, f_], mul[b, h]],
                         add[mul[c, e], mul[d, g_]], add[mul[c, f_], mul[d, h]]], axis=1)

    gens = [enc(M) for M in mats]
    seen = np.zeros(q ** 3 + q * q, dtype=bool)
    start = normalize(np.array([[1, 0, 0, 1]], dtype=np.int64))
    seen[keys(start)] = True
    frontier, total = start, 1
    while len(frontier):
        nxt = []
        for g in gens:
            Y = normalize(times(frontier, g))
            k = keys(Y)
            k, first = np.unique(k, return_index=True)
            fresh = ~seen[k]
            seen[k[fresh]] = True
            nxt.append(Y[first[fresh]])
        frontier = np.concatenate(nxt) if nxt else np.zeros((0, 4), dtype=np.int64)
        total += len(frontier)
    return total, {"p": p, "field_generator": name, "factor": list(f)}


# -- PSL_2(p^2) ---------------------------------------------------------------------

def _trace_field_pair(mats):
    for i, j in itertools.combinations(range(len(mats)), 2):
        poly = min_poly_Q((mats[i] * mats[j]).trace())
        if len(poly) - 1 == 4:
            return (i, j), poly
    return None, None


def _poly_str(poly):
    return "[" + ", ".join(str(c) for c in poly) + "]"


def _lift_point(G, orbit, k, last_class):
    """A tuple in the reduced class orbit.points[k] whose last entry lies in
    last_class.  When that class occurs once in the type, the loops in
    <b1, b2> can only move such a tuple to a conjugate of itself."""
    for u in _canonizer(G).q_orbit(orbit.points[k].rep):
        if G.classTable[u[-1]] == last_class:
            return u
    raise ValueError("no tuple of the class has its last entry in the given class")


def _census(bm, widths):
    kinds = [c.kind for c in bm.classes()]
    return kinds, sorted(zip(widths, kinds))


def scenario_psl2(pmax=199, full_image_p: Optional[int] = 11, rebase=True,
                  seed=DEFAULT_SEED) -> ScenarioReport:
    """The PSL_2(7) x C_3 tuple of type (2a0, 2a0, 3a1, 3a2) and its cusp monodromy."""
    if pmax < 11:
        raise ValueError("pmax must be at least 11")
    rep = ScenarioReport("psl2")
    t0 = time.perf_counter()
    G = klein_group()
    rep.artifacts["group_order"] = G.order
    invols = [a for a in G.derived if G.elt_order[a] == 2]
    traces = {str(G.matrix(a).trace()) for a in invols}
    rep.add("involutions have trace -1", traces == {"-1"}, "traces %s" % sorted(traces))
    sizes = {lab: len(G.classes[G.class_by_label(lab)]) for lab in ("2a0", "3a1", "3a2")}
    rep.add("class sizes 21, 56, 56", sizes == {"2a0": 21, "3a1": 56, "3a2": 56}, str(sizes))
    rep.timing["group"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    cls = [G.class_by_label(x) for x in PSL2_TYPE]
    found = enumerate_type(G, cls)
    rep.add("90 reduced Nielsen classes", len(found) == 90, "found %d" % len(found))
    s = find_seed(G)
    if s is None:
        rep.add("seed tuple", False, "no generating tuple of the type")
        return rep
    orbit = braid_orbit(G, s)
    rep.artifacts["seed"] = list(s)
    rep.add("braid orbit is transitive", len(orbit) == len(found) and
            {p.rep for p in orbit.points} == {c.rep for c in found}, "orbit size %d" % len(orbit))
    cover = cover_analysis(orbit)
    widths = cover.widths()
    rep.artifacts["cusp_widths"] = widths
    rep.artifacts["fixed_points"] = cover.fixedPoints
    rep.add("d_1728 fixed-point free", cover.fixedPoints["d_1728"] == 0,
            "fixed points %d" % cover.fixedPoints["d_1728"])
    rep.add("17 cusps", len(widths) == 17, "widths %s" % widths)
    rep.add("genus 0", cover.genus == 0, "genus %d" % cover.genus)
    rep.add("five cusps of width 4", widths.count(4) == 5, "%d" % widths.count(4))
    rep.timing["orbit"] = time.perf_counter() - t1

    t1 = time.perf_counter()
    g = tuple_make([G.matrix(x) for x in s])
    sp = parabolic_space(g)
    expect, applies = expected_dim(g)
    rep.add("dim W = 2", sp.dim_w == 2, "dim H = %d, dim E = %d, dim W = %d"
            % (sp.dim_h, sp.dim_e, sp.dim_w))
    rep.add("dimension formula", applies and expect == sp.dim_w,
            "formula %d, applies %s" % (expect, applies))
    gens = cusp_generators(G, orbit, s)
    rep.add("17 cusp generators", len(gens) == 17 and sum(gens.widths) == len(orbit),
            "widths sum %d" % sum(gens.widths))
    try:
        bm = bmatrices(G, s, gens, g, sp, max_prime=None)
    except ArithmeticError as exc:
        rep.add("cusp matrices", False, str(exc))
        return rep
    rep.timing["cusp_matrices"] = time.perf_counter() - t1
    kinds, pairs = _census(bm, gens.widths)
    n_t, n_h = kinds.count("transvection"), kinds.count("homology")
    w = omega()
    hom_ok = all(c.eigenvalue in (w, w * w) for c in bm.classes() if c.kind == "homology")
    rep.add("12 transvections and 5 homologies", n_t == 12 and n_h == 5 and hom_ok,
            "%d transvections, %d homologies" % (n_t, n_h),
            {"kinds": kinds})
    w4 = [k for wd, k in zip(gens.widths, kinds) if wd == 4]
    rep.add("width-4 cusps: 4 transvections, 1 homology",
            w4.count("transvection") == 4 and w4.count("homology") == 1, str(w4))
    rep.add("product of b_j is I", bm.product.is_identity(), "", _mat_json(bm.product))
    dens = sorted(bm.denominators())
    rep.add("denominators in {2,3,5,7}", set(dens) <= {2, 3, 5, 7}, "support %s" % dens)
    rep.scalars = list(bm.scalars)
    rep.artifacts["cusps"] = [
        {"width": wd, "word": word_str(wo), "braid": str(br) or "1", "h": h,
         "scalar_power": k, "kind": kd, "b": _mat_json(b)}
        for wd, wo, br, h, k, kd, b in zip(gens.widths, gens.words, gens.braidWords,
                                            gens.twists, bm.scalars, kinds, bm.mats)]

    pair, poly = _trace_field_pair(bm.mats)
    rep.add("trace of some b_i b_j generates K", pair is not None,
            "pair %s, minimal polynomial %s" % (pair and (pair[0] + 1, pair[1] + 1),
                                                poly and _poly_str(poly)))

    t1 = time.perf_counter()
    rows = residual_commutators(bm.mats, pmax, seed)
    bad = [r["p"] for r in rows if not r["ok"]]
    rep.add("residual commutators for 11 <= p <= %d" % pmax, not bad,
            "%d primes checked" % len(rows), bad or None)
    rep.artifacts["residual"] = [{"p": r["p"], "p_mod_21": r["p_mod_21"],
                                  "split_in_K": r["split_in_K"], "factors": len(r["factors"]),
                                  "pairs": [x["pair"] for x in r["factors"]]} for r in rows]
    rep.artifacts["split_primes"] = [r["p"] for r in rows if r["split_in_K"]]
    rep.timing["residual"] = time.perf_counter() - t1

    if full_image_p:
        t1 = time.perf_counter()
        try:
            order, info = residual_image_order(bm.mats, full_image_p, seed)
            target = psl2_order(full_image_p ** 2)
            rep.add("residual image at p = %d is PSL_2(%d)" % (full_image_p, full_image_p ** 2),
                    order == target, "order %d, expected %d" % (order, target))
            rep.artifacts["full_image"] = dict(info, order=order)
        except ValueError as exc:
            rep.add("residual image at p = %d" % full_image_p, False, str(exc))
        rep.timing["full_image"] = time.perf_counter() - t1

    if rebase:
        t1 = time.perf_counter()
        root = 1 if len(orbit) > 1 else 0
        s2 = _lift_point(G, orbit, root, cls[-1])
        g2 = tuple_make([G.matrix(x) for x in s2])
        gens2 = cusp_generators(G, orbit, s2, root)
        bm2 = bmatrices(G, s2, gens2, g2, max_prime=None)
        kinds2, pairs2 = _census(bm2, gens2.widths)
        rep.add("census invariant under rebasing", sorted(pairs2) == sorted(pairs),
                "root %d" % root, None if sorted(pairs2) == sorted(pairs) else pairs2)
        rep.timing["rebase"] = time.perf_counter() - t1
    rep.timing["total"] = time.perf_counter() - t0
    return rep
