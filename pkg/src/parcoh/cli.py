"""Command-line front end.

Exit status: 0 success or PASS, 1 a check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .braidact import braid_parse, monodromy, tuple_act
from .exactla import Mat
from .exactnum.finite import DEFAULT_SEED
from .fingrp import group_from_json
from .hurworb import (braid_orbit, cover_analysis, enumerate_type, orbit_to_dot)
from .locsys import parabolic_space, tuple_from_json, tuple_to_json


class InputError(Exception):
    pass


def _load_json(path, what):
    if not os.path.isfile(path):
        raise InputError("%s file %s does not exist" % (what, path))
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError("%s: malformed JSON at line %d column %d: %s"
                         % (path, exc.lineno, exc.colno, exc.msg)) from None


def _load_tuple(path):
    obj = _load_json(path, "tuple")
    try:
        return tuple_from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError("%s: %s" % (path, exc)) from None


def _load_moves(path, strands, dim):
    obj = _load_json(path, "moves")
    if not isinstance(obj, list):
        raise InputError("%s: expected a list of moves" % path)
    moves = []
    for k, m in enumerate(obj):
        where = "%s: move %d" % (path, k + 1)
        if not isinstance(m, dict) or "w" not in m:
            raise InputError("%s: needs key 'w'" % where)
        try:
            w = braid_parse(m["w"], strands)
        except ValueError as exc:
            raise InputError("%s: %s" % (where, exc)) from None
        h = m.get("h", "identity")
        if h == "identity" or h is None:
            h = None
        else:
            try:
                h = Mat.from_json(h)
            except (ValueError, KeyError, TypeError) as exc:
                raise InputError("%s: h: %s" % (where, exc)) from None
            if h.rows != dim or h.cols != dim:
                raise InputError("%s: h has shape %dx%d, expected %dx%d"
                                 % (where, h.rows, h.cols, dim, dim))
        moves.append((w, h))
    return moves


def _vec_json(v):
    return [x.to_json() for x in v]


def _print_json(obj):
    print(json.dumps(obj, indent=1, sort_keys=True))


# -- subcommands ---------------------------------------------------------------------

def cmd_wg(args):
    g = _load_tuple(args.tuple)
    sp = parabolic_space(g)
    if args.json:
        _print_json(sp.report())
        return 0
    rep = sp.report()
    print("r = %d, dim V = %d, conductor %d" % (g.r, g.dim, g.n))
    print("dim H = %d" % sp.dim_h)
    print("dim E = %d" % sp.dim_e)
    print("dim W = %d" % sp.dim_w)
    print("formula = %d (%s)" % (rep["formula"], "applies" if rep["formula_applies"]
                                 else "invariants nonzero, does not apply"))
    for name, vecs in (("H", sp.hBasis), ("E", sp.eBasis), ("W reps", sp.wReps)):
        print("%s basis:" % name)
        for v in vecs:
            print("  (" + ", ".join(str(x) for x in v) + ")")
    return 0


def cmd_braid_act(args):
    g = _load_tuple(args.tuple)
    try:
        w = braid_parse(args.word, g.r)
    except ValueError as exc:
        raise InputError("--word: %s" % exc) from None
    _print_json(tuple_to_json(tuple_act(g, w)))
    return 0


def cmd_monodromy(args):
    g = _load_tuple(args.tuple)
    moves = _load_moves(args.moves, g.r, g.dim)
    try:
        mats = monodromy(g, moves)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _print_json([m.to_json() for m in mats])
    return 0


def cmd_orbit(args):
    obj = _load_json(args.group, "group")
    try:
        G = group_from_json(obj)
    except (ValueError, KeyError, TypeError, OverflowError) as exc:
        raise InputError("%s: %s" % (args.group, exc)) from None
    labels = [x.strip() for x in args.type.split(",") if x.strip()]
    try:
        classes = [G.class_by_label(x) for x in labels]
    except KeyError as exc:
        raise InputError("--type: %s" % exc.args[0]) from None
    found = enumerate_type(G, classes)
    out = {"group_order": G.order, "type": labels, "classes": len(found)}
    if found:
        orbit = braid_orbit(G, found[0].rep)
        out["orbit_size"] = len(orbit)
        out["transitive"] = len(orbit) == len(found)
        out["perms"] = orbit.perms
        if len(labels) == 4:
            cov = cover_analysis(orbit)
            out["cover"] = cov.to_json()
        if args.dot:
            with open(args.dot, "w") as fh:
                fh.write(orbit_to_dot(orbit))
    if args.json:
        _print_json(out)
    else:
        print("group order %d" % out["group_order"])
        print("reduced Nielsen classes of type %s: %d" % (",".join(labels), out["classes"]))
        if found:
            print("orbit size %d (%s)" % (out["orbit_size"],
                                           "transitive" if out["transitive"] else "not transitive"))
            if "cover" in out:
                c = out["cover"]
                print("cusps %d, widths %s" % (len(c["cusps"]),
                                               sorted(x["width"] for x in c["cusps"])))
                print("genus %d" % c["genus"])
                print("fixed points %s" % c["fixed_points"])
    return 0


def cmd_scenario(args):
    from .scenarios import scenario_picard, scenario_psl2
    if args.name == "picard":
        rep = scenario_picard()
    else:
        if args.pmax < 11:
            raise InputError("--pmax must be at least 11")
        rep = scenario_psl2(pmax=args.pmax, full_image_p=args.full_image_p or None,
                            rebase=not args.no_rebase, seed=args.seed)
    if args.json:
        _print_json(rep.to_json())
    else:
        print(rep.to_text())
        if args.name == "picard" and "matrices" in rep.artifacts:
            for k, m in enumerate(rep.artifacts["matrices"]):
                print("eta_%d = %s" % (k + 1, m))
    return 0 if rep.passed else 1


# -- parser ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="parcoh", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=1,
                   help="cap on internal parallelism (computations run sequentially)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="seed of the factorization PRNG")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("wg", help="parabolic cohomology of a tuple")
    s.add_argument("--tuple", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_wg)

    s = sub.add_parser("braid-act", help="act on a tuple by a braid word")
    s.add_argument("--tuple", required=True)
    s.add_argument("--word", required=True)
    s.set_defaults(func=cmd_braid_act)

    s = sub.add_parser("monodromy", help="W-matrices of a list of moves")
    s.add_argument("--tuple", required=True)
    s.add_argument("--moves", required=True)
    s.set_defaults(func=cmd_monodromy)

    s = sub.add_parser("orbit", help="Nielsen classes and the braid orbit of a type")
    s.add_argument("--group", required=True)
    s.add_argument("--type", required=True, help="comma-separated class labels")
    s.add_argument("--dot", help="write the orbit graph to this file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("scenario", help="run a reproduction")
    s.add_argument("name", choices=["picard", "psl2"])
    s.add_argument("--pmax", type=int, default=199)
    s.add_argument("--full-image-p", type=int, default=11,
                   help="prime for the full residual image (0 skips it)")
    s.add_argument("--no-rebase", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_scenario)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
