"""Command-line front end.

Subcommands: parse, analyze, fraction, flype, symmetry, periodicity,
render.  Diagrams are read as PD codes from a file or stdin ("-");
reports are deterministic JSON, trees can also be rendered as DOT.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import KnotError, BudgetExceeded
from .diagram import parse_pd
from .circles import decompose, essential_family
from .trees import canonical_tree, essential_tree
from .rational import eval_cf, expand_homogeneous, parse_fraction, parse_terms
from .flypes import (available_flypes, apply_flype, flype_closure,
                     flype_equivalent, flype_orbits, FlypeMove)
from .periodicity import (projection_symmetries, periodicity_report,
                          seifert_report, AtomTree)


def _dump(obj):
    print(json.dumps(obj, sort_keys=True, indent=2))


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_diagram(path):
    return parse_pd(_read_text(path))


def _budget(args):
    if args.budget is not None:
        return args.budget
    return int(os.environ.get("KNOT_BUDGET", "10000"))


def _diagram_info(d):
    return {
        "crossings": d.n,
        "pd": d.serialize_pd(),
        "components": len(d.components),
        "alternating": d.is_alternating(),
        "reduced": d.is_reduced(),
        "prime": d.is_prime(),
    }


def _region_info(r):
    out = {"kind": r.kind, "crossings": sorted(r.crossings)}
    if r.kind == "TBD":
        out["weights"] = [s * len(cr) for cr, s in r.chains]
        out["total_weight"] = sum(s * len(cr) for cr, s in r.chains)
        out["valency"] = len(r.holes)
    return out


def _cmd_parse(args):
    _dump(_diagram_info(_load_diagram(args.input)))


def _cmd_analyze(args):
    d = _load_diagram(args.input)
    dec = decompose(d)
    ess = essential_family(d)
    _dump({
        "diagram": _diagram_info(d),
        "canonical_circles": [sorted(g.cut_cycle)
                              for g in dec.family.circles],
        "essential_circles": [sorted(g.cut_cycle) for g in ess.circles],
        "regions": [_region_info(r) for r in dec.regions],
        "canonical_tree": canonical_tree(d).to_json(),
        "essential_tree": essential_tree(d).to_json(),
    })


def _cmd_fraction(args):
    if args.action == "eval":
        print(str(eval_cf(parse_terms(args.value))))
    else:
        f = parse_fraction(args.value)
        print(json.dumps(expand_homogeneous(f)))


def _move_json(m):
    return {
        "tbd": m.tbd,
        "active_crossing": m.active_crossing,
        "source_twist": m.source_twist,
        "target_twist": m.target_twist,
        "flipped_tangle": sorted(m.flipped_tangle),
    }


def _cmd_flype(args):
    d = _load_diagram(args.input)
    if args.action == "list":
        _dump({"moves": [_move_json(m) for m in available_flypes(d)],
               "orbits": [{"tbd": o.tbd,
                           "twist_regions": [
                               {"index": i, "crossings": sorted(cr),
                                "weight": w}
                               for i, cr, w in o.twist_regions]}
                          for o in flype_orbits(d)]})
    elif args.action == "apply":
        mv = json.loads(args.move)
        m = FlypeMove(mv["tbd"], mv["active_crossing"],
                      mv["source_twist"], mv["target_twist"],
                      frozenset(mv["flipped_tangle"]))
        print(apply_flype(d, m).serialize_pd())
    elif args.action == "closure":
        res = flype_closure(d, _budget(args))
        _dump({"count": len(res.diagrams),
               "truncated": res.truncated,
               "diagrams": sorted(x.serialize_pd() for x in res.diagrams)})
    else:
        d2 = _load_diagram(args.other)
        _dump({"equivalent": flype_equivalent(d, d2, _budget(args))})


def _cmd_symmetry(args):
    d = _load_diagram(args.input)
    syms = projection_symmetries(d)
    _dump({"symmetries": [
        {"order": s.order, "strict": s.strict,
         "fixed_cells": [sorted(f) for f in s.fixed_cells]}
        for s in syms],
        "seifert": {"circles": seifert_report(d).circles,
                    "genus": seifert_report(d).genus}})


def _load_atoms(path):
    data = json.loads(_read_text(path))
    return AtomTree(tuple(data["vertices"]),
                    tuple(tuple(e) for e in data["edges"]))


def _cmd_periodicity(args):
    d = _load_diagram(args.input)
    atoms = _load_atoms(args.atoms) if args.atoms else None
    rep = periodicity_report(d, args.q, atoms, _budget(args))
    out = {"q": rep.q, "verdict": rep.verdict,
           "reasons": list(rep.reasons), "truncated": rep.truncated}
    if rep.witness is not None:
        out["witness"] = rep.witness.serialize_pd()
        out["symmetry_order"] = rep.symmetry.order
    _dump(out)


def _cmd_render(args):
    d = _load_diagram(args.input)
    t = essential_tree(d) if args.tree == "essential" else canonical_tree(d)
    if args.format == "dot":
        print(t.to_dot())
    else:
        _dump(t.to_json())


def build_parser():
    p = argparse.ArgumentParser(prog="altknot")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, with_input=True):
        if with_input:
            sp.add_argument("input", help="PD file or - for stdin")
        sp.add_argument("--budget", type=int, default=None)
        sp.add_argument("--format", choices=["json", "dot"],
                        default="json")

    sp = sub.add_parser("parse")
    add_common(sp)
    sp.set_defaults(func=_cmd_parse)

    sp = sub.add_parser("analyze")
    add_common(sp)
    sp.set_defaults(func=_cmd_analyze)

    sp = sub.add_parser("fraction")
    sp.add_argument("action", choices=["eval", "expand"])
    sp.add_argument("value")
    sp.set_defaults(func=_cmd_fraction)

    sp = sub.add_parser("flype")
    sp.add_argument("action",
                    choices=["list", "apply", "closure", "equivalent"])
    add_common(sp)
    sp.add_argument("--move", help="JSON move descriptor for apply")
    sp.add_argument("--other", help="second diagram for equivalent")
    sp.set_defaults(func=_cmd_flype)

    sp = sub.add_parser("symmetry")
    add_common(sp)
    sp.add_argument("--strict", dest="strict", action="store_true",
                    default=True)
    sp.add_argument("--no-strict", dest="strict", action="store_false")
    sp.set_defaults(func=_cmd_symmetry)

    sp = sub.add_parser("periodicity")
    add_common(sp)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--atoms", default=None)
    sp.set_defaults(func=_cmd_periodicity)

    sp = sub.add_parser("render")
    add_common(sp)
    sp.add_argument("--tree", choices=["canonical", "essential"],
                    default="canonical")
    sp.set_defaults(func=_cmd_render)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except BudgetExceeded as exc:
        _dump({"error": type(exc).__name__, "message": str(exc)})
        return 1
    except KnotError as exc:
        _dump({"error": type(exc).__name__, "message": str(exc)})
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
