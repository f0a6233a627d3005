"""Command-line interface.

Exit codes: 0 the checked property holds, 1 it fails (the report carries a
witness), 2 bad input or a violated precondition.  Reports are JSON on
stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analysis, fileio, numerics
from .cmap import CombinatorialMap
from .constructors import DEFAULT_RESOLUTION, builtin_map, edwards_grid
from .errors import VennError
from .lifting import LiftOrders, lift, lift_times
from .render import render

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"cannot encode {type(x).__name__}")


def _emit(report: dict) -> None:
    print(json.dumps(report, default=_json_default, indent=2, sort_keys=True))


def _order(text: str | None):
    if text is None:
        return None
    return tuple(int(t) for t in text.split(","))


def cmd_construct(args) -> int:
    if args.kind == "circles":
        d = builtin_map(args.n)
    elif args.kind == "edwards":
        d = edwards_grid(args.n, args.resolution)
    else:
        if not args.input:
            raise VennError("construct lift needs --in FILE")
        d = fileio.load(args.input)
        if isinstance(d, CombinatorialMap):
            raise VennError("lifting works on grid diagrams; construct edwards gives one")
        if args.enter or args.leave:
            if args.times != 1:
                raise VennError("explicit --enter/--leave apply to a single lift")
            scope = d.scope
            d, _ = lift(d, LiftOrders(_order(args.enter) or scope, _order(args.leave) or scope))
        else:
            d, _ = lift_times(d, args.times)
    fileio.save(d, args.out)
    c = analysis.as_complex(d)
    _emit({"written": args.out, "name": d.name, "m": analysis.dimension(d), "n": c.n, "regions": analysis.region_count(d)})
    return EXIT_OK


def _base(d, name) -> dict:
    return {"diagram": name, "m": analysis.dimension(d), "n": len(analysis.scope_of(d))}


def cmd_check(args) -> int:
    d = fileio.load(args.file)
    name = getattr(d, "name", "") or args.file
    rep = _base(d, name)
    rep["check"] = args.which
    which = args.which
    if which == "venn":
        holds = analysis.is_venn(d)
        rep["census"] = analysis.as_complex(d).census()
        rep["witnesses"] = [s for s, k in rep["census"].items() if k != 1]
    elif which == "simple":
        holds = analysis.is_simple(d)
    elif which == "reducible":
        holds = analysis.is_reducible(d)
    elif which == "fully":
        holds, w = analysis.is_fully_reducible_bruteforce(d)
        rep["witnesses"] = [w] if w else []
    elif which == "thm2":
        n = rep["n"]
        rs = [args.r] if args.r is not None else list(range(2, n))
        per_r = {r: analysis.fully_reducible_via_r(d, r) for r in rs}
        brute, w = analysis.is_fully_reducible_bruteforce(d)
        rep.update({"via_r": per_r, "bruteforce": brute, "witnesses": [w] if w else []})
        rep["agrees"] = all(v == brute for v in per_r.values())
        holds = rep["agrees"]
    elif which == "thm3":
        t3 = analysis.theorem3_check(d)
        rep.update(vars(t3))
        holds = t3.consistent
    elif which == "thm4":
        t4 = analysis.theorem4_check(d)
        rep.update(vars(t4))
        holds = t4.implication_holds
    elif which == "cor1":
        rep["witnesses"] = analysis.corollary1_witnesses(d)
        holds = True
    else:
        holds = True
        rep.update(analysis.analyze(d, name).to_dict())
    rep["holds"] = holds
    _emit(rep)
    return EXIT_OK if holds else EXIT_FAIL


def _scan_rows(max_dim: int):
    from .corpus import corpus

    rows = []
    for name, d in corpus(max_dim):
        r = analysis.analyze(d, name)
        row = {
            "diagram": name,
            "m": r.m,
            "n": r.n,
            "regions": r.regions,
            "edges": r.edges,
            "venn": r.is_venn,
            "simple": r.is_simple,
            "fully_reducible": r.is_fully_reducible,
            "first_witness": r.witnesses[0] if r.witnesses else None,
        }
        row.update(r.flags)
        if r.n >= 2 and r.m is not None:
            row["conjecture1_applies"] = r.n <= r.m + 1
            row["bound_B"] = numerics.conj3_bound(r.m, r.n)
        rows.append(row)
    return rows


def cmd_conjecture(args) -> int:
    if args.which == "bound":
        table = numerics.conj3_coefficients(args.m)
        _emit({"m": args.m, "n": args.n, "coefficients": list(table.coefficients), "bound": numerics.conj3_bound(args.m, args.n)})
        return EXIT_OK
    if args.which == "detid":
        rows = [numerics.det_identity_check(m) for m in range(3, args.m_max + 1)]
        ok = all(r.equal for r in rows)
        _emit({"rows": [{"m": r.m, "lhs": r.lhs, "rhs": r.rhs, "equal": r.equal} for r in rows], "all_equal": ok})
        return EXIT_OK if ok else EXIT_FAIL
    if args.which == "recurrence":
        value = numerics.recurrence_edges(args.m, args.n)
        rep = {"m": args.m, "n": args.n, "edges": value, "bound": numerics.conj3_bound(args.m, args.n)}
        if not numerics.in_proven_regime(args.m, args.n):
            rep["warning"] = f"n > m + 1: outside the range the coefficients were fitted on"
        _emit(rep)
        return EXIT_OK
    rows = _scan_rows(args.max_dim)
    bad = [r["diagram"] for r in rows if r.get("theorem3") is False or r.get("theorem4") is False]
    counter = [r["diagram"] for r in rows if r.get("conjecture1_applies") and r["fully_reducible"] is False]
    _emit({"rows": rows, "theorem_failures": bad, "conjecture1_counter_evidence": counter})
    return EXIT_OK if not bad else EXIT_FAIL


def _slice(text: str | None):
    if text is None:
        return None
    axis, _, index = text.partition("=")
    return int(axis) - 1, int(index)


def cmd_render(args) -> int:
    d = fileio.load(args.file)
    svg = render(d, _slice(args.slice), labels=not args.no_labels)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="venndim", description="Generalized Venn diagrams: build, check, draw.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a diagram file")
    c.add_argument("kind", choices=("circles", "edwards", "lift"))
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    c.add_argument("--in", dest="input")
    c.add_argument("--times", type=int, default=1)
    c.add_argument("--enter", help="comma-separated window opening order (default: searched)")
    c.add_argument("--leave", help="comma-separated window closing order (default: searched)")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_construct)

    k = sub.add_parser("check", help="run an analysis on a diagram file")
    k.add_argument("file")
    k.add_argument("--which", default="report",
                   choices=("report", "venn", "simple", "reducible", "fully", "thm2", "thm3", "thm4", "cor1"))
    k.add_argument("--r", type=int)
    k.set_defaults(func=cmd_check)

    j = sub.add_parser("conjecture", help="edge-bound numerics and corpus scan")
    j.add_argument("which", choices=("bound", "detid", "recurrence", "scan"))
    j.add_argument("--m", type=int, default=3)
    j.add_argument("--n", type=int, default=5)
    j.add_argument("--m-max", type=int, default=12)
    j.add_argument("--max-dim", type=int, default=4)
    j.set_defaults(func=cmd_conjecture)

    r = sub.add_parser("render", help="draw a 2D diagram (or a 2D section) as SVG")
    r.add_argument("file")
    r.add_argument("--out")
    r.add_argument("--slice", help="AXIS=INDEX, axis counted from 1")
    r.add_argument("--no-labels", action="store_true")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (VennError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
