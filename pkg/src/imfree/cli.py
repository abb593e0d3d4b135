"""Command-line front end.

Exit codes: 0 = pass/complete, 1 = mismatch or counterexample found,
2 = usage or file error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import families, search
from .cache import CacheRecord, ResultCache, pattern_key, resolve_cache_path
from .families import DomainError
from .graphs import GridParseError, OrderedBipartiteGraph
from .minor import contains, parse_pattern
from .structure import classify, reduce


def _load_graph(path: str) -> OrderedBipartiteGraph:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return OrderedBipartiteGraph.from_json(text)
    return OrderedBipartiteGraph.from_grid(text)


def _pattern_arg(text: str) -> OrderedBipartiteGraph:
    """"Kr,s" shorthand, else a grid/JSON file path."""
    try:
        return parse_pattern(text)
    except ValueError:
        return _load_graph(text)


def _emit_graph(g: OrderedBipartiteGraph, fmt: str) -> None:
    print(g.to_json() if fmt == "json" else g.to_grid())


def _blocks_text(blocks) -> str:
    return " ".join(f"[{a + 1}..{b}]" for a, b in blocks)


def _cmd_check(args) -> int:
    g = _load_graph(args.graph)
    pattern = _pattern_arg(args.pattern)
    w = contains(g, pattern, allow_transpose=not args.no_transpose)
    if w is None:
        print("avoided")
    else:
        orient = " (as transpose)" if w.transposed else ""
        print(f"contained{orient}")
        print(f"  row blocks: {_blocks_text(w.row_blocks)}")
        print(f"  col blocks: {_blocks_text(w.col_blocks)}")
    return 0


def _cmd_ex(args) -> int:
    pattern = _pattern_arg(args.pattern)
    allow_transpose = not args.no_transpose
    cache_path = resolve_cache_path(args.cache)
    cache = ResultCache(cache_path) if cache_path else None
    if cache is not None:
        rec = cache.lookup(args.p, args.q, pattern, allow_transpose)
        if rec is not None:
            _print_ex(args, rec.max_edges, True, cached=True)
            return 0
    opts = search.SearchOptions(
        time_limit=args.time_limit, enumerate_all=args.enumerate_all
    )
    res = search.ex_search(args.p, args.q, pattern, opts, allow_transpose)
    _print_ex(args, res.max_edges, res.proven, witnesses=res.witnesses)
    if cache is not None and res.proven:
        cache.append(
            CacheRecord(
                p=args.p,
                q=args.q,
                pattern=pattern_key(pattern),
                allow_transpose=allow_transpose,
                max_edges=res.max_edges,
                proven=res.proven,
                elapsed_ms=int(res.elapsed * 1000),
            )
        )
    return 0


def _print_ex(args, max_edges, proven, cached=False, witnesses=None) -> None:
    if args.format == "json":
        obj = {"p": args.p, "q": args.q, "max_edges": max_edges, "proven": proven}
        if cached:
            obj["cached"] = True
        if witnesses:
            obj["witnesses"] = [json.loads(w.to_json()) for w in witnesses]
        print(json.dumps(obj))
        return
    status = "proven" if proven else "not proven: timed out"
    suffix = ", cached" if cached else ""
    print(f"max_edges = {max_edges} ({status}{suffix})")
    if witnesses and args.enumerate_all:
        print(f"{len(witnesses)} extremal graph(s) up to equivalence:")
        for w in witnesses:
            print(w.to_grid())
            print()


def _cmd_construct(args) -> int:
    fam = args.family
    if fam in ("H", "G", "K"):
        if args.p is None or args.q is None or args.ell is None:
            raise DomainError(f"family {fam} needs --p, --q and --ell")
        builder = {
            "H": families.family_H,
            "G": families.family_G,
            "K": families.family_K3,
        }[fam]
        g = builder(args.p, args.q, args.ell)
    elif fam in ("R", "S"):
        if args.n is None:
            raise DomainError(f"family {fam} needs --n")
        g = families.graph_R(args.n) if fam == "R" else families.graph_S(args.n)
    else:  # complete
        if args.p is None or args.q is None:
            raise DomainError("family complete needs --p and --q")
        g = families.complete(args.p, args.q)
    _emit_graph(g, args.format)
    return 0


def _cmd_reduce(args) -> int:
    g = _load_graph(args.graph)
    red, log = reduce(g)
    _emit_graph(red, args.format)
    for step in log.steps:
        name = f"a{step.index + 1}" if step.side == "A" else f"b{step.index + 1}"
        print(f"removed {name} ({step.rule})")
    for note in log.notes:
        print(f"note: {note}")
    return 0


def _cmd_classify(args) -> int:
    g = _load_graph(args.graph)
    c = classify(g)
    if c.kind == "contains":
        print("contains K_{2,2} as an interval minor")
        print(f"  row blocks: {_blocks_text(c.witness.row_blocks)}")
        print(f"  col blocks: {_blocks_text(c.witness.col_blocks)}")
        return 0
    if c.kind == "free":
        t = c.transform
        flags = [
            name
            for name, on in (
                ("reverse-rows", t.reverse_rows),
                ("reverse-cols", t.reverse_cols),
                ("transpose", t.transpose),
            )
            if on
        ]
        if c.family == "X":
            print("free: degenerate three-row form (outer rows pendant)")
            print(f"  transform: {'+'.join(flags) if flags else 'identity'}")
            return 0
        print(f"free: embeds into {c.family}_{c.n}")
        print(f"  transform: {'+'.join(flags) if flags else 'identity'}")
        print(f"  row map: {' '.join(f'a{i + 1}' for i in c.row_map)}")
        print(f"  col map: {' '.join(f'b{j + 1}' for j in c.col_map)}")
        return 0
    print(f"UNCLASSIFIED: {c.reason}")
    return 1


def _cmd_matchings(args) -> int:
    pattern = _pattern_arg(args.pattern)
    result = search.enumerate_matchings(args.n, pattern)
    print(
        f"{len(result.matchings)} matching(s) of size {args.n} avoid the "
        f"pattern, in {result.class_count} equivalence class(es)"
    )
    for rep in result.class_representatives:
        print("  class representative: " + "|".join(rep.to_grid().split("\n")[1:]))
    return 0


def _print_report(report, fmt: str) -> None:
    if fmt == "json":
        obj = {
            "suite": report.suite,
            "cells": [vars(c) for c in report.cells],
            "mismatches": len(report.mismatches),
            "inconclusive": len(report.inconclusive),
        }
        print(json.dumps(obj))
        return
    for cell in report.cells:
        mark = "ok" if cell.ok else "MISMATCH"
        if not cell.proven:
            mark = "INCONCLUSIVE (timed out)"
        line = f"{cell.label}: got {cell.actual} [{mark}]"
        if cell.detail:
            line += f" -- {cell.detail}"
        print(line)
    print(
        f"{report.suite}: {len(report.cells)} checks, "
        f"{len(report.mismatches)} mismatch(es), "
        f"{len(report.inconclusive)} inconclusive"
    )


def _cmd_verify(args) -> int:
    t0 = time.monotonic()
    report = search.verify_suite(
        args.suite, args.p_max, args.q_max, args.ell_max, args.time_limit
    )
    _print_report(report, args.format)
    print(f"elapsed: {time.monotonic() - t0:.1f}s")
    return 0 if report.passed else 1


def _cmd_probe(args) -> int:
    report = search.conjecture_probe(args.ell, args.n_max, args.time_limit)
    _print_report(report, args.format)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="imfree",
        description="Interval-minor toolkit: containment, families, exact "
        "extremal search, and structure classification for ordered "
        "bipartite graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("grid", "json"), default="grid")

    p = sub.add_parser("check", help="decide interval-minor containment")
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--no-transpose", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("ex", help="exact extremal edge count by search")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--enumerate-all", action="store_true")
    p.add_argument("--no-transpose", action="store_true")
    p.add_argument("--cache")
    add_format(p)
    p.set_defaults(func=_cmd_ex)

    p = sub.add_parser("construct", help="build a named family member")
    p.add_argument(
        "--family", required=True, choices=("H", "G", "K", "R", "S", "complete")
    )
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--n", type=int)
    add_format(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("reduce", help="remove reducible vertices")
    p.add_argument("--graph", required=True)
    add_format(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("classify", help="run the structure classifier")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("matchings", help="enumerate pattern-free matchings")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", default="K2,2")
    p.set_defaults(func=_cmd_matchings)

    p = sub.add_parser("verify", help="verify closed forms against search")
    p.add_argument(
        "--suite", required=True, choices=("k2", "k3", "bounds", "structure")
    )
    p.add_argument("--p-max", type=int, default=4)
    p.add_argument("--q-max", type=int, default=4)
    p.add_argument("--ell-max", type=int, default=4)
    p.add_argument("--time-limit", type=float)
    add_format(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("probe", help="probe the balanced-case conjecture")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--time-limit", type=float)
    add_format(p)
    p.set_defaults(func=_cmd_probe)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, GridParseError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
