"""Command-line entry point: ``turanlab <command> ...``.

Exit codes: 0 success, 1 invariant violation or failed acceptance check,
2 usage or input error, 3 search refused as too large.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from .berge import berge_sandwich_check, emit_hypergraph, ex_berge
from .cache import ResultCache
from .constructions import (
    EdgeColoring,
    build,
    designated_forbidden,
    format_colored,
    is_free,
    parse_construction,
    parse_host,
)
from .counting import count_colored, count_vector
from .errors import (
    GraphFormatError,
    InfeasibleError,
    InvalidColoringError,
    InvalidConstructionError,
    InvalidPatternError,
    InvalidStepError,
    InvariantViolation,
)
from .graph import emit_graph6
from .patterns import format_pattern, parse_pattern, parse_pattern_list
from .search import (
    DEFAULT_NODE_BUDGET,
    ENUMERATION_CAP,
    SearchProblem,
    SearchResult,
    bipartite_scan,
    cex_multi,
    ex_multi,
    free_graphs,
)
from .symmetrization import SymmetrizationState, export_trace, run_pipeline


class UsageError(Exception):
    pass


def _emit(args, payload: dict, table: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(table))


def _progress(args, **fields) -> None:
    if getattr(args, "progress", False):
        print(json.dumps(fields, sort_keys=True), file=sys.stderr, flush=True)


# ---------------------------------------------------------------------------


def cmd_count(args) -> int:
    host = parse_host(args.host)
    patterns = parse_pattern_list(args.patterns)
    if isinstance(host, EdgeColoring):
        vec = count_colored(patterns, host)
        host_text = format_colored(host)
    else:
        vec = count_vector(patterns, host)
        host_text = emit_graph6(host)
    names = [format_pattern(p) for p in patterns]
    table = [f"{name:<12} {c}" for name, c in zip(names, vec)]
    if len(patterns) > 1:
        table.append(f"{'total':<12} {vec.total}")
    else:
        table = [str(vec.total)]
    _emit(args, {"host": host_text, "patterns": names, "counts": list(vec), "total": vec.total}, table)
    return 0


def _patterns_for(args) -> list:
    patterns = parse_pattern_list(args.patterns)
    if args.k is not None:
        if not args.colored:
            raise UsageError("--k only applies with --colored")
        if len(patterns) == 1 and args.k > 1:
            patterns = patterns * args.k
        elif len(patterns) != args.k:
            raise UsageError(f"--k {args.k} but {len(patterns)} patterns given")
    return patterns


def cmd_extremal(args) -> int:
    patterns = _patterns_for(args)
    forbidden = parse_pattern(args.forbid)
    p = SearchProblem(args.n, tuple(patterns), forbidden, "colored" if args.colored else "monochrome")
    cache = None if args.no_cache else ResultCache(args.cache)
    key = {**p.key(), "cap": args.cap, "budget": args.budget}
    result = None
    if cache is not None:
        rec = cache.get(key)
        if rec is not None:
            result = SearchResult.from_dict(rec["payload"])
            _progress(args, stage="cache", hit=True, exact=result.exact)
    if result is None:
        t0 = time.perf_counter()
        graphs = free_graphs(p.n, forbidden, args.cap)
        _progress(args, stage="enumerate", n=p.n, graphs=len(graphs), elapsed=round(time.perf_counter() - t0, 3))
        if args.colored:
            result = cex_multi(p, args.cap, args.budget)
        else:
            result = ex_multi(p, args.cap)
        _progress(
            args,
            stage="optimize",
            value=result.value,
            colorings_explored=result.colorings_explored,
            elapsed=round(time.perf_counter() - t0, 3),
        )
        if cache is not None:
            cache.put(key, result.to_dict(), result.exact)
    d = result.to_dict()
    table = [
        str(result.value),
        f"  witness   {result.witness_graph}"
        + (f" colours {''.join(map(str, result.witness_coloring))}" if result.witness_coloring else ""),
        f"  exact     {result.exact}",
        f"  graphs    {result.graphs_enumerated}",
    ]
    if args.colored:
        table.append(f"  nodes     {result.colorings_explored}")
    _emit(args, d, table)
    return 0


def cmd_construct(args) -> int:
    spec = parse_construction(args.spec)
    obj = build(spec)
    forb = designated_forbidden(spec)
    payload = {"spec": args.spec, "colored": isinstance(obj, EdgeColoring)}
    if isinstance(obj, EdgeColoring):
        payload["graph6"] = emit_graph6(obj.base)
        payload["host"] = format_colored(obj)
        payload["colors"] = list(obj.colors)
        base = obj.base
    else:
        payload["graph6"] = emit_graph6(obj)
        base = obj
    payload["order"] = base.order
    payload["edges"] = base.num_edges
    table = [f"{args.spec}: order {base.order}, {base.num_edges} edges", f"  graph6    {payload['graph6']}"]
    if "host" in payload:
        table.append(f"  coloured  {payload['host']}")
    if forb is not None:
        free = is_free(spec, forb)
        payload["forbidden"] = format_pattern(forb)
        payload["free"] = free
        table.append(f"  {format_pattern(forb)}-free {free}")
    if args.patterns:
        patterns = parse_pattern_list(args.patterns)
        vec = count_colored(patterns, obj) if isinstance(obj, EdgeColoring) else count_vector(patterns, obj)
        payload["patterns"] = [format_pattern(p) for p in patterns]
        payload["counts"] = list(vec)
        payload["total"] = vec.total
        table.append(f"  counts    {list(vec)} total {vec.total}")
    _emit(args, payload, table)
    return 0


def cmd_scan(args) -> int:
    patterns = parse_pattern_list(args.patterns)
    scan = bipartite_scan(args.n, patterns)
    table = [f"x={scan.best_x} value={scan.value}"] + [f"  K_{{{x},{args.n - x}}}  {v}" for x, v in scan.table]
    payload = {
        "n": args.n,
        "patterns": [format_pattern(p) for p in patterns],
        "best_x": scan.best_x,
        "value": scan.value,
        "table": [{"x": x, "value": v} for x, v in scan.table],
    }
    _emit(args, payload, table)
    return 0


def cmd_berge(args) -> int:
    f = parse_pattern(args.forbid)
    res = ex_berge(args.n, args.r, f)
    payload = res.to_dict()
    table = [str(res.value), "  witness:"] + ["    " + line for line in emit_hypergraph(res.witness).splitlines()]
    if args.sandwich:
        rep = berge_sandwich_check(args.n, args.r, f)
        payload["sandwich"] = {
            "clique_ex": rep.clique_ex,
            "berge_ex": rep.berge_ex,
            "colored_ex": rep.colored_ex,
            "additive_bound": rep.additive_bound,
            "holds": rep.holds,
        }
        table += rep.lines()
    _emit(args, payload, table)
    return 0


def cmd_symmetrize(args) -> int:
    host = parse_host(args.host)
    patterns = parse_pattern_list(args.patterns)
    if not isinstance(host, EdgeColoring):
        host = EdgeColoring.monochrome(host, 1, len(patterns))
    elif host.k < len(patterns):
        host = EdgeColoring(host.base, host.colors, len(patterns))
    state = SymmetrizationState(host, tuple(patterns), args.m)
    final, packs, settled = run_pipeline(state)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(export_trace(final))
    payload = {
        "initial": state.objective,
        "final": final.objective,
        "host": format_colored(final.coloring),
        "packs": packs.to_dict(),
        "settled": settled,
        "steps": [json.loads(line) for line in final.trace_lines()],
    }
    table = [
        f"objective {state.objective} -> {final.objective} in {len(final.trace)} steps",
        f"  host      {payload['host']}",
        f"  small     {packs.small}",
        f"  medium    {packs.medium}",
        f"  large     {packs.large}",
        f"  settled   {settled}",
    ]
    _emit(args, payload, table)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_suite

    if args.suite != "paper":
        raise UsageError(f"unknown suite {args.suite!r}")
    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run_suite(extended=args.extended, only=only)
    payload = {
        "criteria": [
            {"number": c.number, "name": c.name, "passed": c.passed, "detail": c.detail, "elapsed": c.elapsed}
            for c in results
        ],
        "passed": all(c.passed for c in results),
    }
    _emit(args, payload, [c.line() for c in results])
    return 0 if payload["passed"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="turanlab", description="Exact generalized Turán computations at small n.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="copy counts in a host")
    p.add_argument("--host", required=True, help="graph6, <graph6>:<colours>, or a construction string")
    p.add_argument("--patterns", required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("extremal", parents=[common], help="exact ex or cex by exhaustive search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--forbid", required=True)
    p.add_argument("--colored", action="store_true")
    p.add_argument("--k", type=int)
    p.add_argument("--cap", type=int, default=ENUMERATION_CAP, help="largest order to enumerate")
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET, help="colouring search nodes per host")
    p.add_argument("--cache", help="result store path (default: $TURANLAB_CACHE or ~/.cache/turanlab)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--progress", action="store_true", help="JSON progress lines on stderr")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("construct", parents=[common], help="build and evaluate a construction")
    p.add_argument("--spec", required=True)
    p.add_argument("--patterns")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("scan-bipartite", parents=[common], help="sum of counts over K_{x,n-x}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--patterns", required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("berge", parents=[common], help="ex_r(n, Berge-F) by branch and bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--forbid", required=True)
    p.add_argument("--sandwich", action="store_true", help="also check the graph-side bounds")
    p.set_defaults(func=cmd_berge)

    p = sub.add_parser("symmetrize", parents=[common], help="run the symmetrization engine")
    p.add_argument("--host", required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--m", type=int, required=True, help="forbidden clique order")
    p.add_argument("--trace", help="write step records (JSON lines) to this file")
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--suite", default="paper")
    p.add_argument("--extended", action="store_true")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_verify)
    return parser


_USAGE_ERRORS = (
    UsageError,
    GraphFormatError,
    InvalidPatternError,
    InvalidConstructionError,
    InvalidColoringError,
    InvalidStepError,
)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
