"""Symbolic pattern graphs (counted H_i and forbidden F) and their CLI grammar.

Grammar of a single pattern::

    K<r>  P<l>  C<l>  S<l>           clique, path, cycle, star (l = vertex count)
    Kb:a,b                           complete bipartite K_{a,b}
    M  Mprime  C4tail  F2            named five-vertex graphs
    Mt:t  Fn:n                       matching with t edges, star S_n plus leaf matching
    custom:<graph6>

A pattern list is comma separated; a bare integer continues the previous
token's parameter list, so ``Kb:3,3,K2`` is ``[Kb:3,3, K2]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import GraphFormatError, InvalidPatternError
from .graph import MAX_ORDER, SmallGraph, canonical_code, emit_graph6, parse_graph6

KINDS = (
    "Clique",
    "Path",
    "Cycle",
    "Star",
    "CompleteBipartite",
    "TwoMatchPlusIsolated",
    "PathPlusEdge",
    "CycleWithTail",
    "Fan2",
    "StarPlusMatching",
    "Matching",
    "Custom",
)


@dataclass(frozen=True)
class PatternSpec:
    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidPatternError(f"unknown pattern kind {self.kind!r}")

    def expand(self) -> SmallGraph:
        return pattern_expand(self)

    def __str__(self) -> str:
        return format_pattern(self)


def Clique(r: int) -> PatternSpec:
    return PatternSpec("Clique", (r,))


def Path(length: int) -> PatternSpec:
    return PatternSpec("Path", (length,))


def Cycle(length: int) -> PatternSpec:
    return PatternSpec("Cycle", (length,))


def Star(length: int) -> PatternSpec:
    return PatternSpec("Star", (length,))


def CompleteBipartite(a: int, b: int) -> PatternSpec:
    return PatternSpec("CompleteBipartite", (a, b))


def Matching(t: int) -> PatternSpec:
    return PatternSpec("Matching", (t,))


def StarPlusMatching(n: int) -> PatternSpec:
    return PatternSpec("StarPlusMatching", (n,))


def Custom(g: SmallGraph) -> PatternSpec:
    return PatternSpec("Custom", (g.order, tuple(g.edges())))


M = PatternSpec("TwoMatchPlusIsolated")
M_PRIME = PatternSpec("PathPlusEdge")
C4_TAIL = PatternSpec("CycleWithTail")
F2 = PatternSpec("Fan2")


def _check_order(spec: PatternSpec, n: int) -> None:
    if n > MAX_ORDER:
        raise InvalidPatternError(f"{spec} needs {n} vertices, above the {MAX_ORDER}-vertex cap")


def _int_params(spec: PatternSpec, count: int, minimum: int) -> tuple[int, ...]:
    if len(spec.params) != count or not all(isinstance(p, int) for p in spec.params):
        raise InvalidPatternError(f"{spec.kind} takes {count} integer parameter(s), got {spec.params!r}")
    if any(p < minimum for p in spec.params):
        raise InvalidPatternError(f"{spec.kind} parameters must be >= {minimum}, got {spec.params!r}")
    return spec.params


@lru_cache(maxsize=1024)
def pattern_expand(spec: PatternSpec) -> SmallGraph:
    """Deterministic labeled representative of ``spec``."""
    kind = spec.kind
    if kind == "Clique":
        (r,) = _int_params(spec, 1, 1)
        _check_order(spec, r)
        return SmallGraph.complete(r)
    if kind == "Path":
        (length,) = _int_params(spec, 1, 1)
        _check_order(spec, length)
        return SmallGraph.from_edges(length, ((i, i + 1) for i in range(length - 1)))
    if kind == "Cycle":
        (length,) = _int_params(spec, 1, 3)
        _check_order(spec, length)
        return SmallGraph.from_edges(length, ((i, (i + 1) % length) for i in range(length)))
    if kind == "Star":
        (length,) = _int_params(spec, 1, 1)
        _check_order(spec, length)
        return SmallGraph.from_edges(length, ((0, i) for i in range(1, length)))
    if kind == "CompleteBipartite":
        a, b = _int_params(spec, 2, 1)
        _check_order(spec, a + b)
        return SmallGraph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))
    if kind == "TwoMatchPlusIsolated":
        _int_params(spec, 0, 0)
        return SmallGraph.from_edges(5, [(0, 1), (2, 3)])
    if kind == "PathPlusEdge":
        _int_params(spec, 0, 0)
        return SmallGraph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    if kind == "CycleWithTail":
        _int_params(spec, 0, 0)
        return SmallGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)])
    if kind == "Fan2":
        _int_params(spec, 0, 0)
        return SmallGraph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    if kind == "StarPlusMatching":
        (n,) = _int_params(spec, 1, 1)
        _check_order(spec, n)
        edges = [(0, i) for i in range(1, n)]
        edges += [(2 * j + 1, 2 * j + 2) for j in range((n - 1) // 2)]
        return SmallGraph.from_edges(n, edges)
    if kind == "Matching":
        (t,) = _int_params(spec, 1, 1)
        _check_order(spec, 2 * t)
        return SmallGraph.from_edges(2 * t, ((2 * j, 2 * j + 1) for j in range(t)))
    if kind == "Custom":
        if len(spec.params) != 2:
            raise InvalidPatternError("Custom takes (order, edges)")
        order, edges = spec.params
        if not isinstance(order, int) or order < 0:
            raise InvalidPatternError(f"bad custom order {order!r}")
        _check_order(spec, order)
        try:
            return SmallGraph.from_edges(order, edges)
        except ValueError as exc:
            raise InvalidPatternError(str(exc)) from exc
    raise InvalidPatternError(f"unknown pattern kind {kind!r}")


def pattern_key(spec: PatternSpec) -> str:
    """Isomorphism-invariant key (hex canonical code)."""
    return canonical_code(pattern_expand(spec)).hex()


_SIMPLE = {"K": "Clique", "P": "Path", "C": "Cycle", "S": "Star"}
_NAMED = {"M": M, "Mprime": M_PRIME, "C4tail": C4_TAIL, "F2": F2}
_PARAM = {"Kb": "CompleteBipartite", "Mt": "Matching", "Fn": "StarPlusMatching"}


def parse_pattern(token: str) -> PatternSpec:
    tok = token.strip()
    if tok in _NAMED:
        return _NAMED[tok]
    if tok.startswith("custom:"):
        try:
            return Custom(parse_graph6(tok[len("custom:") :]))
        except GraphFormatError as exc:
            raise InvalidPatternError(f"bad custom pattern {tok!r}: {exc}") from exc
    m = re.fullmatch(r"([KPCS])(\d+)", tok)
    if m:
        spec = PatternSpec(_SIMPLE[m.group(1)], (int(m.group(2)),))
        pattern_expand(spec)
        return spec
    m = re.fullmatch(r"(Kb|Mt|Fn):(\d+(?:,\d+)*)", tok)
    if m:
        spec = PatternSpec(_PARAM[m.group(1)], tuple(int(x) for x in m.group(2).split(",")))
        pattern_expand(spec)
        return spec
    raise InvalidPatternError(f"cannot parse pattern {tok!r}")


def parse_pattern_list(text: str) -> list[PatternSpec]:
    tokens: list[str] = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            raise InvalidPatternError(f"empty entry in pattern list {text!r}")
        if piece.isdigit() and tokens:
            tokens[-1] += "," + piece
        else:
            tokens.append(piece)
    return [parse_pattern(tok) for tok in tokens]


def format_pattern(spec: PatternSpec) -> str:
    kind = spec.kind
    for short, long in _SIMPLE.items():
        if kind == long:
            return f"{short}{spec.params[0]}"
    for short, named in _NAMED.items():
        if spec == named:
            return short
    for short, long in _PARAM.items():
        if kind == long:
            return f"{short}:" + ",".join(str(p) for p in spec.params)
    return "custom:" + emit_graph6(pattern_expand(spec))


def format_pattern_list(specs) -> str:
    return ",".join(format_pattern(s) for s in specs)
