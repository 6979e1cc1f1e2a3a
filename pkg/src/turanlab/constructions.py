"""Extremal constructions, plain and edge-colored, and their evaluators.

Colour 1 is "blue" and binds to the first counted pattern, colour 2 is "red".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .counting import CountVector, count_colored, count_vector
from .errors import InvalidColoringError, InvalidConstructionError, InvalidPatternError
from .graph import SmallGraph, contains_subgraph, parse_graph6, turan_graph
from .patterns import PatternSpec, format_pattern, parse_pattern, pattern_expand


@dataclass(frozen=True)
class EdgeColoring:
    """Total colouring of ``base``'s edges; ``colors`` follows ``base.edges()`` order."""

    base: SmallGraph
    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidColoringError("need at least one colour")
        m = self.base.num_edges
        if len(self.colors) != m:
            raise InvalidColoringError(f"{len(self.colors)} colours for {m} edges")
        for c in self.colors:
            if not isinstance(c, int) or not 1 <= c <= self.k:
                raise InvalidColoringError(f"colour {c!r} outside 1..{self.k}")

    @classmethod
    def from_map(cls, base: SmallGraph, mapping: Mapping[tuple[int, int], int], k: int) -> "EdgeColoring":
        colors = []
        for u, v in base.edges():
            c = mapping.get((u, v), mapping.get((v, u)))
            if c is None:
                raise InvalidColoringError(f"edge {u}-{v} has no colour")
            colors.append(c)
        extra = {tuple(sorted(e)) for e in mapping} - set(base.edges())
        if extra:
            raise InvalidColoringError(f"colours given for non-edges {sorted(extra)}")
        return cls(base, tuple(colors), k)

    @classmethod
    def monochrome(cls, base: SmallGraph, color: int, k: int) -> "EdgeColoring":
        return cls(base, (color,) * base.num_edges, k)

    @property
    def order(self) -> int:
        return self.base.order

    def edge_colors(self) -> dict[tuple[int, int], int]:
        return dict(zip(self.base.edges(), self.colors))

    def color_of(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self.edge_colors()[(u, v)]

    def color_class(self, i: int) -> SmallGraph:
        """Spanning subgraph of the colour-``i`` edges (all vertices kept)."""
        if not 1 <= i <= self.k:
            raise InvalidColoringError(f"colour {i} outside 1..{self.k}")
        return SmallGraph.from_edges(self.base.order, (e for e, c in zip(self.base.edges(), self.colors) if c == i))

    def require_colors(self, k: int) -> None:
        if self.k != k:
            raise InvalidColoringError(f"colouring has {self.k} colours, patterns need {k}")


# ---------------------------------------------------------------------------

CONSTRUCTION_KINDS = {
    "TuranGraph": False,
    "TuranPlusEdge": False,
    "Blowup": False,
    "DisjointCliquesPlusRemainder": False,
    "StarPlusMatching": False,
    "ColoredFnStar": True,
    "BlueTuranRedEdge": True,
    "BlueK6PacksRedEdge": True,
}


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in CONSTRUCTION_KINDS:
            raise InvalidConstructionError(f"unknown construction {self.kind!r}")

    @property
    def colored(self) -> bool:
        return CONSTRUCTION_KINDS[self.kind]

    def __str__(self) -> str:
        return format_construction(self)


def _ints(spec: ConstructionSpec, count: int, minimum: int = 0) -> tuple[int, ...]:
    p = spec.params
    if len(p) != count or not all(isinstance(x, int) for x in p):
        raise InvalidConstructionError(f"{spec.kind} takes {count} integer parameter(s), got {p!r}")
    if any(x < minimum for x in p):
        raise InvalidConstructionError(f"{spec.kind} parameters must be >= {minimum}, got {p!r}")
    return p


# Turán parts are consecutive blocks with the larger block first
_EXTRA_EDGE = (0, 1)


def build(spec: ConstructionSpec) -> SmallGraph | EdgeColoring:
    kind = spec.kind
    try:
        if kind == "TuranGraph":
            m, n = _ints(spec, 2)
            if m < 1:
                raise InvalidConstructionError("TuranGraph needs m >= 1")
            return turan_graph(m, n)
        if kind == "TuranPlusEdge":
            (n,) = _ints(spec, 1)
            if n < 3:
                raise InvalidConstructionError("TuranPlusEdge needs n >= 3")
            return turan_graph(2, n).with_edge(*_EXTRA_EDGE)
        if kind == "Blowup":
            if len(spec.params) != 2:
                raise InvalidConstructionError("Blowup takes (pattern, sizes)")
            base_spec, sizes = spec.params
            base = pattern_expand(base_spec)
            if len(sizes) != base.order or any(not isinstance(s, int) or s < 0 for s in sizes):
                raise InvalidConstructionError(f"need {base.order} non-negative part sizes")
            return blowup(base, sizes)
        if kind == "DisjointCliquesPlusRemainder":
            ell, n = _ints(spec, 2)
            if ell < 2:
                raise InvalidConstructionError("need ell >= 2")
            return disjoint_cliques(ell - 1, n)
        if kind == "StarPlusMatching":
            (n,) = _ints(spec, 1, 1)
            return pattern_expand(PatternSpec("StarPlusMatching", (n,)))
        if kind == "ColoredFnStar":
            (n,) = _ints(spec, 1, 2)
            g = pattern_expand(PatternSpec("StarPlusMatching", (n,)))
            return EdgeColoring.from_map(g, {(u, v): 1 if u == 0 else 2 for u, v in g.edges()}, 2)
        if kind == "BlueTuranRedEdge":
            (n,) = _ints(spec, 1)
            if n < 3:
                raise InvalidConstructionError("BlueTuranRedEdge needs n >= 3")
            extra = _EXTRA_EDGE
            g = turan_graph(2, n).with_edge(*extra)
            return EdgeColoring.from_map(g, {e: 2 if e == extra else 1 for e in g.edges()}, 2)
        if kind == "BlueK6PacksRedEdge":
            (p,) = _ints(spec, 1, 1)
            n = 6 * p + 2
            g = disjoint_cliques(6, n)
            red = (n - 2, n - 1)
            return EdgeColoring.from_map(g, {e: 2 if e == red else 1 for e in g.edges()}, 2)
    except (ValueError, InvalidPatternError) as exc:
        if isinstance(exc, InvalidConstructionError):
            raise
        raise InvalidConstructionError(str(exc)) from exc
    raise InvalidConstructionError(f"unknown construction {kind!r}")


def blowup(base: SmallGraph, sizes: Sequence[int]) -> SmallGraph:
    owner = [v for v, s in enumerate(sizes) for _ in range(s)]
    n = len(owner)
    return SmallGraph.from_edges(
        n, ((a, b) for a in range(n) for b in range(a + 1, n) if base.has_edge(owner[a], owner[b]))
    )


def disjoint_cliques(size: int, n: int) -> SmallGraph:
    """``n // size`` disjoint ``K_size`` followed by a clique on the remaining vertices."""
    edges = []
    start = 0
    while start < n:
        end = min(start + size, n)
        edges += [(a, b) for a in range(start, end) for b in range(a + 1, end)]
        start = end
    return SmallGraph.from_edges(n, edges)


def uncolored(obj: SmallGraph | EdgeColoring) -> SmallGraph:
    return obj.base if isinstance(obj, EdgeColoring) else obj


def evaluate(spec: ConstructionSpec, patterns: Sequence[PatternSpec]) -> CountVector:
    obj = build(spec)
    if isinstance(obj, EdgeColoring):
        if len(patterns) != obj.k:
            raise InvalidColoringError(f"{spec} has {obj.k} colours but {len(patterns)} patterns given")
        return count_colored(patterns, obj)
    return count_vector(patterns, obj)


def is_free(spec: ConstructionSpec, forbidden: PatternSpec) -> bool:
    return not contains_subgraph(uncolored(build(spec)), pattern_expand(forbidden))


# designated forbidden graph of each construction
def designated_forbidden(spec: ConstructionSpec) -> PatternSpec | None:
    kind = spec.kind
    if kind == "TuranGraph":
        return PatternSpec("Clique", (spec.params[0] + 1,))
    if kind in ("TuranPlusEdge", "BlueTuranRedEdge"):
        return PatternSpec("Fan2")
    if kind == "ColoredFnStar":
        return PatternSpec("Cycle", (4,))
    if kind == "StarPlusMatching":
        return PatternSpec("Cycle", (4,))
    if kind == "DisjointCliquesPlusRemainder":
        return PatternSpec("Star", (spec.params[0],))
    if kind == "Blowup" and spec.params[0] == PatternSpec("Cycle", (5,)):
        return PatternSpec("Clique", (3,))
    if kind == "BlueK6PacksRedEdge":
        return PatternSpec("Star", (7,))
    return None


# ---------------------------------------------------------------------------
# CLI strings

_SIMPLE_CONS = {
    "turan": ("TuranGraph", 2),
    "turanedge": ("TuranPlusEdge", 1),
    "cliques": ("DisjointCliquesPlusRemainder", 2),
    "fn": ("StarPlusMatching", 1),
    "fnstar": ("ColoredFnStar", 1),
    "blueturanred": ("BlueTuranRedEdge", 1),
    "k6packs": ("BlueK6PacksRedEdge", 1),
}


def parse_construction(text: str) -> ConstructionSpec:
    """Parse e.g. ``turan:3,9``, ``fnstar:9``, ``k6packs:1`` or ``blowup:C5/2,2,2,2,2``."""
    s = text.strip()
    if s.startswith("blowup:"):
        body = s[len("blowup:") :]
        if "/" not in body:
            raise InvalidConstructionError("blowup needs <pattern>/<sizes>")
        pat, sizes = body.rsplit("/", 1)
        try:
            base = parse_pattern(pat)
            parts = tuple(int(x) for x in sizes.split(","))
        except (InvalidPatternError, ValueError) as exc:
            raise InvalidConstructionError(f"bad blowup {s!r}: {exc}") from exc
        return ConstructionSpec("Blowup", (base, parts))
    m = re.fullmatch(r"([a-z0-9]+):(\d+(?:,\d+)*)", s)
    if not m or m.group(1) not in _SIMPLE_CONS:
        raise InvalidConstructionError(f"cannot parse construction {s!r}")
    kind, arity = _SIMPLE_CONS[m.group(1)]
    params = tuple(int(x) for x in m.group(2).split(","))
    if len(params) != arity:
        raise InvalidConstructionError(f"{m.group(1)} takes {arity} parameter(s)")
    return ConstructionSpec(kind, params)


def format_construction(spec: ConstructionSpec) -> str:
    if spec.kind == "Blowup":
        base, sizes = spec.params
        return f"blowup:{format_pattern(base)}/" + ",".join(map(str, sizes))
    for short, (kind, _) in _SIMPLE_CONS.items():
        if kind == spec.kind:
            return f"{short}:" + ",".join(map(str, spec.params))
    raise InvalidConstructionError(spec.kind)


def parse_host(text: str) -> SmallGraph | EdgeColoring:
    """A host given as a construction string, ``<graph6>:<colour digits>`` or graph6.

    In the coloured form there is one digit per edge, in ``edges()`` order,
    and the colour count is the largest digit used unless ``/k`` is appended
    (``D~{:1112/3``).
    """
    s = text.strip()
    head = s.split(":", 1)[0]
    if head in _SIMPLE_CONS or head == "blowup":
        return build(parse_construction(s))
    if ":" in s:
        g6, tail = s.split(":", 1)
        k = None
        if "/" in tail:
            tail, ks = tail.split("/", 1)
            k = int(ks)
        g = parse_graph6(g6)
        if not tail.isdigit() and tail:
            raise InvalidColoringError(f"bad colour string {tail!r}")
        colors = tuple(int(ch) for ch in tail)
        return EdgeColoring(g, colors, k if k is not None else max(colors, default=1))
    return parse_graph6(s)


def format_colored(c: EdgeColoring) -> str:
    from .graph import emit_graph6

    return f"{emit_graph6(c.base)}:" + "".join(map(str, c.colors)) + f"/{c.k}"
