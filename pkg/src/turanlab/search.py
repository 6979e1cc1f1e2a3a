"""Exhaustive F-free enumeration and the ex / cex optimizers.

Enumeration adds one vertex at a time.  A child is kept only if the new
vertex is the canonical deletion vertex (the minimum-degree vertex placed
last by the canonical labeling, up to automorphism), so every isomorphism
class has exactly one parent; siblings are deduplicated by canonical code.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Sequence

from .constructions import EdgeColoring
from .counting import core_copies, count_pattern
from .errors import InfeasibleError, InvalidPatternError, InvariantViolation
from .graph import (
    SmallGraph,
    _bits,
    canonical_form,
    contains_subgraph,
    contains_subgraph_through,
    emit_graph6,
    parse_graph6,
)
from .patterns import PatternSpec, format_pattern, parse_pattern, pattern_expand, pattern_key

ENUMERATION_CAP = 10
DEFAULT_NODE_BUDGET = 1 << 24

Progress = Callable[[dict], None]


# ---------------------------------------------------------------------------
# enumeration


def estimated_classes(n: int) -> float:
    """Rough count of isomorphism classes of n-vertex graphs, 2^C(n,2) / n!."""
    return 2.0 ** (n * (n - 1) / 2) / math.factorial(n)


def _forbidden_checker(f: SmallGraph) -> Callable[[SmallGraph, int], bool]:
    if f.isolated_count() or f.num_edges == 0:
        return lambda g, v: contains_subgraph(g, f)
    return lambda g, v: contains_subgraph_through(g, f, v)


def _accept(child: SmallGraph):
    """Canonical form of ``child`` if its last vertex is the canonical deletion vertex."""
    n = child.order
    v = n - 1
    deg = child.degrees()
    dmin = min(deg)
    if deg[v] != dmin:
        return None
    cf = canonical_form(child)
    pos = [0] * n
    for i, u in enumerate(cf.labeling):
        pos[u] = i
    w = max((u for u in range(n) if deg[u] == dmin), key=lambda u: pos[u])
    if cf.orbits[w] != cf.orbits[v]:
        return None
    return cf


def _children(parent: SmallGraph, contains: Callable[[SmallGraph, int], bool]) -> Iterable[SmallGraph]:
    n = parent.order
    v = n
    found: dict[bytes, SmallGraph] = {}

    # neighbour sets grow in increasing vertex order; a set whose child already
    # contains F is pruned together with all its supersets
    def grow(mask: int, start: int) -> None:
        child = parent.add_vertex(mask)
        if contains(child, v):
            return
        cf = _accept(child)
        if cf is not None and cf.code not in found:
            found[cf.code] = cf.graph
        for u in range(start, n):
            grow(mask | 1 << u, u + 1)

    grow(0, 0)
    return [found[c] for c in sorted(found)]


@lru_cache(maxsize=256)
def _free_graphs(n: int, f: SmallGraph) -> tuple[SmallGraph, ...]:
    if n == 0:
        return (SmallGraph.empty(0),)
    contains = _forbidden_checker(f)
    out: list[SmallGraph] = []
    for parent in _free_graphs(n - 1, f):
        out.extend(_children(parent, contains))
    return tuple(sorted(out, key=emit_graph6))


def free_graphs(n: int, forbidden: PatternSpec | SmallGraph, cap: int = ENUMERATION_CAP) -> tuple[SmallGraph, ...]:
    """Canonical representatives of all F-free graphs on ``n`` vertices, sorted by graph6."""
    f = pattern_expand(forbidden) if isinstance(forbidden, PatternSpec) else forbidden
    if f.num_edges == 0:
        raise InvalidPatternError("forbidden graph must have at least one edge")
    if n < 0:
        raise ValueError("negative order")
    if n > cap:
        raise InfeasibleError(
            f"enumeration of order {n} exceeds cap {cap} "
            f"(about {estimated_classes(n):.3g} graph classes before F-pruning)",
            estimated_classes(n),
        )
    return _free_graphs(n, canonical_form(f).graph)


def enumerate_free_graphs(
    n: int,
    forbidden: PatternSpec | SmallGraph,
    visitor: Callable[[SmallGraph], None] | None = None,
    cap: int = ENUMERATION_CAP,
) -> int:
    """Visit one representative per isomorphism class of F-free graphs; return the class count."""
    graphs = free_graphs(n, forbidden, cap)
    if visitor is not None:
        for g in graphs:
            visitor(g)
    return len(graphs)


# ---------------------------------------------------------------------------
# problems and results


@dataclass(frozen=True)
class SearchProblem:
    n: int
    patterns: tuple[PatternSpec, ...]
    forbidden: PatternSpec
    mode: str = "monochrome"

    def __post_init__(self):
        object.__setattr__(self, "patterns", tuple(self.patterns))
        if not self.patterns:
            raise ValueError("need at least one counted pattern")
        if not 0 <= self.n <= 32:
            raise ValueError("order outside 0..32")
        if self.mode not in ("monochrome", "colored"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if pattern_expand(self.forbidden).num_edges == 0:
            raise InvalidPatternError("forbidden graph must have at least one edge")

    @property
    def k(self) -> int:
        return len(self.patterns)

    def describe(self) -> dict:
        return {
            "n": self.n,
            "patterns": [format_pattern(p) for p in self.patterns],
            "forbidden": format_pattern(self.forbidden),
            "mode": self.mode,
            "k": self.k,
        }

    def key(self) -> dict:
        """Canonical descriptor; colour order matters only in coloured mode."""
        keys = [pattern_key(p) for p in self.patterns]
        if self.mode == "monochrome":
            keys = sorted(keys)
        return {
            "n": self.n,
            "patterns": keys,
            "forbidden": pattern_key(self.forbidden),
            "mode": self.mode,
            "k": self.k,
        }

    @classmethod
    def from_describe(cls, d: dict) -> "SearchProblem":
        return cls(
            d["n"],
            tuple(parse_pattern(p) for p in d["patterns"]),
            parse_pattern(d["forbidden"]),
            d["mode"],
        )


@dataclass
class SearchResult:
    problem: SearchProblem
    value: int
    witness_graph: str
    witness_coloring: tuple[int, ...] | None = None
    exact: bool = True
    graphs_enumerated: int = 0
    colorings_explored: int = 0
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["problem"] = self.problem.describe()
        d["witness_coloring"] = list(self.witness_coloring) if self.witness_coloring is not None else None
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SearchResult":
        d = dict(d)
        d["problem"] = SearchProblem.from_describe(d["problem"])
        if d.get("witness_coloring") is not None:
            d["witness_coloring"] = tuple(d["witness_coloring"])
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def witness(self) -> SmallGraph | EdgeColoring:
        g = parse_graph6(self.witness_graph)
        if self.witness_coloring is None:
            return g
        return EdgeColoring(g, self.witness_coloring, self.problem.k)


# ---------------------------------------------------------------------------
# monochrome optimum


def _total(patterns: Sequence[PatternSpec], g: SmallGraph) -> int:
    return sum(count_pattern(p, g) for p in patterns)


@lru_cache(maxsize=1024)
def _ex_multi_cached(n: int, patterns: tuple[PatternSpec, ...], forbidden: PatternSpec, cap: int):
    best = None
    witness = ""
    graphs = free_graphs(n, forbidden, cap)
    for g in graphs:
        val = _total(patterns, g)
        g6 = emit_graph6(g)
        if best is None or val > best or (val == best and g6 < witness):
            best, witness = val, g6
    return best, witness, len(graphs)


def ex_multi(p: SearchProblem, cap: int = ENUMERATION_CAP) -> SearchResult:
    """ex(n, (H_1..H_k), F): max of the summed copy counts over F-free graphs."""
    t0 = time.perf_counter()
    value, witness, count = _ex_multi_cached(p.n, p.patterns, p.forbidden, cap)
    return SearchResult(
        p if p.mode == "monochrome" else SearchProblem(p.n, p.patterns, p.forbidden, "monochrome"),
        value,
        witness,
        None,
        True,
        count,
        0,
        time.perf_counter() - t0,
    )


def ex_single(n: int, h: PatternSpec, forbidden: PatternSpec, cap: int = ENUMERATION_CAP) -> int:
    return _ex_multi_cached(n, (h,), forbidden, cap)[0]


# ---------------------------------------------------------------------------
# colouring search


@dataclass
class ColoringOutcome:
    coloring: EdgeColoring
    value: int
    exact: bool
    nodes: int


class _ColoringProblem:
    """Copy lists of every pattern in one host, as edge bitmasks with weights."""

    def __init__(self, g: SmallGraph, patterns: Sequence[PatternSpec]):
        self.g = g
        self.k = len(patterns)
        self.m = g.num_edges
        self.const = 0
        self.copies: list[list[int]] = []
        self.weights: list[int] = []
        for p in patterns:
            h = pattern_expand(p)
            core = h.core()
            iso = h.order - core.order
            if h.order > g.order:
                self.copies.append([])
                self.weights.append(0)
                continue
            if core.order == 0:
                self.const += comb(g.order, h.order)
                self.copies.append([])
                self.weights.append(0)
                continue
            self.copies.append(list(core_copies(h, g)))
            self.weights.append(comb(g.order - core.order, iso))
        relevant = 0
        for lst in self.copies:
            for c in lst:
                relevant |= c
        self.relevant = relevant
        keys = [pattern_key(p) for p in patterns]
        # colour i may only be opened after the nearest earlier colour with the same pattern
        self.dup_of = [next((j for j in range(i - 1, -1, -1) if keys[j] == keys[i]), None) for i in range(self.k)]

    def value(self, colors: Sequence[int]) -> int:
        """Objective for 0-based colours aligned with edge indices."""
        masks = [0] * self.k
        for e, c in enumerate(colors):
            masks[c] |= 1 << e
        total = self.const
        for i in range(self.k):
            cm = masks[i]
            w = self.weights[i]
            total += w * sum(1 for c in self.copies[i] if c & cm == c)
        return total

    def root_bound(self) -> float:
        return self._bound([list(lst) for lst in self.copies], 0)[0] + self.const

    def _bound(self, alive: list[list[int]], decided: int) -> tuple[float, dict[int, float]]:
        undecided = ~decided
        fixed = 0
        best_share: dict[int, float] = {}
        for i in range(self.k):
            w = self.weights[i]
            acc: dict[int, float] = {}
            for c in alive[i]:
                u = c & undecided
                if not u:
                    fixed += w
                    continue
                s = w / u.bit_count()
                while u:
                    low = u & -u
                    u ^= low
                    acc[low] = acc.get(low, 0.0) + s
            for e, s in acc.items():
                if s > best_share.get(e, 0.0):
                    best_share[e] = s
        return fixed + sum(best_share.values()), best_share

    def greedy(self) -> list[int]:
        """Best monochrome colouring improved by single-edge recolouring."""
        m = self.m
        best = None
        for c in range(self.k):
            cand = [c] * m
            val = self.value(cand)
            if best is None or val > best[0]:
                best = (val, cand)
        assert best is not None
        val, colors = best
        improved = True
        while improved:
            improved = False
            for e in _bits(self.relevant):
                for c in range(self.k):
                    if c == colors[e]:
                        continue
                    old = colors[e]
                    colors[e] = c
                    new = self.value(colors)
                    if new > val:
                        val = new
                        improved = True
                    else:
                        colors[e] = old
        return colors

    def search(self, threshold: int, node_budget: int) -> tuple[int | None, list[int] | None, bool, int]:
        """Lexicographically first colouring of maximum value, if that value >= threshold.

        Returns ``(value, colours, completed, nodes)``; value is None when no
        colouring reaches the threshold.
        """
        order = list(_bits(self.relevant))
        colors = [0] * self.m
        best_val = threshold - 1
        best_colors: list[int] | None = None
        nodes = 0
        eps = 1e-9
        aborted = False

        def rec(pos: int, alive: list[list[int]], decided: int, opened: int) -> None:
            nonlocal best_val, best_colors, nodes, aborted
            if aborted:
                return
            nodes += 1
            if nodes > node_budget:
                aborted = True
                return
            bound, shares = self._bound(alive, decided)
            if bound + self.const < best_val + 1 - eps:
                return
            if pos == len(order):
                val = int(round(bound)) + self.const
                if val > best_val:
                    best_val = val
                    best_colors = list(colors)
                return
            e = order[pos]
            bit = 1 << e
            if bit not in shares:
                # no live copy uses this edge any more
                colors[e] = 0
                rec(pos + 1, alive, decided | bit, opened | 1)
                return
            for c in range(self.k):
                d = self.dup_of[c]
                if d is not None and not opened >> d & 1:
                    continue
                colors[e] = c
                new_alive = [lst if i == c else [x for x in lst if not x & bit] for i, lst in enumerate(alive)]
                rec(pos + 1, new_alive, decided | bit, opened | 1 << c)
                if aborted:
                    return
            colors[e] = 0

        rec(0, [list(lst) for lst in self.copies], 0, 0)
        if best_colors is None:
            return None, None, not aborted, nodes
        return best_val, best_colors, not aborted, nodes


def _to_coloring(g: SmallGraph, colors0: Sequence[int], k: int) -> EdgeColoring:
    return EdgeColoring(g, tuple(c + 1 for c in colors0), k)


def best_coloring(
    g: SmallGraph, patterns: Sequence[PatternSpec], node_budget: int = DEFAULT_NODE_BUDGET
) -> ColoringOutcome:
    """Colouring of ``g`` maximizing the coloured copy total.

    Exact when the branch-and-bound finishes within ``node_budget`` nodes;
    otherwise the greedy local optimum is returned with ``exact=False``.
    """
    cp = _ColoringProblem(g, patterns)
    greedy = cp.greedy()
    gval = cp.value(greedy)
    val, colors, done, nodes = cp.search(gval, node_budget)
    if val is None or colors is None:
        # only possible when the search aborted before reaching the greedy value
        return ColoringOutcome(_to_coloring(g, greedy, cp.k), gval, False, nodes)
    return ColoringOutcome(_to_coloring(g, colors, cp.k), val, done, nodes)


# ---------------------------------------------------------------------------
# coloured optimum


@lru_cache(maxsize=256)
def _cex_cached(n: int, patterns: tuple[PatternSpec, ...], forbidden: PatternSpec, cap: int, node_budget: int):
    graphs = free_graphs(n, forbidden, cap)
    best_val = -1
    best_g6 = ""
    best_colors: tuple[int, ...] | None = None
    exact = True
    nodes = 0
    for g in graphs:
        g6 = emit_graph6(g)
        cp = _ColoringProblem(g, patterns)
        # a graph must strictly beat the incumbent unless it wins the graph6 tie-break
        threshold = best_val if (best_colors is None or g6 < best_g6) else best_val + 1
        threshold = max(threshold, 0)
        if cp.root_bound() < threshold - 1e-9:
            continue
        val, colors, done, used = cp.search(threshold, node_budget)
        nodes += used
        if not done:
            exact = False
            greedy = cp.greedy()
            gval = cp.value(greedy)
            if val is None or gval > val:
                val, colors = gval, greedy
        if val is None or colors is None:
            continue
        cand = tuple(c + 1 for c in colors)
        if (
            val > best_val
            or (val == best_val and g6 < best_g6)
            or (val == best_val and g6 == best_g6 and best_colors is not None and cand < best_colors)
        ):
            best_val, best_g6, best_colors = val, g6, cand
    return best_val, best_g6, best_colors, exact, len(graphs), nodes


def cex_multi(
    p: SearchProblem, cap: int = ENUMERATION_CAP, node_budget: int = DEFAULT_NODE_BUDGET
) -> SearchResult:
    """cex(n, (H_1..H_k), F): best colouring over all F-free hosts."""
    t0 = time.perf_counter()
    val, g6, colors, exact, count, nodes = _cex_cached(p.n, p.patterns, p.forbidden, cap, node_budget)
    problem = p if p.mode == "colored" else SearchProblem(p.n, p.patterns, p.forbidden, "colored")
    return SearchResult(problem, val, g6, colors, exact, count, nodes, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# sandwich chain


@dataclass
class SandwichReport:
    problem: SearchProblem
    single: tuple[int, ...]
    cex: int
    ex: int
    total: int
    exact: bool
    holds: bool = field(default=True)

    def lines(self) -> list[str]:
        d = self.problem.describe()
        out = [f"n={d['n']} patterns={','.join(d['patterns'])} forbid={d['forbidden']}"]
        for p, v in zip(d["patterns"], self.single):
            out.append(f"  ex(n,{p},F) = {v}")
        out.append(f"  cex = {self.cex}{'' if self.exact else ' (heuristic)'}")
        out.append(f"  ex  = {self.ex}")
        out.append(f"  sum = {self.total}")
        out.append(f"  chain {'holds' if self.holds else 'VIOLATED'}")
        return out


def sandwich_check(p: SearchProblem, cap: int = ENUMERATION_CAP, node_budget: int = DEFAULT_NODE_BUDGET) -> SandwichReport:
    """Check ex(n,H_i,F) <= cex <= ex <= sum_i ex(n,H_i,F) for every i."""
    single = tuple(ex_single(p.n, h, p.forbidden, cap) for h in p.patterns)
    c = cex_multi(p, cap, node_budget)
    e = ex_multi(p, cap)
    total = sum(single)
    holds = all(s <= c.value for s in single) and c.value <= e.value <= total
    report = SandwichReport(p, single, c.value, e.value, total, c.exact, holds)
    if not holds and c.exact:
        raise InvariantViolation(
            "sandwich chain violated: " + "; ".join(report.lines()),
            {"cex": c.to_dict(), "ex": e.to_dict()},
        )
    return report


# ---------------------------------------------------------------------------
# complete bipartite scan


def bipartite_sides(g: SmallGraph) -> tuple[int, int] | None:
    """``(a, b)`` with a <= b if ``g`` is K_{a,b} (no isolated vertices), else None."""
    if g.order == 0 or g.isolated_count():
        return None
    side = [-1] * g.order
    side[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        for w in _bits(g.adj[v]):
            if side[w] < 0:
                side[w] = 1 - side[v]
                stack.append(w)
            elif side[w] == side[v]:
                return None
    if -1 in side:
        return None
    a = side.count(0)
    b = g.order - a
    if g.num_edges != a * b:
        return None
    return (min(a, b), max(a, b))


@dataclass
class BipartiteScan:
    n: int
    best_x: int
    value: int
    table: list[tuple[int, int]]


def bipartite_scan(n: int, patterns: Sequence[PatternSpec]) -> BipartiteScan:
    """Sum of N(H_i, K_{x,n-x}) for x = 0..n//2; argmax takes the smallest x on ties."""
    from .counting import count_bipartite_closed_form

    sides = []
    for p in patterns:
        s = bipartite_sides(pattern_expand(p))
        if s is None:
            raise InvalidPatternError(f"{format_pattern(p)} is not a complete bipartite graph")
        sides.append(s)
    table = []
    for x in range(n // 2 + 1):
        table.append((x, sum(count_bipartite_closed_form(a, b, x, n - x) for a, b in sides)))
    best_x, best = table[0]
    for x, v in table:
        if v > best:
            best_x, best = x, v
    return BipartiteScan(n, best_x, best, table)
