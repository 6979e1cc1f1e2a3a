"""Uniform hypergraphs, Berge containment and tiny exact hyperedge maxima."""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from .errors import GraphFormatError, InfeasibleError, InvariantViolation
from .graph import SmallGraph, _bits, embedding_plan
from .patterns import Clique, PatternSpec, format_pattern, pattern_expand

BERGE_CAP = 30


@dataclass(frozen=True)
class Hypergraph:
    order: int
    r: int
    edges: tuple[int, ...]

    def __post_init__(self):
        if self.r < 1 or self.order < 0:
            raise ValueError("need r >= 1 and order >= 0")
        full = (1 << self.order) - 1
        for e in self.edges:
            if e & ~full or e.bit_count() != self.r:
                raise ValueError(f"hyperedge {bin(e)} is not an {self.r}-subset of {self.order} vertices")
        if list(self.edges) != sorted(set(self.edges)):
            raise ValueError("hyperedges must be sorted and distinct")

    @classmethod
    def from_sets(cls, order: int, r: int, sets: Sequence[Sequence[int]]) -> "Hypergraph":
        masks = sorted({sum(1 << v for v in s) for s in sets})
        return cls(order, r, tuple(masks))

    def with_edge(self, mask: int) -> "Hypergraph":
        return Hypergraph(self.order, self.r, tuple(sorted(set(self.edges) | {mask})))

    def vertex_sets(self) -> list[list[int]]:
        return [list(_bits(e)) for e in self.edges]

    def __len__(self) -> int:
        return len(self.edges)


def emit_hypergraph(h: Hypergraph) -> str:
    lines = [f"{h.order} {h.r} {len(h.edges)}"]
    lines += [" ".join(map(str, s)) for s in h.vertex_sets()]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    offset = 0
    rows: list[tuple[int, list[int]]] = []
    for line in text.splitlines(keepends=True):
        if line.strip():
            rows.append((offset, line.split()))
        offset += len(line.encode())
    if not rows:
        raise GraphFormatError("empty hypergraph text", 0)
    pos, header = rows[0]
    try:
        n, r, m = (int(x) for x in header)
    except ValueError:
        raise GraphFormatError("header must be 'n r m'", pos) from None
    if len(rows) - 1 != m:
        raise GraphFormatError(f"header announces {m} hyperedges, found {len(rows) - 1}", pos)
    sets = []
    for pos, toks in rows[1:]:
        try:
            vs = [int(t) for t in toks]
        except ValueError:
            raise GraphFormatError("non-integer vertex", pos) from None
        if vs != sorted(set(vs)) or len(vs) != r or any(not 0 <= v < n for v in vs):
            raise GraphFormatError(f"hyperedge must list {r} distinct sorted vertices below {n}", pos)
        if vs in sets:
            raise GraphFormatError("duplicate hyperedge", pos)
        sets.append(vs)
    try:
        return Hypergraph.from_sets(n, r, sets)
    except ValueError as exc:
        raise GraphFormatError(str(exc), 0) from exc


# ---------------------------------------------------------------------------
# containment


def _matching_size(options: list[list[int]]) -> int:
    """Maximum matching of left items to distinct right items (augmenting paths)."""
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for j in options[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in owner or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    return sum(1 for i in range(len(options)) if augment(i, set()))


def contains_berge(h: Hypergraph, f: SmallGraph) -> bool:
    """True iff some |E(f)| distinct hyperedges of ``h`` form a Berge copy of ``f``."""
    if f.order > h.order:
        return False
    core = f.core()
    if core.order == 0:
        return True
    if core.num_edges > len(h.edges):
        return False
    plan = embedding_plan(core)
    k = core.order
    pos = {v: i for i, v in enumerate(plan.vertices)}
    # edges whose later endpoint is the i-th vertex in plan order
    closing = [[] for _ in range(k)]
    for u, v in core.edges():
        a, b = pos[u], pos[v]
        closing[max(a, b)].append(min(a, b))
    edges = h.edges
    image = [0] * k
    options: list[list[int]] = []

    def rec(i: int, used: int) -> bool:
        if i == k:
            return True
        for x in range(h.order):
            if used >> x & 1:
                continue
            image[i] = x
            added = 0
            ok = True
            for j in closing[i]:
                pair = 1 << x | 1 << image[j]
                opts = [t for t, e in enumerate(edges) if e & pair == pair]
                if not opts:
                    ok = False
                    break
                options.append(opts)
                added += 1
            if ok and (not added or _matching_size(options) == len(options)):
                if rec(i + 1, used | 1 << x):
                    return True
            del options[len(options) - added :]
        return False

    return rec(0, 0)


def contains_berge_naive(h: Hypergraph, f: SmallGraph) -> bool:
    """Oracle: every injective vertex map and every ordered choice of distinct hyperedges."""
    if f.order > h.order:
        return False
    fedges = f.edges()
    for phi in permutations(range(h.order), f.order):
        for chosen in permutations(h.edges, len(fedges)):
            if all(e >> phi[u] & 1 and e >> phi[v] & 1 for (u, v), e in zip(fedges, chosen)):
                return True
    return False


# ---------------------------------------------------------------------------
# extremal number


@dataclass
class BergeResult:
    n: int
    r: int
    forbidden: PatternSpec
    value: int
    witness: Hypergraph
    exact: bool
    nodes: int
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "forbidden": format_pattern(self.forbidden),
            "value": self.value,
            "witness": emit_hypergraph(self.witness),
            "exact": self.exact,
            "nodes": self.nodes,
            "elapsed": self.elapsed,
        }


def ex_berge(n: int, r: int, f: PatternSpec, cap: int = BERGE_CAP) -> BergeResult:
    """Maximum hyperedge count of an r-uniform Berge-F-free hypergraph on ``n`` vertices."""
    total = comb(n, r)
    if total > cap:
        raise InfeasibleError(f"C({n},{r}) = {total} candidate hyperedges exceeds cap {cap} (2^{total} subsets)", 2.0**total)
    t0 = time.perf_counter()
    g = pattern_expand(f)
    cands = [sum(1 << v for v in s) for s in combinations(range(n), r)]
    # single hyperedges that already host F can never be used
    cands = [c for c in cands if not contains_berge(Hypergraph(n, r, (c,)), g)]
    best: list[int] = []
    nodes = 0

    def rec(i: int, chosen: list[int]) -> None:
        nonlocal best, nodes
        nodes += 1
        if len(chosen) > len(best):
            best = list(chosen)
        if i == len(cands) or len(chosen) + len(cands) - i <= len(best):
            return
        c = cands[i]
        trial = Hypergraph(n, r, tuple(sorted(chosen + [c])))
        if not contains_berge(trial, g):
            chosen.append(c)
            rec(i + 1, chosen)
            chosen.pop()
        rec(i + 1, chosen)

    rec(0, [])
    witness = Hypergraph(n, r, tuple(sorted(best)))
    if contains_berge(witness, g):
        raise InvariantViolation("Berge witness contains the forbidden graph", {"witness": emit_hypergraph(witness)})
    return BergeResult(n, r, f, len(best), witness, True, nodes, time.perf_counter() - t0)


@dataclass
class BergeSandwich:
    n: int
    r: int
    forbidden: PatternSpec
    clique_ex: int
    berge_ex: int
    colored_ex: int
    additive_bound: int
    holds: bool

    def lines(self) -> list[str]:
        fs = format_pattern(self.forbidden)
        rows = [
            (f"ex(n,K{self.r},F)", self.clique_ex),
            ("ex_r(n,Berge-F)", self.berge_ex),
            (f"cex(n,(K{self.r},K2),F)", self.colored_ex),
            (f"ex(n,K{self.r},F)+ex(n,F)", self.additive_bound),
        ]
        return [
            f"n={self.n} r={self.r} forbid={fs}",
            *(f"  {label:<22} = {value}" for label, value in rows),
            f"  chain {'holds' if self.holds else 'VIOLATED'}",
        ]


def berge_sandwich_check(n: int, r: int, f: PatternSpec) -> BergeSandwich:
    from .search import SearchProblem, cex_multi, ex_single

    clique_ex = ex_single(n, Clique(r), f)
    edge_ex = ex_single(n, Clique(2), f)
    berge = ex_berge(n, r, f)
    col = cex_multi(SearchProblem(n, (Clique(r), Clique(2)), f, "colored"))
    holds = clique_ex <= berge.value <= col.value <= clique_ex + edge_ex
    report = BergeSandwich(n, r, f, clique_ex, berge.value, col.value, clique_ex + edge_ex, holds)
    if not holds:
        raise InvariantViolation("Berge sandwich violated: " + "; ".join(report.lines()), {"witness": berge.to_dict()})
    return report
