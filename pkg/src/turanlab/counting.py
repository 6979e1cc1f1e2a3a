"""Exact subgraph-copy counts, colored counts and closed forms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, prod
from typing import Sequence

from .graph import (
    SmallGraph,
    _bits,
    automorphism_count,
    count_core_embeddings,
    embedding_plan,
    iter_core_embeddings,
)
from .patterns import PatternSpec, pattern_expand


@dataclass(frozen=True)
class CountVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.entries):
            raise ValueError("negative count")

    @property
    def total(self) -> int:
        return sum(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def _is_complete(g: SmallGraph) -> bool:
    return g.num_edges == g.order * (g.order - 1) // 2


def count_cliques(g: SmallGraph, r: int, within: int | None = None) -> int:
    """Number of ``r``-vertex cliques of ``g`` (optionally inside bitmask ``within``)."""
    if r < 0:
        return 0
    cand0 = g.vertex_mask if within is None else within
    if r == 0:
        return 1
    if r == 1:
        return cand0.bit_count()
    adj = g.adj

    def rec(need: int, cand: int) -> int:
        if need == 1:
            return cand.bit_count()
        total = 0
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            # only larger neighbours, so each clique is counted once
            total += rec(need - 1, cand & adj[v])
        return total

    return rec(r, cand0)


def count_embeddings(h: SmallGraph, g: SmallGraph) -> int:
    """Injective edge-preserving maps ``V(h) -> V(g)`` (isolated vertices included)."""
    core = h.core()
    iso = h.order - core.order
    spare = g.order - core.order
    if spare < iso:
        return 0
    core_count = count_core_embeddings(embedding_plan(core), g)
    falling = prod(range(spare - iso + 1, spare + 1)) if iso else 1
    return core_count * falling


def count_copies(h: SmallGraph, g: SmallGraph) -> int:
    """N(h, g): subgraphs of ``g`` isomorphic to ``h``.

    Core embeddings are divided by the core's automorphism count and the
    isolated pattern vertices contribute a binomial factor over the spare
    vertices.
    """
    if h.order > g.order:
        return 0
    core = h.core()
    iso = h.order - core.order
    if _is_complete(core) and core.order >= 2:
        core_count = count_cliques(g, core.order)
    elif core.order == 0:
        core_count = 1
    else:
        emb = count_core_embeddings(embedding_plan(core), g)
        aut = automorphism_count(core)
        assert emb % aut == 0
        core_count = emb // aut
    return core_count * comb(g.order - core.order, iso)


def count_pattern(spec: PatternSpec, g: SmallGraph) -> int:
    return count_copies(pattern_expand(spec), g)


def count_vector(patterns: Sequence[PatternSpec], g: SmallGraph) -> CountVector:
    return CountVector(tuple(count_pattern(p, g) for p in patterns))


@lru_cache(maxsize=50_000)
def core_copies(h: SmallGraph, g: SmallGraph) -> tuple[int, ...]:
    """Edge sets of every copy of ``core(h)`` in ``g``.

    Returns a sorted tuple of edge bitmasks over ``g.edges()`` indices.  Each
    copy of the core is a distinct edge set, because the core has no
    isolated vertices.
    """
    core = h.core()
    if core.order > g.order:
        return ()
    index = {e: i for i, e in enumerate(g.edges())}
    plan = embedding_plan(core)
    pattern_edges = [(plan.vertices.index(u), plan.vertices.index(v)) for u, v in core.edges()]
    seen = set()
    for img in iter_core_embeddings(plan, g):
        mask = 0
        for a, b in pattern_edges:
            x, y = img[a], img[b]
            mask |= 1 << index[(x, y) if x < y else (y, x)]
        seen.add(mask)
    return tuple(sorted(seen))


def count_colored(patterns: Sequence[PatternSpec], coloring) -> CountVector:
    """Entry ``i`` counts copies of ``H_i`` in the spanning subgraph of colour ``i+1``."""
    from .constructions import EdgeColoring  # circular at import time

    if not isinstance(coloring, EdgeColoring):
        raise TypeError("expected an EdgeColoring")
    coloring.require_colors(len(patterns))
    return CountVector(
        tuple(count_pattern(p, coloring.color_class(i + 1)) for i, p in enumerate(patterns))
    )


def elementary_symmetric(values: Sequence[int], r: int) -> int:
    # e_0 = 1; dynamic programming keeps this exact for any part count
    e = [1] + [0] * r
    for x in values:
        for j in range(r, 0, -1):
            e[j] += e[j - 1] * x
    return e[r]


def count_cliques_multipartite(r: int, shape: Sequence[int]) -> int:
    """N(K_r, complete multipartite graph with the given part sizes)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return elementary_symmetric(list(shape), r)


def count_bipartite_closed_form(a: int, b: int, x: int, y: int) -> int:
    """N(K_{a,b}, K_{x,y})."""
    if a > b:
        a, b = b, a
    if a == b:
        return comb(x, a) * comb(y, a)
    return comb(x, a) * comb(y, b) + comb(x, b) * comb(y, a)


def reduced_zagreb(g: SmallGraph) -> int:
    """Sum over edges of (d(u) - 1)(d(v) - 1).

    Equals N(P_4, g) + 3 N(K_3, g).  The unreduced sum d(u) d(v) does not.
    """
    deg = g.degrees()
    return sum((deg[u] - 1) * (deg[v] - 1) for u, v in g.edges())


def second_zagreb(g: SmallGraph) -> int:
    deg = g.degrees()
    return sum(deg[u] * deg[v] for u, v in g.edges())


def brute_force_copies(h: SmallGraph, g: SmallGraph, iso) -> int:
    """Oracle: enumerate (vertex subset, edge subset) pairs and test with ``iso``.

    ``iso(a, b)`` must decide isomorphism of two SmallGraphs; tests pass an
    implementation independent of this package.
    """
    k, m = h.order, h.num_edges
    total = 0
    for verts in combinations(range(g.order), k):
        sub = g.induced(list(verts))
        edges = sub.edges()
        for chosen in combinations(edges, m):
            cand = SmallGraph.from_edges(k, chosen)
            if iso(cand, h):
                total += 1
    return total


def vertex_copy_degrees(h: SmallGraph, g: SmallGraph) -> list[int]:
    """For each vertex of ``g`` the number of copies of ``h`` containing it."""
    n = g.order
    core = h.core()
    iso = h.order - core.order
    out = [0] * n
    if core.order == 0:
        # every copy is a vertex subset of size iso
        return [comb(n - 1, iso - 1) if iso else 0 for _ in range(n)]
    edges = g.edges()
    for mask in core_copies(h, g):
        verts = 0
        for i in _bits(mask):
            u, v = edges[i]
            verts |= 1 << u | 1 << v
        spare = n - core.order
        for v in range(n):
            if verts >> v & 1:
                out[v] += comb(spare, iso)
            elif iso:
                out[v] += comb(spare - 1, iso - 1)
    return out

