"""Bitset simple graphs, canonical labeling, containment and graph6 I/O.

A graph on ``n <= 32`` vertices is stored as one neighbour bitmask per
vertex.  Everything in here is a pure function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import GraphFormatError

MAX_ORDER = 32


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SmallGraph:
    order: int
    adj: tuple[int, ...]

    def __post_init__(self):
        n = self.order
        if not 0 <= n <= MAX_ORDER:
            raise ValueError(f"order {n} outside 0..{MAX_ORDER}")
        if len(self.adj) != n:
            raise ValueError("adjacency length does not match order")
        full = (1 << n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} has bits beyond order {n}")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for w in _bits(row):
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")

    # -- construction -------------------------------------------------------

    @classmethod
    def empty(cls, order: int) -> "SmallGraph":
        return cls(order, (0,) * order)

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "SmallGraph":
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge {u}-{v} outside order {order}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    @classmethod
    def complete(cls, order: int) -> "SmallGraph":
        full = (1 << order) - 1
        return cls(order, tuple(full & ~(1 << v) for v in range(order)))

    # -- queries ------------------------------------------------------------

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        out = []
        for u, row in enumerate(self.adj):
            for v in _bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.order) - 1

    def isolated_count(self) -> int:
        return sum(1 for row in self.adj if not row)

    # -- derived graphs -----------------------------------------------------

    def with_edge(self, u: int, v: int) -> "SmallGraph":
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return SmallGraph(self.order, tuple(rows))

    def without_edge(self, u: int, v: int) -> "SmallGraph":
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return SmallGraph(self.order, tuple(rows))

    def add_vertex(self, neighbors: int) -> "SmallGraph":
        """Append vertex ``order`` adjacent to the vertices in bitmask ``neighbors``."""
        n = self.order
        bit = 1 << n
        rows = [row | bit if neighbors >> v & 1 else row for v, row in enumerate(self.adj)]
        rows.append(neighbors)
        return SmallGraph(n + 1, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "SmallGraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        rows = [0] * self.order
        for v, row in enumerate(self.adj):
            new = 0
            for w in _bits(row):
                new |= 1 << perm[w]
            rows[perm[v]] = new
        return SmallGraph(self.order, tuple(rows))

    def complement(self) -> "SmallGraph":
        full = self.vertex_mask
        return SmallGraph(self.order, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def disjoint_union(self, other: "SmallGraph") -> "SmallGraph":
        n = self.order
        rows = list(self.adj) + [row << n for row in other.adj]
        return SmallGraph(n + other.order, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "SmallGraph":
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            new = 0
            for w in _bits(self.adj[v]):
                if w in index:
                    new |= 1 << index[w]
            rows.append(new)
        return SmallGraph(len(vertices), tuple(rows))

    def core(self) -> "SmallGraph":
        """The graph with isolated vertices removed (labels compacted, order kept)."""
        return self.induced([v for v in range(self.order) if self.adj[v]])

    def __str__(self) -> str:
        return emit_graph6(self)


# ---------------------------------------------------------------------------
# graph6


def _graph6_bits(g: SmallGraph) -> list[int]:
    return [g.adj[j] >> i & 1 for j in range(1, g.order) for i in range(j)]


def emit_graph6(g: SmallGraph) -> str:
    n = g.order
    bits = _graph6_bits(g)
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = val << 1 | b
        out.append(chr(63 + val))
    return "".join(out)


def parse_graph6(text: str) -> SmallGraph:
    s = text.strip()
    base = 0
    if s.startswith(">>graph6<<"):
        base = len(">>graph6<<")
        s = s[base:]
    if not s:
        raise GraphFormatError("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"byte {ch!r} outside graph6 range", base + i)
    n = ord(s[0]) - 63
    if n == 63:
        raise GraphFormatError("long-form order exceeds the 32-vertex cap", base)
    if n > MAX_ORDER:
        raise GraphFormatError(f"order {n} exceeds the 32-vertex cap", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[1:]
    if len(body) != need:
        raise GraphFormatError(
            f"expected {need} data bytes for order {n}, found {len(body)}",
            base + 1 + min(len(body), need),
        )
    bits = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> (5 - k)) & 1 for k in range(6))
    if any(bits[nbits:]):
        raise GraphFormatError("non-zero padding bits", base + len(s) - 1)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return SmallGraph(n, tuple(rows))


# ---------------------------------------------------------------------------
# canonical labeling


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement: split cells by neighbour counts into every cell.

    Splitting depends only on the partition, so the result is label-invariant.
    """
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        new_cells: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new_cells.append(cell)
            else:
                for key in keys:
                    new_cells.append([v for v in cell if sig[v] == key])
        if len(new_cells) == len(cells):
            return cells
        cells = new_cells


def _relabeled_rows(adj: Sequence[int], lab: Sequence[int]) -> tuple[int, ...]:
    pos = [0] * len(lab)
    for i, v in enumerate(lab):
        pos[v] = i
    rows = []
    for v in lab:
        new = 0
        for w in _bits(adj[v]):
            new |= 1 << pos[w]
        rows.append(new)
    return tuple(rows)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def _orbits(n: int, gens: Iterable[tuple[int, ...]]) -> _UnionFind:
    uf = _UnionFind(n)
    for gen in gens:
        for v, w in enumerate(gen):
            uf.union(v, w)
    return uf


@dataclass(frozen=True)
class CanonicalForm:
    code: bytes
    labeling: tuple[int, ...]  # labeling[i] = original vertex placed at position i
    orbits: tuple[int, ...]  # orbit representative (least vertex) of each vertex
    graph: SmallGraph = field(repr=False)
    generators: tuple[tuple[int, ...], ...] = field(repr=False, default=())


class _CanonSearch:
    """Individualization-refinement search with automorphism pruning.

    The canonical labeling is the leaf of least relabeled adjacency; two leaves
    with equal adjacency give an automorphism, which prunes sibling subtrees.
    """

    def __init__(self, g: SmallGraph):
        self.g = g
        self.adj = g.adj
        self.n = g.order
        self.first: tuple[tuple[int, ...], list[int]] | None = None
        self.first_path: list[int] = []
        self.best: tuple[tuple[int, ...], list[int]] | None = None
        self.gens: list[tuple[int, ...]] = []

    def run(self) -> CanonicalForm:
        n = self.n
        if n == 0:
            return CanonicalForm(bytes([0]), (), (), self.g, ())
        self._dfs(_refine(self.adj, [list(range(n))]), [])
        assert self.best is not None
        rows, lab = self.best
        canon = SmallGraph(n, rows)
        uf = _orbits(n, self.gens)
        orbits = tuple(uf.find(v) for v in range(n))
        code = bytes([n]) + emit_graph6(canon)[1:].encode("ascii")
        return CanonicalForm(code, tuple(lab), orbits, canon, tuple(self.gens))

    def _add_gen(self, src: list[int], dst: list[int]) -> None:
        perm = [0] * self.n
        for a, b in zip(src, dst):
            perm[a] = b
        gen = tuple(perm)
        if any(v != w for v, w in enumerate(gen)):
            self.gens.append(gen)

    def _dfs(self, cells: list[list[int]], path: list[int]) -> int | None:
        if len(cells) == self.n:
            lab = [c[0] for c in cells]
            rows = _relabeled_rows(self.adj, lab)
            if self.first is None:
                self.first = (rows, lab)
                self.first_path = list(path)
                self.best = (rows, lab)
                return None
            if rows == self.first[0]:
                self._add_gen(self.first[1], lab)
                common = 0
                for a, b in zip(path, self.first_path):
                    if a != b:
                        break
                    common += 1
                return common
            assert self.best is not None
            if rows == self.best[0]:
                self._add_gen(self.best[1], lab)
            elif rows < self.best[0]:
                self.best = (rows, lab)
            return None

        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[idx]
        explored: list[int] = []
        depth = len(path)
        for v in sorted(target):
            if explored:
                stab = [g for g in self.gens if all(g[p] == p for p in path)]
                if stab:
                    uf = _orbits(self.n, stab)
                    rv = uf.find(v)
                    if any(uf.find(u) == rv for u in explored):
                        continue
            explored.append(v)
            child = cells[:idx] + [[v], [w for w in target if w != v]] + cells[idx + 1 :]
            jump = self._dfs(_refine(self.adj, child), path + [v])
            if jump is not None and jump < depth:
                return jump
        return None


@lru_cache(maxsize=200_000)
def canonical_form(g: SmallGraph) -> CanonicalForm:
    return _CanonSearch(g).run()


def canonical_code(g: SmallGraph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic."""
    return canonical_form(g).code


def canonical_graph(g: SmallGraph) -> SmallGraph:
    return canonical_form(g).graph


def is_isomorphic(g: SmallGraph, h: SmallGraph) -> bool:
    return g.order == h.order and g.num_edges == h.num_edges and canonical_code(g) == canonical_code(h)


# ---------------------------------------------------------------------------
# embeddings (injective, edge-preserving, non-induced)


@dataclass(frozen=True)
class EmbeddingPlan:
    """Matching order for the non-isolated part of a pattern.

    ``back[i]`` lists the earlier positions adjacent to position ``i``;
    ``isolated`` is the number of isolated pattern vertices, which are never
    mapped explicitly.
    """

    vertices: tuple[int, ...]
    back: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    isolated: int


def _connectivity_order(f: SmallGraph, start: int | None = None) -> list[int]:
    remaining = [v for v in range(f.order) if f.adj[v]]
    if not remaining:
        return []
    placed: list[int] = []
    placed_mask = 0
    if start is not None:
        placed.append(start)
        placed_mask |= 1 << start
        remaining.remove(start)
    while remaining:
        best = max(
            remaining,
            key=lambda v: ((f.adj[v] & placed_mask).bit_count(), f.degree(v), -v),
        )
        placed.append(best)
        placed_mask |= 1 << best
        remaining.remove(best)
    return placed


@lru_cache(maxsize=4096)
def embedding_plan(f: SmallGraph, start: int | None = None) -> EmbeddingPlan:
    order = _connectivity_order(f, start)
    pos = {v: i for i, v in enumerate(order)}
    back = tuple(tuple(pos[w] for w in _bits(f.adj[v]) if pos[w] < i) for i, v in enumerate(order))
    return EmbeddingPlan(
        tuple(order), back, tuple(f.degree(v) for v in order), f.order - len(order)
    )


def count_core_embeddings(plan: EmbeddingPlan, g: SmallGraph, first_image: int | None = None) -> int:
    """Number of injective edge-preserving maps of the plan's core into ``g``."""
    k = len(plan.vertices)
    if k == 0:
        return 1
    adj = g.adj
    back = plan.back
    need = plan.degrees
    ok_deg = [sum(1 << v for v in range(g.order) if g.degree(v) >= d) for d in need]
    img = [0] * k

    def rec(i: int, used: int) -> int:
        cand = ok_deg[i] & ~used
        for j in back[i]:
            cand &= adj[img[j]]
        if i == k - 1:
            return cand.bit_count()
        total = 0
        while cand:
            low = cand & -cand
            cand ^= low
            img[i] = low.bit_length() - 1
            total += rec(i + 1, used | low)
        return total

    if first_image is not None:
        if not ok_deg[0] >> first_image & 1:
            return 0
        if k == 1:
            return 1
        img[0] = first_image
        return rec(1, 1 << first_image)
    return rec(0, 0)


def iter_core_embeddings(plan: EmbeddingPlan, g: SmallGraph) -> Iterator[tuple[int, ...]]:
    """Yield images (aligned to ``plan.vertices``) of every core embedding."""
    k = len(plan.vertices)
    if k == 0:
        yield ()
        return
    adj = g.adj
    back = plan.back
    ok_deg = [sum(1 << v for v in range(g.order) if g.degree(v) >= d) for d in plan.degrees]
    img = [0] * k

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        cand = ok_deg[i] & ~used
        for j in back[i]:
            cand &= adj[img[j]]
        while cand:
            low = cand & -cand
            cand ^= low
            img[i] = low.bit_length() - 1
            if i == k - 1:
                yield tuple(img)
            else:
                yield from rec(i + 1, used | low)

    yield from rec(0, 0)


def _embedding_exists(plan: EmbeddingPlan, g: SmallGraph, first_image: int | None = None) -> bool:
    k = len(plan.vertices)
    if k == 0:
        return True
    adj = g.adj
    back = plan.back
    ok_deg = [sum(1 << v for v in range(g.order) if g.degree(v) >= d) for d in plan.degrees]
    img = [0] * k

    def rec(i: int, used: int) -> bool:
        cand = ok_deg[i] & ~used
        for j in back[i]:
            cand &= adj[img[j]]
        if i == k - 1:
            return cand != 0
        while cand:
            low = cand & -cand
            cand ^= low
            img[i] = low.bit_length() - 1
            if rec(i + 1, used | low):
                return True
        return False

    if first_image is not None:
        if not ok_deg[0] >> first_image & 1:
            return False
        img[0] = first_image
        return k == 1 or rec(1, 1 << first_image)
    return rec(0, 0)


# ---------------------------------------------------------------------------
# cliques, stars and containment


def clique_number(g: SmallGraph) -> int:
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            expand(size + 1, cand & g.adj[v])

    expand(0, g.vertex_mask)
    return best


def has_clique(g: SmallGraph, r: int, within: int | None = None) -> bool:
    """True iff ``g`` has a clique on ``r`` vertices inside bitmask ``within``."""
    if r <= 0:
        return True
    cand0 = g.vertex_mask if within is None else within

    def rec(need: int, cand: int) -> bool:
        if need == 0:
            return True
        if cand.bit_count() < need:
            return False
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if rec(need - 1, cand & g.adj[v]):
                return True
        return False

    return rec(r, cand0)


def _is_complete(f: SmallGraph) -> bool:
    return f.num_edges == f.order * (f.order - 1) // 2


def _star_leaves(f: SmallGraph) -> int | None:
    """Leaf count if ``f`` (without isolated vertices) is a star with >= 2 leaves."""
    m = f.num_edges
    if m < 2 or f.order != m + 1:
        return None
    if max(f.degrees()) == m:
        return m
    return None


def contains_subgraph(g: SmallGraph, f: SmallGraph) -> bool:
    """True iff ``g`` has a (not necessarily induced) subgraph isomorphic to ``f``."""
    if f.order > g.order:
        return False
    core = f.core()
    if core.num_edges == 0:
        return True
    if core.num_edges > g.num_edges:
        return False
    if _is_complete(core):
        return has_clique(g, core.order)
    leaves = _star_leaves(core)
    if leaves is not None:
        return max(g.degrees()) >= leaves
    return _embedding_exists(embedding_plan(core), g)


def contains_subgraph_through(g: SmallGraph, f: SmallGraph, v: int) -> bool:
    """True iff some copy of ``f`` in ``g`` uses vertex ``v`` as a non-isolated vertex.

    Requires ``f`` to have no isolated vertices; callers with isolated pattern
    vertices should use :func:`contains_subgraph`.
    """
    if f.isolated_count():
        raise ValueError("pattern must not have isolated vertices")
    if f.order > g.order or f.num_edges == 0:
        return False
    if _is_complete(f):
        return has_clique(g, f.order - 1, g.adj[v])
    leaves = _star_leaves(f)
    if leaves is not None:
        if g.degree(v) >= leaves:
            return True
        return any(g.degree(w) >= leaves for w in _bits(g.adj[v]))
    cf = canonical_form(f)
    reps = sorted(set(cf.orbits))
    return any(_embedding_exists(embedding_plan(f, x), g, first_image=v) for x in reps)


# ---------------------------------------------------------------------------
# automorphisms and colouring


@lru_cache(maxsize=4096)
def automorphism_count(g: SmallGraph) -> int:
    core = g.core()
    iso = g.order - core.order
    return count_core_embeddings(embedding_plan(core), core) * math.factorial(iso)


def chromatic_number(g: SmallGraph) -> int:
    n = g.order
    if n == 0:
        return 0
    if g.num_edges == 0:
        return 1
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    lower = max(clique_number(g), 2)
    for k in range(lower, n + 1):
        if _colorable(g, order, k):
            return k
    return n


def _colorable(g: SmallGraph, order: list[int], k: int) -> bool:
    color = [-1] * g.order
    # class_mask[c] = vertices currently holding colour c
    class_mask = [0] * k

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(min(used + 1, k)):
            if class_mask[c] & g.adj[v]:
                continue
            color[v] = c
            class_mask[c] |= 1 << v
            if rec(i + 1, max(used, c + 1)):
                return True
            class_mask[c] &= ~(1 << v)
        color[v] = -1
        return False

    return rec(0, 0)


def turan_graph(m: int, n: int) -> SmallGraph:
    """Complete ``m``-partite graph on ``n`` vertices with balanced consecutive parts.

    The first ``n mod m`` parts get the larger size.
    """
    if m < 1:
        raise ValueError("need at least one part")
    sizes = turan_shape(m, n)
    return complete_multipartite(sizes)


def turan_shape(m: int, n: int) -> tuple[int, ...]:
    q, r = divmod(n, m)
    return tuple(q + 1 if i < r else q for i in range(m) if (q + 1 if i < r else q) > 0)


def complete_multipartite(sizes: Sequence[int]) -> SmallGraph:
    n = sum(sizes)
    part = []
    for idx, s in enumerate(sizes):
        part.extend([idx] * s)
    return SmallGraph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]))


def multipartite_parts(g: SmallGraph) -> list[list[int]] | None:
    """Parts if ``g`` is complete multipartite (non-adjacency is an equivalence), else None."""
    n = g.order
    parts: list[list[int]] = []
    seen = 0
    full = g.vertex_mask
    for v in range(n):
        if seen >> v & 1:
            continue
        part_mask = full & ~g.adj[v]
        for w in _bits(part_mask):
            if (full & ~g.adj[w]) != part_mask:
                return None
        parts.append(list(_bits(part_mask)))
        seen |= part_mask
    return parts
