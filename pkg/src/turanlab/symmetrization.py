"""Zykov symmetrization on edge-coloured K_m-free graphs whose counted patterns are cliques.

Every step is checked by recounting the objective from scratch and by a fresh
K_m containment test; nothing is tracked incrementally.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constructions import EdgeColoring
from .counting import count_cliques
from .errors import InvalidPatternError, InvalidStepError, InvariantViolation
from .graph import SmallGraph, has_clique, multipartite_parts
from .patterns import PatternSpec, pattern_expand


def clique_orders(patterns: Sequence[PatternSpec]) -> tuple[int, ...]:
    out = []
    for p in patterns:
        g = pattern_expand(p)
        if g.num_edges != g.order * (g.order - 1) // 2:
            raise InvalidPatternError(f"symmetrization needs clique patterns, got {p}")
        out.append(g.order)
    return tuple(out)


def _matrix(c: EdgeColoring) -> list[list[int]]:
    n = c.order
    mat = [[0] * n for _ in range(n)]
    for (u, v), col in zip(c.base.edges(), c.colors):
        mat[u][v] = mat[v][u] = col
    return mat


def _coloring(mat: list[list[int]], k: int) -> EdgeColoring:
    n = len(mat)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if mat[u][v]]
    return EdgeColoring(SmallGraph.from_edges(n, edges), tuple(mat[u][v] for u, v in edges), k)


def _class_masks(mat: list[list[int]], k: int) -> list[list[int]]:
    """Per colour, the neighbour bitsets of that colour's spanning subgraph."""
    n = len(mat)
    rows = [[0] * n for _ in range(k + 1)]
    for u in range(n):
        for v in range(n):
            c = mat[u][v]
            if c:
                rows[c][u] |= 1 << v
    return rows


def objective_of(c: EdgeColoring, orders: Sequence[int]) -> int:
    rows = _class_masks(_matrix(c), c.k)
    total = 0
    for i, r in enumerate(orders):
        g = SmallGraph(c.order, tuple(rows[i + 1]))
        total += count_cliques(g, r)
    return total


@dataclass(frozen=True)
class Step:
    kind: str
    detail: dict
    before: int
    after: int

    def to_json(self) -> str:
        return json.dumps({"step": self.kind, **self.detail, "before": self.before, "after": self.after}, sort_keys=True)


@dataclass
class SymmetrizationState:
    coloring: EdgeColoring
    patterns: tuple[PatternSpec, ...]
    m: int
    objective: int = -1
    trace: list[Step] = field(default_factory=list)

    def __post_init__(self):
        self.patterns = tuple(self.patterns)
        self.coloring.require_colors(len(self.patterns))
        self.orders = clique_orders(self.patterns)
        if self.m < 2:
            raise ValueError("forbidden clique order must be >= 2")
        if has_clique(self.coloring.base, self.m):
            raise InvalidStepError(f"host contains K_{self.m}")
        fresh = objective_of(self.coloring, self.orders)
        if self.objective not in (-1, fresh):
            raise InvariantViolation(f"stored objective {self.objective} != recount {fresh}")
        self.objective = fresh

    @property
    def order(self) -> int:
        return self.coloring.order

    @property
    def k(self) -> int:
        return len(self.patterns)

    def matrix(self) -> list[list[int]]:
        return _matrix(self.coloring)

    def _advance(self, mat: list[list[int]], kind: str, detail: dict) -> "SymmetrizationState":
        new = _coloring(mat, self.k)
        if has_clique(new.base, self.m):
            raise InvariantViolation(f"{kind} step created K_{self.m}", {"detail": detail})
        after = objective_of(new, self.orders)
        if after < self.objective:
            raise InvariantViolation(
                f"{kind} step decreased the objective {self.objective} -> {after}", {"detail": detail}
            )
        step = Step(kind, detail, self.objective, after)
        return SymmetrizationState(new, self.patterns, self.m, after, self.trace + [step])

    def trace_lines(self) -> list[str]:
        return [s.to_json() for s in self.trace]


def dstar(v: int, state: SymmetrizationState) -> int:
    """Sum over colours i of the colour-i copies of H_i that contain ``v``."""
    if not 0 <= v < state.order:
        raise IndexError(v)
    rows = _class_masks(state.matrix(), state.k)
    total = 0
    for i, r in enumerate(state.orders):
        nbrs = rows[i + 1][v]
        if r == 1:
            total += 1
        else:
            g = SmallGraph(state.order, tuple(rows[i + 1]))
            total += count_cliques(g, r - 1, within=nbrs)
    return total


def symmetrize_vertex(state: SymmetrizationState, u: int, v: int) -> SymmetrizationState:
    """Replace the coloured neighbourhood of ``u`` by a copy of ``v``'s."""
    if u == v or state.coloring.base.has_edge(u, v):
        raise InvalidStepError(f"vertices {u} and {v} must be distinct and non-adjacent")
    du, dv = dstar(u, state), dstar(v, state)
    if du > dv:
        raise InvalidStepError(f"dstar({u})={du} exceeds dstar({v})={dv}")
    mat = state.matrix()
    for w in range(state.order):
        if w != u:
            mat[u][w] = mat[w][u] = mat[v][w] if w != v else 0
    return state._advance(mat, "vertex", {"u": u, "v": v})


# ---------------------------------------------------------------------------
# packs


@dataclass
class PackStructure:
    small: list[list[int]]
    colors: list[list[int]]
    medium: list[list[int]] = field(default_factory=list)
    large: list[list[int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"small": self.small, "colors": self.colors, "medium": self.medium, "large": self.large}


def _pack_colors(mat: list[list[int]], small: list[list[int]]) -> list[list[int]]:
    q = len(small)
    out = [[0] * q for _ in range(q)]
    for a in range(q):
        for b in range(q):
            if a != b:
                out[a][b] = mat[small[a][0]][small[b][0]]
    return out


def check_packs(state: SymmetrizationState, small: list[list[int]]) -> list[list[int]]:
    """Validate a small-pack partition and return its pack colour matrix."""
    mat = state.matrix()
    seen = sorted(v for p in small for v in p)
    if seen != list(range(state.order)) or any(not p for p in small):
        raise InvalidStepError("small packs must partition the vertex set")
    where = {v: i for i, p in enumerate(small) for v in p}
    for u in range(state.order):
        for w in range(u + 1, state.order):
            a, b = where[u], where[w]
            if a == b and mat[u][w]:
                raise InvalidStepError(f"small pack {a} is not independent")
            if a != b and mat[u][w] != mat[small[a][0]][small[b][0]]:
                raise InvalidStepError(f"edges between packs {a} and {b} are not one colour")
            if a != b and not mat[u][w]:
                raise InvalidStepError(f"packs {a} and {b} are not completely joined")
    return _pack_colors(mat, small)


def run_phases(state: SymmetrizationState) -> tuple[SymmetrizationState, PackStructure]:
    """Vertex phases: clone every non-neighbour of a max-dstar vertex onto it, then recurse on the rest."""
    remaining = list(range(state.order))
    small: list[list[int]] = []
    while remaining:
        scores = {v: dstar(v, state) for v in remaining}
        center = max(remaining, key=lambda v: (scores[v], -v))
        adj = state.coloring.base.adj[center]
        part = [center]
        for u in remaining:
            if u == center or adj >> u & 1:
                continue
            # each clone can only lower the dstar of other non-neighbours of the centre
            state = symmetrize_vertex(state, u, center)
            part.append(u)
        small.append(sorted(part))
        remaining = [v for v in remaining if v not in part]
    small.sort()
    parts = multipartite_parts(state.coloring.base)
    if parts is None or len(parts) > state.m - 1:
        raise InvariantViolation("phases did not produce a complete multipartite host with < m parts")
    return state, PackStructure(small, check_packs(state, small))


# ---------------------------------------------------------------------------
# class symmetrization


def color_order(state: SymmetrizationState) -> list[int]:
    """Colours sorted by clique order, then index, skipping colours without edges."""
    present = set(state.coloring.colors)
    return [c for c in sorted(range(1, state.k + 1), key=lambda c: (state.orders[c - 1], c)) if c in present]


def _unit_color(mat, units, a, b) -> int:
    return mat[units[a][0]][units[b][0]]


def _twins(mat, units, a, b) -> bool:
    return all(_unit_color(mat, units, a, c) == _unit_color(mat, units, b, c) for c in range(len(units)) if c not in (a, b))


def _copy_profile(mat, units, src: int, dst: int) -> list[list[int]]:
    """Recolour edges from unit ``src`` to every third unit with the colours of unit ``dst``."""
    out = [row[:] for row in mat]
    inside = set(units[src]) | set(units[dst])
    rep = units[dst][0]
    for x in units[src]:
        for z in range(len(mat)):
            if z not in inside and mat[rep][z]:
                out[x][z] = out[z][x] = mat[rep][z]
    return out


def _key(mat) -> tuple:
    return tuple(map(tuple, mat))


def _equalize(state: SymmetrizationState, units: list[list[int]], color: int, label: str):
    """Make every pair of units joined by ``color`` twins via non-decreasing unit symmetrizations.

    Returns the new state and whether every such pair ended up as twins.
    Previously visited colourings are never re-entered, so the loop terminates.
    """
    seen = {_key(state.matrix())}
    while True:
        mat = state.matrix()
        pairs = [
            (a, b)
            for a in range(len(units))
            for b in range(a + 1, len(units))
            if _unit_color(mat, units, a, b) == color and not _twins(mat, units, a, b)
        ]
        if not pairs:
            return state, True
        moved = False
        for a, b in pairs:
            best = None
            for src, dst in ((a, b), (b, a)):
                cand = _copy_profile(mat, units, src, dst)
                if _key(cand) in seen:
                    continue
                val = objective_of(_coloring(cand, state.k), state.orders)
                if val >= state.objective and (best is None or val > best[0]):
                    best = (val, src, dst, cand)
            if best is None:
                continue
            _, src, dst, cand = best
            seen.add(_key(cand))
            state = state._advance(cand, label, {"from": src, "to": dst, "color": color})
            moved = True
            break
        if not moved:
            return state, False


def _classes(units_count: int, related) -> list[list[int]]:
    out: list[list[int]] = []
    for a in range(units_count):
        for cls in out:
            if related(a, cls[0]):
                cls.append(a)
                break
        else:
            out.append([a])
    return out


@dataclass
class ClassOutcome:
    state: SymmetrizationState
    packs: PackStructure
    blue: int | None
    red: int | None
    settled: bool
    recolored: bool


def symmetrize_classes(
    state: SymmetrizationState, packs: PackStructure, order: Sequence[int] | None = None
) -> ClassOutcome:
    """Blue stage over small packs, red stage over medium packs, then the pack recolouring step."""
    colors = check_packs(state, packs.small)
    if colors != packs.colors:
        raise InvalidStepError("pack colour matrix does not match the state")
    order = list(order) if order is not None else color_order(state)
    small = packs.small
    q = len(small)
    if not order:
        return ClassOutcome(state, PackStructure(small, colors, [[i] for i in range(q)], [[i] for i in range(q)]), None, None, True, False)
    blue = order[0]
    state, settled = _equalize(state, small, blue, "class-blue")
    mat = state.matrix()
    medium = _classes(q, lambda a, b: _unit_color(mat, small, a, b) == blue)
    if not settled or any(not _twins(mat, small, a, b) for cls in medium for a in cls for b in cls if a < b):
        packs = PackStructure(small, _pack_colors(mat, small), medium, [])
        return ClassOutcome(state, packs, blue, None, False, False)

    present = set(state.coloring.colors)
    red = next((c for c in order[1:] if c in present), None)
    if red is None:
        packs = PackStructure(small, _pack_colors(mat, small), medium, [[i] for i in range(len(medium))])
        return ClassOutcome(state, packs, blue, None, True, False)

    munits = [[v for s in cls for v in small[s]] for cls in medium]
    state, settled = _equalize(state, munits, red, "class-red")
    mat = state.matrix()
    large = _classes(len(munits), lambda a, b: _unit_color(mat, munits, a, b) == red)
    packs = PackStructure(small, _pack_colors(mat, small), medium, large)
    if not settled:
        return ClassOutcome(state, packs, blue, red, False, False)

    qred = state.orders[red - 1]
    recolored = False
    for mi, cls in enumerate(medium):
        if len(cls) < 2:
            continue
        touching = {
            s for s in range(q) if s not in cls and _unit_color(mat, small, s, cls[0]) == red
        }
        if len(touching) < qred - 1:
            continue
        new = [row[:] for row in mat]
        for a in cls:
            for b in cls:
                if a != b:
                    for x in small[a]:
                        for y in small[b]:
                            new[x][y] = red
        state = state._advance(new, "recolor-pack", {"medium": mi, "color": red, "red_neighbours": len(touching)})
        recolored = True
        break
    mat = state.matrix()
    packs = PackStructure(small, _pack_colors(mat, small), medium, large)
    return ClassOutcome(state, packs, blue, red, True, recolored)


def run_pipeline(state: SymmetrizationState, max_rounds: int = 16) -> tuple[SymmetrizationState, PackStructure, bool]:
    """Phases then class symmetrization, repeated while the recolouring step fires.

    The third value reports whether the last class stage reached the twin structure.
    """
    state, packs = run_phases(state)
    settled = True
    for _ in range(max_rounds):
        out = symmetrize_classes(state, packs)
        state, packs, settled = out.state, out.packs, out.settled
        if not out.recolored:
            break
        state, packs = run_phases(state)
    return state, packs, settled


def is_monochromatic_turan(state: SymmetrizationState) -> bool:
    parts = multipartite_parts(state.coloring.base)
    if parts is None or len(set(state.coloring.colors)) > 1:
        return False
    sizes = [len(p) for p in parts]
    return max(sizes) - min(sizes) <= 1


# ---------------------------------------------------------------------------
# samplers and export


def random_colored_host(n: int, m: int, k: int, rng: random.Random, density: float = 0.6) -> EdgeColoring:
    """Random K_m-free graph built by inserting shuffled edges, with uniform random colours."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    g = SmallGraph.empty(n)
    for u, v in pairs:
        if rng.random() > density:
            continue
        cand = g.with_edge(u, v)
        common = g.adj[u] & g.adj[v]
        if has_clique(g, m - 2, within=common):
            continue
        g = cand
    return EdgeColoring(g, tuple(rng.randint(1, k) for _ in range(g.num_edges)), k)


def export_trace(state: SymmetrizationState) -> str:
    return "".join(line + "\n" for line in state.trace_lines())


def replay_check(initial: SymmetrizationState, steps: Iterable[Step]) -> bool:
    prev = initial.objective
    for s in steps:
        if s.before != prev or s.after < s.before:
            return False
        prev = s.after
    return True
