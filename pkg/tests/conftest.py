"""Shared strategies and independent oracles (networkx is used only here, never by the package)."""

from __future__ import annotations

import itertools
import os

import networkx as nx
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from turanlab.graph import SmallGraph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=1000, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_order: int = 0, max_order: int = 8) -> SmallGraph:
    n = draw(st.integers(min_order, max_order))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SmallGraph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def permutations_of(draw, n: int) -> list[int]:
    return draw(st.permutations(list(range(n))))


def to_nx(g: SmallGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> SmallGraph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return SmallGraph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges()])


def nx_isomorphic(a: SmallGraph, b: SmallGraph) -> bool:
    return a.order == b.order and a.num_edges == b.num_edges and nx.is_isomorphic(to_nx(a), to_nx(b))


def nx_contains(g: SmallGraph, f: SmallGraph) -> bool:
    """Non-induced containment via networkx monomorphism, isolated vertices included."""
    if f.order > g.order:
        return False
    matcher = nx.algorithms.isomorphism.GraphMatcher(to_nx(g), to_nx(f))
    return matcher.subgraph_is_monomorphic()


def atlas(n: int) -> list[SmallGraph]:
    """All unlabeled graphs on ``n`` <= 7 vertices from the networkx atlas."""
    return [from_nx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() == n]


def naive_contains(g: SmallGraph, f: SmallGraph) -> bool:
    """Try every injective vertex map."""
    fe = f.edges()
    for image in itertools.permutations(range(g.order), f.order):
        if all(g.has_edge(image[u], image[v]) for u, v in fe):
            return True
    return False
