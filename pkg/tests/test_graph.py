import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import atlas, graphs, naive_contains, nx_isomorphic, to_nx
from turanlab.errors import GraphFormatError, InvalidPatternError
from turanlab.graph import (
    SmallGraph,
    automorphism_count,
    canonical_code,
    canonical_form,
    chromatic_number,
    clique_number,
    complete_multipartite,
    contains_subgraph,
    contains_subgraph_through,
    emit_graph6,
    multipartite_parts,
    parse_graph6,
    turan_graph,
)
from turanlab.patterns import (
    F2,
    M,
    Clique,
    Cycle,
    Path,
    Star,
    pattern_expand,
)

C5 = pattern_expand(Cycle(5))


def test_pattern_examples():
    m = pattern_expand(M)
    assert (m.order, m.edges()) == (5, [(0, 1), (2, 3)])
    k1 = pattern_expand(Clique(1))
    assert (k1.order, k1.num_edges) == (1, 0)
    f2 = pattern_expand(F2)
    assert f2.order == 5
    assert set(f2.edges()) == {(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)}


def test_cycle_needs_three_vertices():
    with pytest.raises(InvalidPatternError):
        pattern_expand(Cycle(2))


def test_vertex_count_convention():
    assert pattern_expand(Path(4)).num_edges == 3
    assert pattern_expand(Star(4)).degrees() == [3, 1, 1, 1]


def test_invalid_adjacency_rejected():
    with pytest.raises(ValueError):
        SmallGraph(2, (2, 0))
    with pytest.raises(ValueError):
        SmallGraph(2, (1, 1))
    with pytest.raises(ValueError):
        SmallGraph(1, (2,))


def test_relabeled_cycle_same_code():
    other = SmallGraph.from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)])
    assert canonical_code(C5) == canonical_code(other)


def test_path_and_star_differ():
    assert canonical_code(pattern_expand(Path(4))) != canonical_code(pattern_expand(Star(4)))


def test_three_edge_graphs_on_four_vertices():
    pairs = list(itertools.combinations(range(4), 2))
    graphs_ = [SmallGraph.from_edges(4, es) for es in itertools.combinations(pairs, 3)]
    assert len(graphs_) == 20
    codes = {canonical_code(g) for g in graphs_}
    # independent oracle: networkx isomorphism classes
    reps = []
    for g in graphs_:
        if not any(nx_isomorphic(g, r) for r in reps):
            reps.append(g)
    assert len(codes) == len(reps) == 3


def test_all_64_labeled_graphs_on_four_vertices():
    pairs = list(itertools.combinations(range(4), 2))
    codes = set()
    for mask in range(64):
        g = SmallGraph.from_edges(4, [p for i, p in enumerate(pairs) if mask >> i & 1])
        codes.add(canonical_code(g))
    assert len(codes) == 11


@given(graphs(max_order=9), st.data())
def test_code_invariant_under_relabeling(g, data):
    perm = data.draw(st.permutations(list(range(g.order))))
    assert canonical_code(g) == canonical_code(g.relabel(perm))


@given(graphs(max_order=7), graphs(max_order=7))
def test_code_equality_matches_isomorphism(a, b):
    assert (canonical_code(a) == canonical_code(b)) == nx_isomorphic(a, b)


@given(graphs(max_order=8))
def test_orbits_are_automorphism_orbits(g):
    cf = canonical_form(g)
    gm = nx.algorithms.isomorphism.GraphMatcher(to_nx(g), to_nx(g))
    orbit = {v: {v} for v in range(g.order)}
    for mapping in itertools.islice(gm.isomorphisms_iter(), 2000):
        for v, w in mapping.items():
            orbit[v].add(w)
    for v in range(g.order):
        for w in orbit[v]:
            assert cf.orbits[v] == cf.orbits[w]


@pytest.mark.parametrize(
    "g, expected",
    [(SmallGraph.complete(4), 24), (C5, 10), (pattern_expand(M), 8), (SmallGraph.empty(0), 1)],
)
def test_automorphism_examples(g, expected):
    assert automorphism_count(g) == expected


def _brute_aut(g: SmallGraph) -> int:
    edges = set(g.edges())
    return sum(
        1
        for p in itertools.permutations(range(g.order))
        if {tuple(sorted((p[u], p[v]))) for u, v in edges} == edges
    )


@given(graphs(max_order=6))
def test_automorphism_count_brute_force(g):
    assert automorphism_count(g) == _brute_aut(g)


def test_containment_examples():
    assert contains_subgraph(SmallGraph.complete(4), SmallGraph.complete(3))
    assert not contains_subgraph(C5, SmallGraph.complete(3))
    assert contains_subgraph(turan_graph(2, 6), pattern_expand(Cycle(4)))


def test_isolated_pattern_vertices_need_spare_vertices():
    m = pattern_expand(M)
    two_edges = SmallGraph.from_edges(4, [(0, 1), (2, 3)])
    assert not contains_subgraph(two_edges, m)
    assert contains_subgraph(two_edges.add_vertex(0), m)


@given(graphs(max_order=7), graphs(max_order=5))
def test_containment_matches_naive(g, f):
    assert contains_subgraph(g, f) == naive_contains(g, f)


@given(graphs(min_order=1, max_order=7), graphs(min_order=1, max_order=4))
def test_containment_through_vertex(g, f):
    if f.isolated_count():
        return
    v = g.order - 1
    fe = f.edges()
    expected = any(
        v in image and all(g.has_edge(image[a], image[b]) for a, b in fe)
        for image in itertools.permutations(range(g.order), f.order)
    )
    assert contains_subgraph_through(g, f, v) == expected


def _petersen() -> SmallGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SmallGraph.from_edges(10, outer + spokes + inner)


def test_chromatic_examples():
    assert chromatic_number(C5) == 3
    assert chromatic_number(turan_graph(3, 7)) == 3
    assert chromatic_number(_petersen()) == 3
    assert chromatic_number(SmallGraph.empty(0)) == 0
    assert chromatic_number(SmallGraph.empty(3)) == 1


@given(graphs(max_order=8))
def test_chromatic_at_least_clique_number(g):
    chi = chromatic_number(g)
    assert chi >= clique_number(g)
    greedy = nx.algorithms.coloring.greedy_color(to_nx(g))
    assert chi <= max(greedy.values(), default=-1) + 1


@pytest.mark.parametrize("m", range(1, 6))
@pytest.mark.parametrize("n", range(0, 9))
def test_chromatic_of_turan(m, n):
    assert chromatic_number(turan_graph(m, n)) == min(m, n)


def test_graph6_round_trip_over_small_graphs():
    for n in range(0, 6):
        for g in atlas(n):
            s = emit_graph6(g)
            assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
            back = parse_graph6(s)
            assert back == g
            assert emit_graph6(back) == s


def test_graph6_header_accepted():
    assert parse_graph6(">>graph6<<DFw") == parse_graph6("DFw")


def test_graph6_empty_order():
    g = parse_graph6(emit_graph6(SmallGraph.empty(0)))
    assert g.order == 0


@pytest.mark.parametrize("bad", ["~??", "D", "D?{?", "D\x01?", ""])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(GraphFormatError) as info:
        parse_graph6(bad)
    assert "at byte" in str(info.value)


def test_graph6_order_above_cap():
    with pytest.raises(GraphFormatError):
        parse_graph6("~?@A" + "?" * 100)


@given(graphs(max_order=12))
def test_graph6_property_round_trip(g):
    assert parse_graph6(emit_graph6(g)) == g


@given(graphs(max_order=8))
def test_mutations_preserve_validity(g):
    for u, v in itertools.combinations(range(g.order), 2):
        h = g.with_edge(u, v).without_edge(u, v) if not g.has_edge(u, v) else g.without_edge(u, v).with_edge(u, v)
        assert h == g
    c = g.complement()
    for v in range(g.order):
        assert not c.adj[v] >> v & 1


def test_multipartite_parts():
    assert multipartite_parts(complete_multipartite([3, 2, 2])) == [[0, 1, 2], [3, 4], [5, 6]]
    assert multipartite_parts(C5) is None
