import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import atlas, graphs, nx_isomorphic
from turanlab.constructions import EdgeColoring
from turanlab.counting import (
    brute_force_copies,
    count_bipartite_closed_form,
    count_cliques_multipartite,
    count_colored,
    count_copies,
    count_embeddings,
    count_pattern,
    reduced_zagreb,
    second_zagreb,
    vertex_copy_degrees,
)
from turanlab.errors import InvalidColoringError
from turanlab.graph import SmallGraph, automorphism_count, complete_multipartite, turan_graph
from turanlab.patterns import M, Clique, CompleteBipartite, Cycle, Matching, Path, pattern_expand

K3, K4 = SmallGraph.complete(3), SmallGraph.complete(4)
C5 = pattern_expand(Cycle(5))
SMALL_PATTERNS = [g for n in range(0, 5) for g in atlas(n)]


def test_copy_examples():
    assert count_copies(K3, K4) == 4
    assert count_pattern(Path(5), C5) == 5
    assert count_pattern(M, C5) == 5
    assert brute_force_copies(pattern_expand(M), C5, nx_isomorphic) == 5


def test_pattern_larger_than_host():
    assert count_copies(K4, K3) == 0


@given(st.sampled_from(SMALL_PATTERNS), graphs(max_order=7))
def test_copies_match_brute_force(h, g):
    assert count_copies(h, g) == brute_force_copies(h, g, nx_isomorphic)


@given(st.sampled_from(SMALL_PATTERNS), graphs(max_order=8))
def test_embeddings_divisible_by_automorphisms(h, g):
    assert count_embeddings(h, g) % automorphism_count(h) == 0


@given(st.sampled_from(SMALL_PATTERNS), graphs(min_order=2, max_order=8), st.data())
def test_adding_an_edge_never_decreases(h, g, data):
    missing = [(u, v) for u, v in itertools.combinations(range(g.order), 2) if not g.has_edge(u, v)]
    if not missing:
        return
    u, v = data.draw(st.sampled_from(missing))
    assert count_copies(h, g.with_edge(u, v)) >= count_copies(h, g)


def test_colored_examples():
    k4 = EdgeColoring.monochrome(K4, 1, 2)
    vec = count_colored((Clique(3), Clique(2)), k4)
    assert tuple(vec) == (4, 0) and vec.total == 4
    g = SmallGraph.complete(6).disjoint_union(SmallGraph.complete(2))
    c = EdgeColoring.from_map(g, {e: 2 if e == (6, 7) else 1 for e in g.edges()}, 2)
    vec = count_colored((Clique(3), Clique(2)), c)
    assert tuple(vec) == (20, 1) and vec.total == 21
    empty = EdgeColoring(SmallGraph.empty(4), (), 3)
    assert tuple(count_colored((Clique(2), Clique(2), M), empty)) == (0, 0, 0)


def test_colored_counts_keep_isolated_vertices():
    # the colour-2 class is a single edge, but M still finds spare vertices
    g = SmallGraph.from_edges(5, [(0, 1), (2, 3)])
    c = EdgeColoring(g, (2, 2), 2)
    assert tuple(count_colored((Clique(2), M), c)) == (0, 1)


def test_colored_requires_matching_color_count():
    c = EdgeColoring.monochrome(K4, 1, 2)
    with pytest.raises(InvalidColoringError):
        count_colored((Clique(3),), c)
    with pytest.raises(InvalidColoringError):
        EdgeColoring(K3, (1, 2, 3), 2)


@pytest.mark.parametrize(
    "r, shape, expected", [(2, (3, 2), 6), (3, (2, 2, 2), 8), (3, (3, 2, 2), 12)]
)
def test_multipartite_clique_examples(r, shape, expected):
    assert count_cliques_multipartite(r, shape) == expected
    assert count_copies(SmallGraph.complete(r), complete_multipartite(shape)) == expected


def test_clique_closed_form_on_turan():
    assert count_copies(K3, turan_graph(3, 7)) == 12


def _shapes(max_n):
    for n in range(1, max_n + 1):
        for parts in range(1, n + 1):
            for shape in itertools.combinations_with_replacement(range(n, 0, -1), parts):
                if sum(shape) == n and list(shape) == sorted(shape, reverse=True):
                    yield shape


def test_clique_closed_form_all_shapes():
    for shape in _shapes(9):
        g = complete_multipartite(shape)
        for r in range(1, 5):
            assert count_cliques_multipartite(r, shape) == count_copies(SmallGraph.complete(r), g)


@pytest.mark.parametrize("a, b, x, y, expected", [(1, 1, 2, 3, 6), (2, 2, 2, 2, 1), (1, 2, 2, 2, 4)])
def test_bipartite_closed_form_examples(a, b, x, y, expected):
    assert count_bipartite_closed_form(a, b, x, y) == expected


def test_bipartite_closed_form_all_splits():
    for n in range(1, 10):
        for x in range(0, n + 1):
            host = complete_multipartite([s for s in (x, n - x) if s])
            for a in range(1, 4):
                for b in range(a, 5):
                    h = pattern_expand(CompleteBipartite(a, b))
                    assert count_bipartite_closed_form(a, b, x, n - x) == count_copies(h, host)


def test_zagreb_examples():
    c4 = pattern_expand(Cycle(4))
    assert reduced_zagreb(c4) == 4 == count_pattern(Path(4), c4)
    assert reduced_zagreb(K3) == 3
    assert reduced_zagreb(SmallGraph.empty(5)) == 0


def test_unreduced_zagreb_fails_on_p3():
    p3 = pattern_expand(Path(3))
    assert second_zagreb(p3) == 4
    assert count_pattern(Path(4), p3) + 3 * count_pattern(Clique(3), p3) == 0


@given(graphs(max_order=9))
def test_zagreb_identity(g):
    assert reduced_zagreb(g) == count_pattern(Path(4), g) + 3 * count_pattern(Clique(3), g)


def test_matching_count_closed_form():
    from math import factorial

    for n in range(0, 11):
        for t in range(1, 4):
            want = factorial(n) // (factorial(n - 2 * t) * 2**t * factorial(t)) if n >= 2 * t else 0
            assert count_pattern(Matching(t), SmallGraph.complete(n)) == want


@given(st.sampled_from(SMALL_PATTERNS), graphs(max_order=7))
def test_vertex_copy_degrees_sum(h, g):
    if h.order == 0:
        return
    assert sum(vertex_copy_degrees(h, g)) == h.order * count_copies(h, g)


def test_random_hosts_against_oracle():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(0, 7)
        g = SmallGraph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5])
        h = rng.choice(SMALL_PATTERNS)
        assert count_copies(h, g) == brute_force_copies(h, g, nx_isomorphic)
