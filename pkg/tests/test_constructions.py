import pytest

from turanlab.constructions import (
    ConstructionSpec,
    EdgeColoring,
    build,
    designated_forbidden,
    evaluate,
    format_colored,
    format_construction,
    is_free,
    parse_construction,
    parse_host,
)
from turanlab.counting import count_cliques_multipartite
from turanlab.errors import InvalidColoringError, InvalidConstructionError
from turanlab.graph import SmallGraph, is_isomorphic, multipartite_parts, turan_shape
from turanlab.patterns import F2, Clique, Cycle, Matching, Star, pattern_expand
from turanlab.search import SearchProblem, cex_multi, ex_multi


def test_turan_example():
    g = build(ConstructionSpec("TuranGraph", (2, 5)))
    assert g.num_edges == 6
    assert sorted(len(p) for p in multipartite_parts(g)) == [2, 3]


def test_colored_fn_star():
    c = build(ConstructionSpec("ColoredFnStar", (9,)))
    blue = c.color_class(1)
    red = c.color_class(2)
    assert blue.num_edges == 8 and blue.degree(0) == 8
    assert red.num_edges == 4 and max(red.degrees()) == 1


def test_disjoint_cliques_example():
    g = build(ConstructionSpec("DisjointCliquesPlusRemainder", (7, 8)))
    assert is_isomorphic(g, SmallGraph.complete(6).disjoint_union(SmallGraph.complete(2)))


def test_turan_plus_edge_lies_in_larger_part():
    for n in range(3, 10):
        g = build(ConstructionSpec("TuranPlusEdge", (n,)))
        parts = multipartite_parts(build(ConstructionSpec("TuranGraph", (2, n))))
        larger = max(parts, key=len)
        assert g.has_edge(larger[0], larger[1])
        assert g.num_edges == n // 2 * (n - n // 2) + 1


@pytest.mark.parametrize(
    "spec",
    [
        ConstructionSpec("TuranPlusEdge", (2,)),
        ConstructionSpec("BlueK6PacksRedEdge", (0,)),
        ConstructionSpec("TuranGraph", (0, 4)),
        ConstructionSpec("DisjointCliquesPlusRemainder", (1, 4)),
        ConstructionSpec("Blowup", (Cycle(5), (1, 1))),
    ],
)
def test_inconsistent_parameters(spec):
    with pytest.raises(InvalidConstructionError):
        build(spec)


def test_unknown_kind():
    with pytest.raises(InvalidConstructionError):
        ConstructionSpec("Nope", ())


def test_evaluate_examples():
    assert tuple(evaluate(ConstructionSpec("BlueK6PacksRedEdge", (1,)), (Clique(3), Clique(2)))) == (20, 1)
    vec = evaluate(ConstructionSpec("ColoredFnStar", (9,)), (Star(4), Matching(2)))
    assert tuple(vec) == (56, 6) and vec.total == 62
    assert tuple(evaluate(ConstructionSpec("TuranGraph", (2, 6)), (Clique(3),))) == (0,)


def test_colored_evaluate_needs_k_patterns():
    with pytest.raises(InvalidColoringError):
        evaluate(ConstructionSpec("BlueK6PacksRedEdge", (1,)), (Clique(3),))


def test_is_free_examples():
    assert is_free(ConstructionSpec("TuranPlusEdge", (8,)), F2)
    assert is_free(ConstructionSpec("TuranGraph", (3, 9)), Clique(4))
    assert is_free(ConstructionSpec("DisjointCliquesPlusRemainder", (7, 8)), Star(7))


def _all_specs():
    for m in range(1, 5):
        for n in range(0, 11):
            yield ConstructionSpec("TuranGraph", (m, n))
    for n in range(3, 11):
        yield ConstructionSpec("TuranPlusEdge", (n,))
        yield ConstructionSpec("BlueTuranRedEdge", (n,))
    for n in range(2, 12):
        yield ConstructionSpec("ColoredFnStar", (n,))
        yield ConstructionSpec("StarPlusMatching", (n,))
    for ell in range(2, 8):
        for n in range(0, 13):
            yield ConstructionSpec("DisjointCliquesPlusRemainder", (ell, n))
    for s in range(0, 3):
        yield ConstructionSpec("Blowup", (Cycle(5), (s + 1, s, s + 1, s, s + 1)))
    for p in range(1, 4):
        yield ConstructionSpec("BlueK6PacksRedEdge", (p,))


@pytest.mark.parametrize("spec", list(_all_specs()), ids=str)
def test_designated_forbidden_graph_is_avoided(spec):
    forbidden = designated_forbidden(spec)
    assert forbidden is not None
    assert is_free(spec, forbidden)


def test_turan_evaluation_matches_closed_form():
    for m in range(1, 13):
        for n in range(0, 13):
            spec = ConstructionSpec("TuranGraph", (m, n))
            shape = turan_shape(m, n)
            assert max(shape, default=0) - min(shape, default=0) <= 1
            for r in range(1, 5):
                assert evaluate(spec, (Clique(r),)).total == count_cliques_multipartite(r, shape)


def test_constructions_are_lower_bounds():
    for n in range(3, 8):
        spec = ConstructionSpec("BlueTuranRedEdge", (n,))
        pats = (Cycle(4), Clique(2))
        assert evaluate(spec, pats).total <= cex_multi(SearchProblem(n, pats, F2, "colored")).value
        plain = ConstructionSpec("TuranPlusEdge", (n,))
        assert evaluate(plain, (Clique(2),)).total <= ex_multi(SearchProblem(n, (Clique(2),), F2)).value
    for n in range(1, 8):
        for r in (2, 3):
            spec = ConstructionSpec("TuranGraph", (3, n))
            assert evaluate(spec, (Clique(r),)).total == ex_multi(SearchProblem(n, (Clique(r),), Clique(4))).value


@pytest.mark.parametrize("text", ["turan:3,9", "fnstar:9", "k6packs:1", "cliques:7,8", "blowup:C5/2,2,2,2,2"])
def test_cli_strings_round_trip(text):
    spec = parse_construction(text)
    assert format_construction(spec) == text
    assert str(spec) == text


@pytest.mark.parametrize("text", ["turan:3", "nope:1", "blowup:C5", "turan:a,b"])
def test_cli_strings_rejected(text):
    with pytest.raises(InvalidConstructionError):
        parse_construction(text)


def test_parse_host_forms():
    assert parse_host("turan:2,5").num_edges == 6
    c = build(ConstructionSpec("BlueK6PacksRedEdge", (1,)))
    assert parse_host(format_colored(c)) == c
    g = parse_host("D~{")
    assert isinstance(g, SmallGraph) and g.order == 5


def test_edge_coloring_validation():
    k3 = SmallGraph.complete(3)
    with pytest.raises(InvalidColoringError):
        EdgeColoring(k3, (1, 1), 1)
    with pytest.raises(InvalidColoringError):
        EdgeColoring.from_map(k3, {(0, 1): 1, (1, 2): 1}, 1)
    with pytest.raises(InvalidColoringError):
        EdgeColoring.from_map(k3, {(0, 1): 1, (1, 2): 1, (0, 2): 1, (0, 3): 1}, 1)
    c = EdgeColoring.from_map(k3, {(1, 0): 2, (1, 2): 1, (2, 0): 1}, 2)
    assert c.color_of(0, 1) == 2 and c.color_class(2).edges() == [(0, 1)]
    assert pattern_expand(Clique(3)) == k3
