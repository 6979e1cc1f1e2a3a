import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turanlab.constructions import EdgeColoring
from turanlab.counting import count_cliques, count_colored
from turanlab.errors import InvalidPatternError, InvalidStepError
from turanlab.graph import SmallGraph, complete_multipartite, contains_subgraph, multipartite_parts, turan_graph
from turanlab.patterns import Clique, Cycle, Path, pattern_expand
from turanlab.search import SearchProblem, cex_multi, ex_single
from turanlab.symmetrization import (
    PackStructure,
    SymmetrizationState,
    check_packs,
    color_order,
    dstar,
    export_trace,
    is_monochromatic_turan,
    random_colored_host,
    replay_check,
    run_phases,
    run_pipeline,
    symmetrize_classes,
    symmetrize_vertex,
)

K2, K3 = Clique(2), Clique(3)


def state_of(g, patterns, m, color=None, colors=None):
    k = len(patterns)
    cols = colors if colors is not None else (color or 1,) * g.num_edges
    return SymmetrizationState(EdgeColoring(g, tuple(cols), k), patterns, m)


def assert_structure(state, m):
    assert not contains_subgraph(state.coloring.base, SmallGraph.complete(m))
    assert state.objective == count_colored(state.patterns, state.coloring).total


def test_dstar_examples():
    s = state_of(SmallGraph.empty(3), (K3, K2), 4)
    assert dstar(0, s) == 0
    s = state_of(SmallGraph.complete(3), (K3,), 4)
    assert dstar(1, s) == 1
    s = state_of(SmallGraph.complete(4), (K3, K2), 5)
    assert [dstar(v, s) for v in range(4)] == [3] * 4


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2**31))
def test_dstar_sums_to_weighted_objective(n, seed):
    rng = random.Random(seed)
    s = SymmetrizationState(random_colored_host(n, 4, 2, rng), (K3, K2), 4)
    # every colour-i copy of K_r is counted once per vertex
    assert sum(dstar(v, s) for v in range(n)) == 3 * count_cliques(s.coloring.color_class(1), 3) + 2 * s.coloring.color_class(2).num_edges


def test_vertex_step_on_path():
    s = state_of(pattern_expand(Path(3)), (K2,), 3)
    # path 0-1-2: symmetrizing 0 to 2 keeps the star centred at 1
    t = symmetrize_vertex(s, 0, 2)
    assert set(t.coloring.base.edges()) == {(0, 1), (1, 2)}
    assert t.objective == s.objective == 2


def test_vertex_step_copies_neighbourhood():
    g = SmallGraph.from_edges(4, [(0, 1), (2, 3), (1, 2)])
    s = state_of(g, (K2,), 3)
    t = symmetrize_vertex(s, 0, 3)
    assert t.coloring.base.adj[0] == 1 << 2
    assert len(t.trace) == 1 and t.trace[0].kind == "vertex"


def test_twins_unchanged():
    s = state_of(turan_graph(2, 5), (K3, K2), 3, color=2)
    t = symmetrize_vertex(s, 0, 1)
    assert t.coloring == s.coloring and t.objective == s.objective


def test_vertex_step_errors():
    s = state_of(pattern_expand(Path(3)), (K2,), 3)
    with pytest.raises(InvalidStepError):
        symmetrize_vertex(s, 0, 1)
    with pytest.raises(InvalidStepError):
        symmetrize_vertex(s, 0, 0)
    g = SmallGraph.from_edges(4, [(0, 1), (0, 2)])
    s = state_of(g, (K2,), 3)
    with pytest.raises(InvalidStepError):
        symmetrize_vertex(s, 0, 3)


def test_state_rejects_bad_input():
    with pytest.raises(InvalidStepError):
        state_of(SmallGraph.complete(3), (K2,), 3)
    with pytest.raises(InvalidPatternError):
        state_of(pattern_expand(Path(3)), (Path(3),), 3)


def test_random_monotone_vertex_steps():
    rng = random.Random(4)
    steps = 0
    while steps < 500:
        s = SymmetrizationState(random_colored_host(rng.randint(3, 8), 3, 2, rng), (K3, K2), 3)
        for _ in range(10):
            n = s.order
            pairs = [(u, v) for u in range(n) for v in range(n) if u != v and not s.coloring.base.has_edge(u, v)]
            pairs = [(u, v) for u, v in pairs if dstar(u, s) <= dstar(v, s)]
            if not pairs:
                break
            u, v = rng.choice(pairs)
            before = s.objective
            s = symmetrize_vertex(s, u, v)
            assert s.objective >= before
            assert_structure(s, 3)
            steps += 1


def test_phases_on_turan_graph_is_identity():
    s = state_of(turan_graph(2, 6), (K3, K2), 3, color=2)
    t, packs = run_phases(s)
    assert t.coloring == s.coloring
    assert len(packs.small) == 2


def test_phases_on_pentagon():
    s = state_of(pattern_expand(Cycle(5)), (K3, K2), 3, color=2)
    assert s.objective == 5
    t, packs = run_phases(s)
    parts = multipartite_parts(t.coloring.base)
    assert parts is not None and len(parts) == 2
    assert t.coloring.color_class(2).num_edges >= 6 and t.objective >= 6
    assert replay_check(s, t.trace)


def test_phases_on_sampled_six_vertex_hosts():
    rng = random.Random(6)
    for _ in range(100):
        s = SymmetrizationState(random_colored_host(6, 4, 2, rng), (K3, K2), 4)
        t, packs = run_phases(s)
        parts = multipartite_parts(t.coloring.base)
        assert parts is not None and len(parts) <= 3
        assert t.objective >= s.objective
        assert_structure(t, 4)
        assert check_packs(t, packs.small) == packs.colors


def test_two_pack_fixed_point():
    s = state_of(complete_multipartite([3, 2]), (K3, K2), 3, color=2)
    _, packs = run_phases(s)
    out = symmetrize_classes(s, packs)
    assert out.settled and not out.recolored
    assert out.state.coloring == s.coloring


def test_three_packs_in_two_colours():
    g = complete_multipartite([1, 1, 1])
    # 0-1 colour 1, 0-2 colour 2, 1-2 colour 2
    s = state_of(g, (K2, K3), 4, colors=(1, 2, 2))
    t, packs = run_phases(s)
    out = symmetrize_classes(t, packs)
    mat = out.state.matrix()
    q = len(out.packs.small)
    rel = out.packs.colors
    for c in set(out.state.coloring.colors):
        for a in range(q):
            for b in range(q):
                for d in range(q):
                    if len({a, b, d}) == 3 and rel[a][b] == c and rel[b][d] == c and out.blue == c:
                        assert rel[a][d] == c
    assert out.state.objective >= s.objective
    assert mat == out.state.matrix()


def test_class_step_rejects_stale_packs():
    s = state_of(complete_multipartite([2, 2]), (K2,), 3)
    with pytest.raises(InvalidStepError):
        symmetrize_classes(s, PackStructure([[0, 1, 2, 3]], [[0]]))
    with pytest.raises(InvalidStepError):
        symmetrize_classes(s, PackStructure([[0, 1], [2, 3]], [[0, 2], [2, 0]]))


def test_color_order_skips_absent_colours():
    s = state_of(turan_graph(2, 4), (K3, K2, Clique(4)), 3, color=2)
    assert color_order(s) == [2]
    s = state_of(turan_graph(2, 4), (K3, K2), 3, colors=(1, 2, 1, 2))
    assert color_order(s) == [2, 1]


def test_random_pipeline_monotone():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(2, 8)
        s = SymmetrizationState(random_colored_host(n, 4, 2, rng), (K3, K2), 4)
        t, packs, _ = run_pipeline(s)
        assert t.objective >= s.objective
        assert_structure(t, 4)
        assert replay_check(s, t.trace)
        assert all(json.loads(line)["after"] >= json.loads(line)["before"] for line in export_trace(t).splitlines())


@pytest.mark.parametrize("n", range(2, 8))
@pytest.mark.parametrize("pats, m", [((K3, K2), 4), ((K2, K3), 4), ((K2, Clique(2)), 3)])
def test_pipeline_from_optimum_keeps_monochromatic_maximum(n, pats, m):
    res = cex_multi(SearchProblem(n, pats, Clique(m), "colored"))
    start = SymmetrizationState(res.witness(), pats, m)
    end, _, _ = run_pipeline(start)
    target = max(ex_single(n, h, Clique(m)) for h in pats)
    assert end.objective == target


def test_monochromatic_turan_detection():
    assert is_monochromatic_turan(state_of(turan_graph(3, 7), (K3, K2), 4))
    assert not is_monochromatic_turan(state_of(complete_multipartite([3, 1]), (K2,), 3))
