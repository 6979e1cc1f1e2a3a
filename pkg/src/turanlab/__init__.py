"""Exact small-scale workbench for generalized Turán problems with several counted graphs."""

from .constructions import ConstructionSpec, EdgeColoring, build, evaluate, is_free
from .counting import CountVector, count_colored, count_copies, count_pattern, reduced_zagreb
from .graph import (
    SmallGraph,
    automorphism_count,
    canonical_code,
    chromatic_number,
    contains_subgraph,
    emit_graph6,
    parse_graph6,
)
from .patterns import PatternSpec, parse_pattern, parse_pattern_list, pattern_expand
from .search import (
    SearchProblem,
    SearchResult,
    best_coloring,
    bipartite_scan,
    cex_multi,
    enumerate_free_graphs,
    ex_multi,
    sandwich_check,
)

ENGINE_VERSION = "1"

__all__ = [
    "ConstructionSpec",
    "CountVector",
    "EdgeColoring",
    "PatternSpec",
    "SearchProblem",
    "SearchResult",
    "SmallGraph",
    "automorphism_count",
    "best_coloring",
    "bipartite_scan",
    "build",
    "canonical_code",
    "cex_multi",
    "chromatic_number",
    "contains_subgraph",
    "count_colored",
    "count_copies",
    "count_pattern",
    "emit_graph6",
    "enumerate_free_graphs",
    "evaluate",
    "ex_multi",
    "is_free",
    "parse_graph6",
    "parse_pattern",
    "parse_pattern_list",
    "pattern_expand",
    "reduced_zagreb",
    "sandwich_check",
]
