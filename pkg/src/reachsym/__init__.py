"""Reachability-based symmetrization of directed graphs."""

from .accumulator import SimilarityAccumulator
from .closure import INF, LocalClosure, bfs_bounded, local_closure
from .graph import (DirectedGraph, ParseError, UndirectedWeightedGraph,
                    ValidationError, condensation, graph_from_pairs,
                    load_edge_list, read_undirected, write_undirected)
from .hierarchy import (HierarchyScores, auto_hierarchy, distance_discount,
                        load_hierarchy, pair_hierarchy_discount)
from .oracle import dense_closure, dense_similarity
from .similarity import (SymmetrizationConfig, bibliometric, degree_discounted,
                         in_reach_similarity, out_reach_similarity,
                         sparsify_top_t, symmetrize)

__all__ = [
    "INF",
    "DirectedGraph",
    "HierarchyScores",
    "LocalClosure",
    "ParseError",
    "SimilarityAccumulator",
    "SymmetrizationConfig",
    "UndirectedWeightedGraph",
    "ValidationError",
    "auto_hierarchy",
    "bfs_bounded",
    "bibliometric",
    "condensation",
    "degree_discounted",
    "dense_closure",
    "dense_similarity",
    "distance_discount",
    "graph_from_pairs",
    "in_reach_similarity",
    "load_edge_list",
    "load_hierarchy",
    "local_closure",
    "out_reach_similarity",
    "pair_hierarchy_discount",
    "read_undirected",
    "sparsify_top_t",
    "symmetrize",
    "write_undirected",
]
