"""Exact betweenness centrality by four cross-checking methods."""

from .algebraic import (
    ApspResult,
    DependencyResult,
    algebraic_bc,
    bc_from_dependencies,
    compute_dependency,
    compute_path_count,
    weighted_backward,
    weighted_forward,
)
from .brandes import accumulate_dependencies, brandes_bc, sssp_with_counts
from .graph import Graph, from_edge_list, is_connected, max_degree, to_edge_list
from .oracle import enumerate_shortest_paths, oracle_bc, oracle_pair_dependency
from .parallel import (
    SampleConfig,
    pairwise_bc,
    parallel_dijkstra_apsp,
    parallel_pairwise_bc,
    parallel_wavefront_bc,
    sampled_apsp,
    wavefront_dependencies,
)

__all__ = [
    "ApspResult", "DependencyResult", "Graph", "SampleConfig",
    "accumulate_dependencies", "algebraic_bc", "bc_from_dependencies", "brandes_bc",
    "compute_dependency", "compute_path_count", "enumerate_shortest_paths", "from_edge_list",
    "is_connected", "max_degree", "oracle_bc", "oracle_pair_dependency", "pairwise_bc",
    "parallel_dijkstra_apsp", "parallel_pairwise_bc", "parallel_wavefront_bc", "sampled_apsp",
    "sssp_with_counts", "to_edge_list", "wavefront_dependencies", "weighted_backward",
    "weighted_forward",
]
