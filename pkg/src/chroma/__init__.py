"""chroma: greedy coloring toolkit for large sparse networks."""

from .bounds import BoundReport, CliqueResult, bound_report, heuristic_clique
from .coloring import (
    Coloring,
    ColoringStats,
    Validation,
    coloring_stats,
    greedy_color,
    greedy_recolor,
    validate_coloring,
)
from .decompose import (
    CoreDecomposition,
    TrussDecomposition,
    edge_triangles,
    kcore_decompose,
    triangle_core_decompose,
    vertex_triangles,
)
from .graph import Graph, GraphInputError, GraphStats, compute_stats, load_edge_list
from .neighborhood import (
    NeighborhoodFeatures,
    NeighborhoodResult,
    neighborhood_color_all,
    neighborhood_feature_export,
)
from .ordering import (
    CATALOG,
    EdgeOrdering,
    Ordering,
    ScoreContext,
    compute_ordering,
    dynamic_triangle_ordering,
    edge_order_to_vertex_order,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphInputError",
    "GraphStats",
    "load_edge_list",
    "compute_stats",
    "vertex_triangles",
    "edge_triangles",
    "kcore_decompose",
    "triangle_core_decompose",
    "CoreDecomposition",
    "TrussDecomposition",
    "Ordering",
    "EdgeOrdering",
    "ScoreContext",
    "CATALOG",
    "compute_ordering",
    "dynamic_triangle_ordering",
    "edge_order_to_vertex_order",
    "Coloring",
    "ColoringStats",
    "Validation",
    "greedy_color",
    "greedy_recolor",
    "validate_coloring",
    "coloring_stats",
    "CliqueResult",
    "heuristic_clique",
    "BoundReport",
    "bound_report",
    "NeighborhoodResult",
    "NeighborhoodFeatures",
    "neighborhood_color_all",
    "neighborhood_feature_export",
    "__version__",
]
