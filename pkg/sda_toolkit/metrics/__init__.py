from sda_toolkit.metrics.centrality import (
    ConvergenceError,
    aggregate_by_origin,
    betweenness,
    degree_centralization,
    eigenvector_centrality,
    eigenvector_centrality_correlation,
    mean_betweenness,
    pearson,
)
from sda_toolkit.metrics.community import (
    community_agreement,
    label_agreement,
    label_propagation,
)
from sda_toolkit.metrics.report import MetricsReport, compute_metrics
from sda_toolkit.metrics.structure import (
    average_shortest_path_length,
    clustering_coefficient,
    connected_components,
    degree_histogram,
    degree_histogram_distance,
    disconnected_pair_fraction,
)

__all__ = [
    "ConvergenceError",
    "MetricsReport",
    "aggregate_by_origin",
    "average_shortest_path_length",
    "betweenness",
    "clustering_coefficient",
    "community_agreement",
    "compute_metrics",
    "connected_components",
    "degree_centralization",
    "degree_histogram",
    "degree_histogram_distance",
    "disconnected_pair_fraction",
    "eigenvector_centrality",
    "eigenvector_centrality_correlation",
    "label_agreement",
    "label_propagation",
    "mean_betweenness",
    "pearson",
]
