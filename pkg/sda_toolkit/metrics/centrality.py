import logging
from typing import Iterable, Literal

import networkx as nx  # type: ignore
import numpy as np

from sda_toolkit.constants.defaults import (
    EIGENVECTOR_MAX_ITERATIONS,
    EIGENVECTOR_TOLERANCE,
)
from sda_toolkit.graph import Graph, SplitRecord, Vertex, resolve_origins

logger = logging.getLogger(__name__)

Aggregation = Literal["sum", "max"]


class ConvergenceError(RuntimeError):
    pass


def betweenness(g: Graph) -> dict[Vertex, float]:
    """Unnormalized shortest-path betweenness, endpoints excluded and each unordered pair counted once"""
    return nx.betweenness_centrality(g.to_networkx(), normalized=False)


def mean_betweenness(g: Graph) -> float:
    scores = betweenness(g)
    return sum(scores.values()) / len(scores) if scores else 0.0


def degree_centralization(g: Graph) -> float:
    """Freeman degree centralization: 1 for a star, 0 for a regular graph"""
    n = len(g)
    if n < 3:
        raise ValueError(f"Degree centralization needs at least 3 vertices, got {n}")
    degrees = [g.degree(v) for v in g.vertices]
    top = max(degrees)
    return sum(top - d for d in degrees) / ((n - 1) * (n - 2))


def eigenvector_centrality(
    g: Graph, tolerance: float = EIGENVECTOR_TOLERANCE, max_iterations: int = EIGENVECTOR_MAX_ITERATIONS
) -> dict[Vertex, float]:
    """Power iteration on A + I from a uniform start, unit Euclidean norm"""
    if not len(g):
        return {}
    try:
        return nx.eigenvector_centrality(g.to_networkx(), max_iter=max_iterations, tol=tolerance)
    except nx.PowerIterationFailedConvergence as e:
        raise ConvergenceError(f"Power iteration did not converge in {max_iterations} iterations") from e


def aggregate_by_origin(
    scores: dict[Vertex, float], splits: Iterable[SplitRecord], aggregation: Aggregation = "sum"
) -> dict[Vertex, float]:
    """Folds the scores of substitutes onto the vertex they stand for"""
    origins = resolve_origins(list(splits))
    folded: dict[Vertex, float] = {}
    for v, score in scores.items():
        origin = origins.get(v, v)
        if origin not in folded:
            folded[origin] = score
        elif aggregation == "sum":
            folded[origin] += score
        else:
            folded[origin] = max(folded[origin], score)
    return folded


def pearson(first: np.ndarray, second: np.ndarray) -> float:
    """Pearson correlation; two constant vectors correlate fully when equal and not at all otherwise"""
    if np.std(first) == 0 or np.std(second) == 0:
        return 1.0 if np.allclose(first, second) else 0.0
    return float(np.corrcoef(first, second)[0, 1])


def eigenvector_centrality_correlation(
    before: Graph, after: Graph, splits: Iterable[SplitRecord] = (), aggregation: Aggregation = "sum"
) -> float:
    if not len(before) or not len(after):
        raise ValueError("Eigenvector centrality correlation needs two nonempty graphs")
    reference = eigenvector_centrality(before)
    anonymized = aggregate_by_origin(eigenvector_centrality(after), splits, aggregation)
    vertices = before.vertices
    return pearson(
        np.array([reference[v] for v in vertices]),
        np.array([anonymized.get(v, 0.0) for v in vertices]),
    )
