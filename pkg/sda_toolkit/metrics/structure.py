import logging
import random
from collections import Counter
from typing import Iterable

import networkx as nx  # type: ignore

from sda_toolkit.graph import Graph, SplitRecord, Vertex, resolve_origins

logger = logging.getLogger(__name__)


def clustering_coefficient(g: Graph) -> float:
    """Average local clustering coefficient, vertices of degree < 2 counting as 0"""
    if not len(g):
        return 0.0
    return nx.average_clustering(g.to_networkx())


def average_shortest_path_length(g: Graph, sample_size: int = 0, seed: int = 0) -> float:
    """
    Mean distance over ordered pairs of distinct, mutually reachable vertices. With `sample_size`
    between 1 and |V| - 1 only that many seeded random sources are expanded.
    """
    if sample_size < 0:
        raise ValueError(f"Sample size must be non-negative, got {sample_size}")
    nxg = g.to_networkx()
    sources = g.vertices
    if 0 < sample_size < len(g):
        sources = random.Random(seed).sample(g.vertices, sample_size)
    total = 0
    pairs = 0
    for s in sources:
        distances = nx.single_source_shortest_path_length(nxg, s)
        total += sum(distances.values())
        pairs += len(distances) - 1
    return total / pairs if pairs else 0.0


def connected_components(g: Graph | nx.Graph) -> dict[Vertex, int]:
    """Component index of every vertex, components numbered by their smallest vertex"""
    nxg = g.to_networkx() if isinstance(g, Graph) else g
    components = sorted(nx.connected_components(nxg), key=min)
    return {v: index for index, members in enumerate(components) for v in members}


def _pairs(n: int) -> int:
    return n * (n - 1) // 2


def disconnected_pair_fraction(before: Graph, after: Graph, splits: Iterable[SplitRecord] = ()) -> float:
    """
    Share of vertex pairs connected in `before` whose images are no longer connected in `after`.
    A split vertex reaches x when any of its substitutes does.
    """
    origins = resolve_origins(list(splits))
    after_components = connected_components(after)
    images: dict[Vertex, set[int]] = {v: set() for v in before.vertices}
    for v in after.vertices:
        images[origins.get(v, v)].add(after_components[v])

    by_component: dict[int, list[Vertex]] = {}
    for v, index in connected_components(before).items():
        by_component.setdefault(index, []).append(v)

    connected_before = 0
    still_connected = 0
    for members in by_component.values():
        connected_before += _pairs(len(members))
        single = Counter(next(iter(images[v])) for v in members if len(images[v]) == 1)
        multi = [v for v in members if len(images[v]) > 1]
        still_connected += sum(_pairs(n) for n in single.values())
        for i, x in enumerate(multi):
            still_connected += sum(single[c] for c in images[x])
            still_connected += sum(1 for y in multi[i + 1 :] if images[x] & images[y])
    if not connected_before:
        return 0.0
    fraction = 1 - still_connected / connected_before
    logger.debug(f"{connected_before - still_connected} of {connected_before} connected pairs lost")
    return fraction


def degree_histogram(g: Graph) -> dict[int, int]:
    return dict(sorted(Counter(g.degree(v) for v in g.vertices).items()))


def degree_histogram_distance(before: Graph, after: Graph) -> float:
    """L1 distance between the normalized degree distributions, within [0, 2]"""
    first = degree_histogram(before)
    second = degree_histogram(after)
    n_first = len(before) or 1
    n_second = len(after) or 1
    return sum(abs(first.get(d, 0) / n_first - second.get(d, 0) / n_second) for d in set(first) | set(second))
