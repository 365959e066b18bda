import logging
from typing import Mapping

import networkx as nx  # type: ignore
from sklearn.metrics import normalized_mutual_info_score  # type: ignore

from sda_toolkit.graph import Graph, Vertex

logger = logging.getLogger(__name__)


def label_propagation(g: Graph, seed: int = 0) -> dict[Vertex, int]:
    """
    Asynchronous label propagation with seeded visiting order and tie breaks. Labels number the
    detected communities by their smallest vertex.
    """
    communities = sorted(nx.algorithms.community.asyn_lpa_communities(g.to_networkx(), seed=seed), key=min)
    logger.debug(f"Label propagation found {len(communities)} communities in {g!r}")
    return {v: label for label, members in enumerate(communities) for v in members}


def label_agreement(first: Mapping[Vertex, int], second: Mapping[Vertex, int]) -> float:
    """Normalized mutual information of two labelings over their common vertices"""
    common = sorted(set(first) & set(second))
    if not common:
        raise ValueError("Labelings share no vertex")
    return float(normalized_mutual_info_score([first[v] for v in common], [second[v] for v in common]))


def community_agreement(g: Graph, reference_labels: Mapping[Vertex, int] | None = None, seed: int = 0) -> float:
    """How well communities detected on g recover the reference labels, by default g's own communities"""
    reference = reference_labels if reference_labels is not None else g.community_map()
    return label_agreement(label_propagation(g, seed), reference)
