import random
from typing import Sequence

import networkx as nx  # type: ignore
import pytest

from sda_toolkit.anonymizers import (
    Algorithm,
    AnonymizerConfig,
    anonymize,
    flex_split,
    merge_by_split,
    splitting_only,
)
from sda_toolkit.anonymizers.splitting import connected_edge_order, spanning_count
from sda_toolkit.graph import Graph, is_k_structurally_diverse
from sda_toolkit.metrics import disconnected_pair_fraction
from tests.utils import random_community_graph


def spans_blocks(order: list[int], blocks: list[list[int]], raw_sizes: Sequence[int]) -> bool:
    """Substitutes holding consecutive chunks of `order` connect every block"""
    bipartite = nx.Graph()
    bipartite.add_nodes_from(("block", j) for j in range(len(blocks)))
    cursor = 0
    for i, raw in enumerate(raw_sizes):
        for x in order[cursor : cursor + raw]:
            for j, block in enumerate(blocks):
                if x in block:
                    bipartite.add_edge(("substitute", i), ("block", j))
        cursor += raw
    touching = [n for n in bipartite if n[0] == "block" or bipartite.degree(n) > 0]
    return nx.is_connected(bipartite.subgraph(touching))


@pytest.mark.parametrize(
    "blocks, raw_sizes, expected",
    [
        pytest.param([2, 1], [1, 2], 1, id="one-substitute-reaches-all"),
        pytest.param([2, 2, 1], [2, 2], 2, id="two-substitutes-chained"),
        pytest.param([1, 1, 1], [2, 1], None, id="bridges-only"),
        pytest.param([], [1, 1], 0, id="no-blocks"),
    ],
)
def test_spanning_count(blocks, raw_sizes, expected):
    assert spanning_count(blocks, raw_sizes) == expected


@pytest.mark.parametrize(
    "blocks, raw_sizes",
    [
        pytest.param([[1, 2, 3], [4]], [1, 3], id="big-substitute-takes-both"),
        pytest.param([[1, 2], [3, 4], [5]], [2, 2], id="chain-through-shared-block"),
        pytest.param([[1, 2], [3, 4], [5, 6]], [2, 2, 2], id="three-substitutes"),
    ],
)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_connected_edge_order_spans_blocks(blocks, raw_sizes, seed):
    order = connected_edge_order(blocks, [], raw_sizes, random.Random(seed))
    assert order is not None
    assert sorted(order) == sorted(x for block in blocks for x in block)
    assert spans_blocks(order, blocks, raw_sizes)


def test_loose_neighbor_goes_to_the_small_substitute():
    order = connected_edge_order([[1], [2]], [9], [1, 2], random.Random(0))
    assert order is not None
    assert order[0] == 9
    assert sorted(order[1:]) == [1, 2]


def test_bridges_only_vertex_has_no_connected_order():
    assert connected_edge_order([[1], [2], [3]], [], [2, 1], random.Random(0)) is None


def test_single_splits_into_degree_one_cohorts(path_star: Graph):
    result = merge_by_split(path_star, AnonymizerConfig(k=2))
    assert result.success
    assert (result.n_a, result.n_s) == (0, 3)
    assert [(s.original, s.size) for s in result.splits] == [(1, 2), (3, 3)]
    assert {result.graph.degree(v) for v in result.graph.vertices} == {1}


@pytest.mark.parametrize("run", [flex_split, splitting_only])
def test_flex_split_cuts_bridges_with_linked_substitutes(path_star: Graph, run):
    # the path middle can't be halved without cutting the path, so the star center is linked down to 2
    result = run(path_star, AnonymizerConfig(k=2))
    assert result.success
    assert (result.n_a, result.n_s) == (0, 2)
    assert [(s.original, s.size) for s in result.splits] == [(3, 2), (8, 2)]
    assert "SPLIT 3 -> 7:2 8:3 linked" in [str(op) for op in result.operations]
    assert {result.graph.degree(v) for v in result.graph.vertices} == {1, 2}


@pytest.mark.parametrize("algorithm", [Algorithm.MBS, Algorithm.FS, Algorithm.SONLY])
def test_diverse_input_needs_no_work(diverse: Graph, algorithm: Algorithm):
    result = anonymize(diverse, AnonymizerConfig(k=2, algorithm=algorithm))
    assert result.success
    assert result.graph == diverse
    assert result.operations == []


def test_splitting_only_never_adds_edges():
    g = random_community_graph(seed=3)
    result = splitting_only(g, AnonymizerConfig(k=3))
    assert result.success
    assert result.n_a == 0
    assert is_k_structurally_diverse(result.graph, 3)


@pytest.mark.parametrize("seed", range(50))
def test_flex_split_keeps_connected_pairs_connected(seed: int):
    g = random_community_graph(seed, n=50 + 2 * seed, m=2 * (50 + 2 * seed), communities=4 + seed % 3)
    k = 2 + seed % 3
    result = flex_split(g, AnonymizerConfig(k=k, seed=seed))
    assert result.success
    assert is_k_structurally_diverse(result.graph, k)
    assert disconnected_pair_fraction(g, result.graph, result.splits) == 0
