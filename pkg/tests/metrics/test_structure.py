import itertools

import pytest

from sda_toolkit.graph import Graph
from sda_toolkit.metrics import (
    average_shortest_path_length,
    clustering_coefficient,
    connected_components,
    degree_histogram,
    degree_histogram_distance,
    disconnected_pair_fraction,
)
from tests.utils import make_graph, random_community_graph

K4 = list(itertools.combinations(range(4), 2))


@pytest.mark.parametrize(
    "edges, expected",
    [
        pytest.param(K4, 1.0, id="clique"),
        pytest.param([(0, 1), (0, 2), (0, 3), (0, 4)], 0.0, id="star"),
        pytest.param([(0, 1), (1, 2), (0, 2), (2, 3)], (1 + 1 + 1 / 3) / 4, id="triangle-with-tail"),
    ],
)
def test_clustering_coefficient(edges, expected: float):
    assert clustering_coefficient(make_graph(edges)) == pytest.approx(expected)


def test_average_shortest_path_length(path3: Graph, path_star: Graph):
    assert average_shortest_path_length(path3) == pytest.approx(4 / 3)
    # reachable pairs only: 0-1-2 and the star around 3
    assert average_shortest_path_length(path_star) == pytest.approx((8 + 18) / (6 + 12))
    assert average_shortest_path_length(path_star, sample_size=len(path_star)) == average_shortest_path_length(path_star)


def test_sampled_path_length_is_seeded():
    g = random_community_graph(seed=2)
    first = average_shortest_path_length(g, sample_size=5, seed=1)
    assert first == average_shortest_path_length(g, sample_size=5, seed=1)
    assert first > 0
    with pytest.raises(ValueError):
        average_shortest_path_length(g, sample_size=-1)


def test_connected_components(path_star: Graph):
    components = connected_components(path_star)
    assert [components[v] for v in path_star.vertices] == [0, 0, 0, 1, 1, 1, 1]


def test_disconnected_pairs_after_bridge_split(path3: Graph):
    after = path3.copy()
    record = after.split_vertex(1, [1, 1], edge_order=[0, 2])
    assert disconnected_pair_fraction(path3, after, [record]) == pytest.approx(1 / 3)
    assert disconnected_pair_fraction(path3, path3.copy()) == 0.0


def test_disconnected_pairs_with_link(path3: Graph):
    after = path3.copy()
    record = after.split_vertex(1, [2, 2], link_substitutes=True)
    assert disconnected_pair_fraction(path3, after, [record]) == 0.0


def test_degree_histogram(path_star: Graph, diverse: Graph):
    assert degree_histogram(path_star) == {1: 5, 2: 1, 3: 1}
    assert degree_histogram_distance(path_star, path_star) == 0.0
    # 5/7 + 6/7 + 1/7
    assert degree_histogram_distance(path_star, diverse) == pytest.approx(2 * 6 / 7)
