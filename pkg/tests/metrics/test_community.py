import itertools

import pytest

from sda_toolkit.graph import Graph
from sda_toolkit.metrics import community_agreement, label_agreement, label_propagation
from tests.utils import make_graph


@pytest.fixture
def two_cliques() -> Graph:
    edges = list(itertools.combinations(range(4), 2)) + list(itertools.combinations(range(4, 8), 2))
    return make_graph(edges, [0] * 4 + [1] * 4)


def test_label_propagation_finds_cliques(two_cliques: Graph):
    labels = label_propagation(two_cliques, seed=3)
    assert len({labels[v] for v in range(4)}) == 1
    assert len({labels[v] for v in range(4, 8)}) == 1
    assert labels[0] != labels[4]


def test_label_propagation_is_seeded(two_cliques: Graph):
    assert label_propagation(two_cliques, seed=1) == label_propagation(two_cliques, seed=1)


def test_label_agreement():
    assert label_agreement({0: 0, 1: 0, 2: 1}, {0: 5, 1: 5, 2: 7}) == pytest.approx(1.0)
    assert label_agreement({0: 0, 1: 1}, {0: 0, 1: 0, 9: 1}) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        label_agreement({0: 0}, {1: 0})


def test_community_agreement(two_cliques: Graph):
    assert community_agreement(two_cliques) == pytest.approx(1.0)
    assert community_agreement(two_cliques, {v: v % 2 for v in range(8)}) < 0.5
