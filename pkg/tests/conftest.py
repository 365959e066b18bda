import pytest

from sda_toolkit.graph import Graph
from tests.utils import make_graph, path_star_graph, two_triangles


@pytest.fixture
def path_star() -> Graph:
    return path_star_graph()


@pytest.fixture
def diverse() -> Graph:
    return two_triangles()


@pytest.fixture
def path3() -> Graph:
    return make_graph([(0, 1), (1, 2)])


@pytest.fixture
def star5() -> Graph:
    return make_graph([(0, 1), (0, 2), (0, 3), (0, 4)])
