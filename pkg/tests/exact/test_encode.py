import pytest

from sda_toolkit.anonymizers import AnonymizerConfig, create_by_split, edge_connect, merge_by_split
from sda_toolkit.exact import default_substitute_budget, encode_result, identities, result_budget
from sda_toolkit.graph import Graph
from tests.utils import make_graph


def test_identities(path_star: Graph):
    result = create_by_split(path_star, AnonymizerConfig(k=2))
    images = identities(result)
    assert images[3] == [7, 8]
    assert images[0] == [0]
    budget = result_budget(path_star, result)
    assert (budget(3), budget(0)) == (2, 1)


@pytest.mark.parametrize(
    "run, cost",
    [
        pytest.param(create_by_split, 49, id="cbs"),
        pytest.param(merge_by_split, 3 * 49, id="mbs"),
    ],
)
def test_heuristic_result_is_a_feasible_model_point(path_star: Graph, run, cost: int):
    result = run(path_star, AnonymizerConfig(k=2))
    assert result.cost == cost
    model, assignment = encode_result(path_star, result)
    assert model.violated(assignment) == []
    assert model.evaluate(assignment) == cost


def test_unused_substitutes_are_inactive(path_star: Graph):
    result = create_by_split(path_star, AnonymizerConfig(k=2))
    model, assignment = encode_result(path_star, result, default_substitute_budget(path_star))
    assert model.violated(assignment) == []
    assert assignment["pi[3,2]"] == 0
    assert assignment["delta[3,2,0]"] == 1
    assert model.evaluate(assignment) == result.cost


def test_added_edges_are_counted():
    g = make_graph([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)], [0, 0, 0, 1, 1, 1])
    result = edge_connect(g, AnonymizerConfig(k=2, omega=4))
    model, assignment = encode_result(g, result)
    assert assignment["alpha[3,5,0,0]"] == 1
    assert model.evaluate(assignment) == result.cost == 1


def test_budget_too_small(path_star: Graph):
    result = merge_by_split(path_star, AnonymizerConfig(k=2))
    with pytest.raises(ValueError):
        encode_result(path_star, result, lambda v: 1)
