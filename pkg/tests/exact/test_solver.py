import random

import pyomo.environ as pyo  # type: ignore
import pytest

from sda_toolkit.anonymizers import AnonymizerConfig, edge_connect
from sda_toolkit.exact import (
    EnumerationBudgetExceeded,
    IpModel,
    NodeLimitExceeded,
    brute_force_add_edge_optimum,
    build_add_edge_model,
    build_full_model,
    candidate_pairs,
    solve_binary_program,
)
from sda_toolkit.graph import Graph, is_k_structurally_diverse
from tests.utils import make_graph, random_tiny_graph


@pytest.fixture
def triangle_and_path() -> Graph:
    return make_graph([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)], [0, 0, 0, 1, 1, 1])


@pytest.fixture
def triangle_and_edge() -> Graph:
    return make_graph([(0, 1), (1, 2), (0, 2), (3, 4)], [0, 0, 0, 1, 1])


@pytest.fixture
def two_edges() -> Graph:
    return make_graph([(0, 1), (2, 3)], [0, 0, 1, 1])


def test_solver_on_hand_made_program():
    m = pyo.ConcreteModel(name="knapsack")
    m.x = pyo.Var(domain=pyo.Binary)
    m.y = pyo.Var(domain=pyo.Binary)
    m.z = pyo.Var(domain=pyo.Binary)
    m.cost = pyo.Objective(expr=-3 * m.x - 2 * m.y - 2 * m.z, sense=pyo.minimize)
    m.cap = pyo.Constraint(expr=2 * m.x + m.y + m.z <= 2)
    model = IpModel(m)
    solution = solve_binary_program(model)
    assert solution.feasible
    assert solution.objective == -4
    assert solution.assignment == {"x": 0, "y": 1, "z": 1}
    assert model.violated(solution.assignment) == []


def test_solver_reports_infeasibility():
    m = pyo.ConcreteModel(name="contradiction")
    m.x = pyo.Var(domain=pyo.Binary)
    m.cost = pyo.Objective(expr=m.x, sense=pyo.minimize)
    m.low = pyo.Constraint(expr=m.x >= 1)
    m.high = pyo.Constraint(expr=m.x <= 0)
    solution = solve_binary_program(IpModel(m))
    assert not solution.feasible
    assert solution.objective is None


def test_solver_node_limit(triangle_and_path: Graph):
    with pytest.raises(NodeLimitExceeded):
        solve_binary_program(build_add_edge_model(triangle_and_path, 2), node_limit=1)


@pytest.mark.parametrize(
    "fixture, optimum",
    [
        pytest.param("triangle_and_path", 1, id="one-edge"),
        pytest.param("triangle_and_edge", None, id="infeasible"),
        pytest.param("two_edges", 0, id="already-diverse"),
    ],
)
def test_add_edge_optimum(request, fixture: str, optimum: int | None):
    g = request.getfixturevalue(fixture)
    solution = solve_binary_program(build_add_edge_model(g, 2))
    assert solution.objective == optimum
    oracle = brute_force_add_edge_optimum(g, 2, edge_budget=len(candidate_pairs(g)))
    assert oracle.cost == optimum


@pytest.mark.parametrize(
    "fixture, optimum",
    [
        pytest.param("triangle_and_path", 1, id="one-edge"),
        pytest.param("triangle_and_edge", None, id="infeasible"),
    ],
)
def test_full_model_without_splitting_matches_add_edge(request, fixture: str, optimum: int | None):
    g = request.getfixturevalue(fixture)
    solution = solve_binary_program(build_full_model(g, 2, budget=lambda v: 1))
    assert solution.objective == optimum


def test_path_star_add_edge_model_is_infeasible(path_star: Graph):
    assert not solve_binary_program(build_add_edge_model(path_star, 2)).feasible


def test_oracle_witness(triangle_and_path: Graph):
    result = brute_force_add_edge_optimum(triangle_and_path, 2, edge_budget=1)
    assert result.feasible
    assert result.witness == ((3, 5),)
    assert result.subsets_checked == 2
    assert result.to_dict()["witness"] == [[3, 5]]


def test_oracle_exhausts_budget(path_star: Graph):
    result = brute_force_add_edge_optimum(path_star, 2, edge_budget=3)
    assert not result.feasible
    assert result.subsets_checked == 15


def test_oracle_limits(triangle_and_path: Graph):
    with pytest.raises(EnumerationBudgetExceeded):
        brute_force_add_edge_optimum(triangle_and_path, 2, edge_budget=1, subset_limit=1)
    with pytest.raises(ValueError):
        brute_force_add_edge_optimum(triangle_and_path, 2, edge_budget=-1)


@pytest.mark.parametrize("seed", range(12))
def test_oracle_bounds_edge_connect(seed: int):
    g = random_tiny_graph(random.Random(seed))
    oracle = brute_force_add_edge_optimum(g, 2, edge_budget=len(candidate_pairs(g)))
    heuristic = edge_connect(g, AnonymizerConfig(k=2))
    if heuristic.success:
        assert oracle.feasible
        assert oracle.cost <= heuristic.n_a
    if not oracle.feasible:
        assert not heuristic.success
    if oracle.feasible:
        witness = g.copy()
        for u, v in oracle.witness:
            witness.add_edge(u, v)
        assert is_k_structurally_diverse(witness, 2)


@pytest.mark.parametrize("seed", range(3))
def test_solver_agrees_with_oracle(seed: int):
    g = random_tiny_graph(random.Random(100 + seed))
    oracle = brute_force_add_edge_optimum(g, 2, edge_budget=len(candidate_pairs(g)))
    solution = solve_binary_program(build_add_edge_model(g, 2))
    assert solution.objective == oracle.cost
    if solution.feasible:
        assert build_add_edge_model(g, 2).violated(solution.assignment) == []


def test_edge_connect_often_matches_the_optimum():
    matches = feasible = 0
    for seed in range(50):
        g = random_tiny_graph(random.Random(1000 + seed))
        oracle = brute_force_add_edge_optimum(g, 2, edge_budget=len(candidate_pairs(g)))
        if not oracle.feasible:
            continue
        feasible += 1
        heuristic = edge_connect(g, AnonymizerConfig(k=2))
        if heuristic.success and heuristic.n_a == oracle.cost:
            matches += 1
    assert feasible > 0
    assert matches >= 0.6 * feasible
