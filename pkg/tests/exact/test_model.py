from pathlib import Path

import pyomo.environ as pyo  # type: ignore
import pytest

from sda_toolkit.exact import (
    IpModel,
    LinearRow,
    build_add_edge_model,
    build_full_model,
    candidate_pairs,
    export_lp,
    write_lp,
)
from sda_toolkit.graph import Graph
from tests.utils import make_graph


@pytest.fixture
def triangle_and_path() -> Graph:
    return make_graph([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)], [0, 0, 0, 1, 1, 1])


def test_candidate_pairs(path_star: Graph):
    assert candidate_pairs(path_star) == [(0, 2), (4, 5), (4, 6), (5, 6)]


def test_add_edge_model_counts(triangle_and_path: Graph):
    model = build_add_edge_model(triangle_and_path, 2)
    assert len(model.variables) == 17
    assert model.family_counts() == {"c1": 6, "c2": 4, "c3": 6, "c4": 8, "c5": 4, "c6": 4}
    assert model.objective == [(1, "alpha[3,5]")]
    assert model.objective_offset == 0


def test_add_edge_rows(triangle_and_path: Graph):
    rows = {row.label: row for row in build_add_edge_model(triangle_and_path, 2).rows()}
    count = rows["c3[3]"]
    assert count.relation == "="
    assert count.rhs == -1
    assert dict((var, coef) for coef, var in count.terms) == {"alpha[3,5]": 1, "delta[3,1]": -1, "delta[3,2]": -2}
    diversity = rows["c6[0,2]"]
    assert diversity.relation == "<="
    assert diversity.rhs == 0
    assert sorted(diversity.terms) == [(-1, "theta[1,2]"), (1, "theta[0,2]")]


def test_diversity_rows_vanish_for_k1(triangle_and_path: Graph):
    assert "c6" not in build_add_edge_model(triangle_and_path, 1).family_counts()


def test_full_model_offset_and_labels(path_star: Graph):
    model = build_full_model(path_star, 2, omega=10, budget=lambda v: 1)
    assert model.objective_offset == -10 * 7 - 5
    families = set(model.family_counts())
    assert {"c7", "c8", "c9", "c10", "c11", "c12", "c13", "c15"} <= families
    # one substitute per vertex leaves nothing to link
    assert "c16" not in families
    assert model.family_counts()["c12"] == 5
    assert "delta[3,0,0]" in model.variables


def test_full_model_links_substitutes(path_star: Graph):
    model = build_full_model(path_star, 2, budget=lambda v: 2 if v == 3 else 1)
    assert "beta[3,0,1]" in model.variables
    assert model.family_counts()["c16"] == 2


def test_full_model_rejects_bad_budget(path_star: Graph):
    with pytest.raises(ValueError):
        build_full_model(path_star, 2, budget=lambda v: 2)


@pytest.mark.parametrize(
    "build",
    [
        pytest.param(lambda g: build_add_edge_model(g, 2), id="add-edge"),
        pytest.param(lambda g: build_full_model(g, 2, budget=lambda v: min(g.degree(v), 2)), id="full"),
    ],
)
def test_lp_export(path_star: Graph, build):
    text = export_lp(build(path_star))
    assert "s.t." in text
    assert "binary" in text
    assert text.rstrip().endswith("end")


def test_write_lp(tmp_path: Path, path3: Graph):
    model = build_add_edge_model(path3, 1)
    path = write_lp(model, tmp_path / "path.lp")
    assert path.read_text() == export_lp(model)


def test_model_reads_pyomo_rows():
    m = pyo.ConcreteModel(name="ranged")
    m.x = pyo.Var(domain=pyo.Binary)
    m.y = pyo.Var(domain=pyo.Binary)
    m.cost = pyo.Objective(expr=m.x + 2 * m.y + 3, sense=pyo.minimize)
    m.cap = pyo.Constraint(expr=m.x + m.y + 1 >= 2)
    model = IpModel(m)
    assert model.rows() == [LinearRow("cap", ((1, "x"), (1, "y")), ">=", 1)]
    assert model.evaluate({"x": 1, "y": 0}) == 4
    assert model.violated({"x": 0, "y": 0}) == model.rows()

    m.band = pyo.Constraint(expr=pyo.inequality(0, m.x, 1))
    with pytest.raises(ValueError):
        model.rows()


def test_model_needs_a_minimization():
    m = pyo.ConcreteModel(name="max")
    m.x = pyo.Var(domain=pyo.Binary)
    m.gain = pyo.Objective(expr=m.x, sense=pyo.maximize)
    with pytest.raises(ValueError):
        IpModel(m).objective
