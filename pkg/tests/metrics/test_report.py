import pytest

from sda_toolkit.anonymizers import AnonymizerConfig, create_by_split
from sda_toolkit.graph import Graph
from sda_toolkit.metrics import compute_metrics
from tests.utils import make_graph


def test_metrics_without_reference(path_star: Graph):
    report = compute_metrics(path_star)
    assert report.cc == 0.0
    assert report.degree_hist == {1: 5, 2: 1, 3: 1}
    assert report.ec_corr is None
    assert report.community_agreement is None
    assert report.aggregation == {"bc": "mean", "dc": "freeman", "ec_corr": "sum"}


def test_metrics_against_reference(path_star: Graph):
    result = create_by_split(path_star, AnonymizerConfig(k=2))
    report = compute_metrics(result.graph, path_star, result.splits, communities=True, aggregation="max")
    assert report.ec_corr is not None
    # the leaf left with the degree-1 substitute loses the other two leaves
    assert report.disconnected_pair_fraction == pytest.approx(2 / 9)
    assert report.degree_hist_distance is not None and report.degree_hist_distance > 0
    assert report.community_agreement is not None
    assert report.aggregation["ec_corr"] == "max"


def test_tiny_graph_skips_centralization():
    report = compute_metrics(make_graph([(0, 1)]))
    assert report.dc is None
    assert report.aspl == 1.0


def test_report_dict(path_star: Graph):
    data = compute_metrics(path_star).to_dict()
    assert data["degree_hist"][0] == {"degree": 1, "count": 5}
    assert set(data) >= {"cc", "aspl", "bc", "dc", "ec_corr", "disconnected_pair_fraction"}
