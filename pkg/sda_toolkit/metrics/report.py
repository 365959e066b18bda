import logging
from dataclasses import asdict, dataclass, field
from typing import Iterable

from sda_toolkit.graph import Graph, SplitRecord
from sda_toolkit.metrics.centrality import (
    Aggregation,
    degree_centralization,
    eigenvector_centrality_correlation,
    mean_betweenness,
)
from sda_toolkit.metrics.community import community_agreement
from sda_toolkit.metrics.structure import (
    average_shortest_path_length,
    clustering_coefficient,
    degree_histogram,
    degree_histogram_distance,
    disconnected_pair_fraction,
)

logger = logging.getLogger(__name__)


@dataclass
class MetricsReport:
    cc: float
    aspl: float
    bc: float
    dc: float | None
    degree_hist: dict[int, int]
    # the following need a reference graph
    ec_corr: float | None = None
    disconnected_pair_fraction: float | None = None
    degree_hist_distance: float | None = None
    community_agreement: float | None = None
    aggregation: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["degree_hist"] = [{"degree": d, "count": n} for d, n in self.degree_hist.items()]
        return data


def compute_metrics(
    g: Graph,
    reference: Graph | None = None,
    splits: Iterable[SplitRecord] = (),
    sample_size: int = 0,
    seed: int = 0,
    communities: bool = False,
    aggregation: Aggregation = "sum",
) -> MetricsReport:
    """Utility measurements of g, plus comparisons against `reference` (the graph g was derived from)"""
    splits = list(splits)
    try:
        dc: float | None = degree_centralization(g)
    except ValueError:
        logger.warning(f"Skipping degree centralization on a {len(g)}-vertex graph")
        dc = None
    report = MetricsReport(
        cc=clustering_coefficient(g),
        aspl=average_shortest_path_length(g, sample_size, seed),
        bc=mean_betweenness(g),
        dc=dc,
        degree_hist=degree_histogram(g),
        aggregation={"bc": "mean", "dc": "freeman", "ec_corr": aggregation},
    )
    if reference is not None:
        report.ec_corr = eigenvector_centrality_correlation(reference, g, splits, aggregation)
        report.disconnected_pair_fraction = disconnected_pair_fraction(reference, g, splits)
        report.degree_hist_distance = degree_histogram_distance(reference, g)
    if communities:
        report.community_agreement = community_agreement(g, seed=seed)
    logger.info(f"Metrics of a {len(g)}-vertex graph: cc={report.cc:.4f} aspl={report.aspl:.4f}")
    return report
