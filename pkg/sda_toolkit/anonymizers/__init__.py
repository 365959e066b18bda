import dataclasses

from sda_toolkit.anonymizers.base import Anonymizer
from sda_toolkit.anonymizers.costs import (
    INFEASIBLE,
    base_mergence_cost,
    diversity,
    group_split_size,
    linked_split_parts,
    mergence_cost,
    single_split_parts,
    single_split_size,
)
from sda_toolkit.anonymizers.edge_connect import (
    CreateBySplit,
    EdgeConnect,
    InverseEdgeConnect,
)
from sda_toolkit.anonymizers.groups import GroupIndex
from sda_toolkit.anonymizers.splitting import FlexSplit, MergeBySplit, SplittingOnly
from sda_toolkit.anonymizers.state import (
    AnonymizationState,
    EdgePlan,
    RedirectableSet,
    RedirectError,
)
from sda_toolkit.anonymizers.types import (
    Algorithm,
    AnonymizationResult,
    AnonymizerConfig,
    count_added_edges,
    count_split_vertices,
    format_run_log,
)
from sda_toolkit.graph import Graph

ANONYMIZERS: dict[Algorithm, type[Anonymizer]] = {
    Algorithm.EC: EdgeConnect,
    Algorithm.CBS: CreateBySplit,
    Algorithm.MBS: MergeBySplit,
    Algorithm.FS: FlexSplit,
    Algorithm.IEC: InverseEdgeConnect,
    Algorithm.SONLY: SplittingOnly,
}


def anonymize(g: Graph, cfg: AnonymizerConfig) -> AnonymizationResult:
    """Runs the configured heuristic on a copy of g"""
    return ANONYMIZERS[cfg.algorithm](g, cfg).run()


def _with_algorithm(cfg: AnonymizerConfig, algorithm: Algorithm) -> AnonymizerConfig:
    return cfg if cfg.algorithm is algorithm else dataclasses.replace(cfg, algorithm=algorithm)


def edge_connect(g: Graph, cfg: AnonymizerConfig) -> AnonymizationResult:
    return anonymize(g, _with_algorithm(cfg, Algorithm.EC))


def inverse_edge_connect(g: Graph, cfg: AnonymizerConfig) -> AnonymizationResult:
    return anonymize(g, _with_algorithm(cfg, Algorithm.IEC))


def create_by_split(g: Graph, cfg: AnonymizerConfig) -> AnonymizationResult:
    return anonymize(g, _with_algorithm(cfg, Algorithm.CBS))


def merge_by_split(g: Graph, cfg: AnonymizerConfig) -> AnonymizationResult:
    return anonymize(g, _with_algorithm(cfg, Algorithm.MBS))


def flex_split(g: Graph, cfg: AnonymizerConfig) -> AnonymizationResult:
    return anonymize(g, _with_algorithm(cfg, Algorithm.FS))


def splitting_only(g: Graph, cfg: AnonymizerConfig) -> AnonymizationResult:
    return anonymize(g, _with_algorithm(cfg, Algorithm.SONLY))


__all__ = [
    "ANONYMIZERS",
    "Algorithm",
    "AnonymizationResult",
    "AnonymizationState",
    "Anonymizer",
    "AnonymizerConfig",
    "EdgePlan",
    "GroupIndex",
    "INFEASIBLE",
    "RedirectError",
    "RedirectableSet",
    "anonymize",
    "base_mergence_cost",
    "count_added_edges",
    "count_split_vertices",
    "create_by_split",
    "diversity",
    "edge_connect",
    "flex_split",
    "format_run_log",
    "group_split_size",
    "linked_split_parts",
    "inverse_edge_connect",
    "merge_by_split",
    "mergence_cost",
    "single_split_parts",
    "single_split_size",
    "splitting_only",
]
