import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass

from sda_toolkit.constants.defaults import ORACLE_SUBSET_LIMIT
from sda_toolkit.exact.model import candidate_pairs
from sda_toolkit.graph import Edge, Graph, check_k, is_k_structurally_diverse

logger = logging.getLogger(__name__)


class EnumerationBudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    # None when no edge set of at most edge_budget edges works
    cost: int | None
    witness: tuple[Edge, ...]
    edge_budget: int
    subsets_checked: int

    @property
    def feasible(self) -> bool:
        return self.cost is not None

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "cost": self.cost,
            "edge_budget": self.edge_budget,
            "subsets_checked": self.subsets_checked,
            "witness": [list(edge) for edge in self.witness],
        }


def subset_count(candidates: int, edge_budget: int) -> int:
    return sum(math.comb(candidates, r) for r in range(min(edge_budget, candidates) + 1))


def _is_diverse_with(g: Graph, k: int, extra: tuple[Edge, ...]) -> bool:
    bumped: dict[int, int] = defaultdict(int)
    for u, v in extra:
        bumped[u] += 1
        bumped[v] += 1
    spread: dict[int, set[int]] = defaultdict(set)
    for v in g.vertices:
        spread[g.degree(v) + bumped.get(v, 0)].add(g.community(v))
    return all(len(communities) >= k for communities in spread.values())


def brute_force_add_edge_optimum(
    g: Graph, k: int, edge_budget: int, subset_limit: int = ORACLE_SUBSET_LIMIT
) -> OracleResult:
    """
    Fewest added intra-community edges making g k-structurally diverse, found by trying every edge
    subset in increasing cardinality up to `edge_budget`.
    """
    check_k(g, k)
    if edge_budget < 0:
        raise ValueError(f"Edge budget must be non-negative, got {edge_budget}")
    pairs = candidate_pairs(g)
    total = subset_count(len(pairs), edge_budget)
    if total > subset_limit:
        raise EnumerationBudgetExceeded(
            f"{len(pairs)} candidate edges with budget {edge_budget} give {total} subsets, limit is {subset_limit}"
        )
    checked = 0
    for size in range(min(edge_budget, len(pairs)) + 1):
        for subset in itertools.combinations(pairs, size):
            checked += 1
            if not _is_diverse_with(g, k, subset):
                continue
            witness = g.copy()
            for u, v in subset:
                witness.add_edge(u, v)
            if not is_k_structurally_diverse(witness, k):
                raise RuntimeError(f"Witness {subset} failed verification")
            logger.info(f"Oracle optimum for k={k}: {size} edges after {checked} subsets")
            return OracleResult(size, subset, edge_budget, checked)
    logger.info(f"No edge set of at most {edge_budget} edges makes the graph {k}-SD ({checked} subsets)")
    return OracleResult(None, (), edge_budget, checked)
