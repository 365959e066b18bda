import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from sda_toolkit.graph import Graph, Vertex, check_k, degree_communities

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AuditReport:
    """Community-identification exposure of a published graph against a degree-knowing attacker.

    Substitute vertices are audited as ordinary vertices: the attacker sees the published graph only.
    """

    k: int
    vertex_count: int
    violating: frozenset[Vertex]
    # degree -> number of communities hosting that degree
    spread: dict[int, int]
    # vertices whose degree class has fewer than k members (k-degree anonymity)
    k_degree_violating: frozenset[Vertex]

    @property
    def violation_fraction(self) -> float:
        return len(self.violating) / self.vertex_count if self.vertex_count else 0.0

    @property
    def k_degree_violation_fraction(self) -> float:
        return len(self.k_degree_violating) / self.vertex_count if self.vertex_count else 0.0

    @property
    def is_k_structurally_diverse(self) -> bool:
        return not self.violating

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "vertices": self.vertex_count,
            "violating_count": len(self.violating),
            "violation_fraction": self.violation_fraction,
            "k_degree_violating_count": len(self.k_degree_violating),
            "k_degree_violation_fraction": self.k_degree_violation_fraction,
            "violating": sorted(self.violating),
            "spread": [{"degree": d, "communities": n} for d, n in sorted(self.spread.items())],
        }


def degree_spread_table(g: Graph) -> dict[int, int]:
    return {degree: len(communities) for degree, communities in sorted(degree_communities(g).items())}


def audit(g: Graph, k: int) -> AuditReport:
    check_k(g, k)
    spread = degree_spread_table(g)
    class_sizes = Counter(g.degree(v) for v in g.vertices)
    violating = frozenset(v for v in g.vertices if spread[g.degree(v)] < k)
    k_degree_violating = frozenset(v for v in g.vertices if class_sizes[g.degree(v)] < k)
    report = AuditReport(
        k=k,
        vertex_count=len(g),
        violating=violating,
        spread=spread,
        k_degree_violating=k_degree_violating,
    )
    logger.info(f"Audit at {k = }: {len(violating)} of {len(g)} vertices violate k-structural diversity")
    return report


def violation_curve(g: Graph, ks: Iterable[int]) -> dict[int, float]:
    """Violation fraction for each k of a sweep"""
    spread = degree_spread_table(g)
    degrees = [g.degree(v) for v in g.vertices]
    curve = {}
    for k in ks:
        check_k(g, k)
        curve[k] = sum(1 for d in degrees if spread[d] < k) / len(degrees) if degrees else 0.0
    return curve
