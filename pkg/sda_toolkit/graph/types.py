import enum
from dataclasses import dataclass, field
from typing import Mapping

Vertex = int
CommunityId = int
Edge = tuple[Vertex, Vertex]


def edge_key(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u < v else (v, u)


class Provenance(enum.Enum):
    ORIGINAL = "O"
    ADDED = "A"
    SUBSTITUTE_LINK = "S"


class GraphError(ValueError):
    pass


class MalformedLine(GraphError):
    def __init__(self, source: str, line_no: int, line: str, reason: str) -> None:
        super().__init__(f"{source}, line {line_no}: {reason}: {line!r}")
        self.source = source
        self.line_no = line_no


class MissingCommunity(GraphError):
    pass


class IsolatedVertex(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class CrossCommunity(GraphError):
    pass


class UnknownProvenanceEdge(GraphError):
    pass


class VertexNotFound(GraphError):
    pass


class InfeasibleSplit(GraphError):
    pass


class CommunityRangeError(GraphError):
    pass


class KOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class SplitRecord:
    """Vertex `original` replaced by `substitutes`; every incident edge of the original is re-homed
    to exactly one substitute. Link edges between substitutes are not part of the assignment"""

    original: Vertex
    substitutes: tuple[Vertex, ...]
    edge_assignment: Mapping[Edge, Vertex] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.substitutes)

    def to_dict(self) -> dict:
        return {
            "original": self.original,
            "substitutes": list(self.substitutes),
            "edge_assignment": [[u, v, sub] for (u, v), sub in sorted(self.edge_assignment.items())],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SplitRecord":
        return cls(
            original=int(data["original"]),
            substitutes=tuple(int(s) for s in data["substitutes"]),
            edge_assignment={edge_key(int(u), int(v)): int(sub) for u, v, sub in data.get("edge_assignment", [])},
        )


def resolve_origins(splits: list[SplitRecord]) -> dict[Vertex, Vertex]:
    """Maps every substitute (including substitutes of substitutes) to the input vertex it stands for.
    Vertices that were never split are absent; use `origins.get(v, v)`"""
    origins: dict[Vertex, Vertex] = {}
    for split in splits:
        root = origins.get(split.original, split.original)
        for substitute in split.substitutes:
            origins[substitute] = root
    return origins
