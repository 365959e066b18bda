import enum
from dataclasses import dataclass, field

from sda_toolkit.graph import Edge, Graph, Provenance, SplitRecord, Vertex, edge_key, resolve_origins
from sda_toolkit.graph.types import KOutOfRange


class Algorithm(enum.Enum):
    EC = "ec"
    CBS = "cbs"
    MBS = "mbs"
    FS = "fs"
    IEC = "iec"
    SONLY = "sonly"

    @property
    def descending(self) -> bool:
        """Processing order: largest degree first for the edge-connecting family"""
        return self in (Algorithm.EC, Algorithm.CBS, Algorithm.IEC)

    @property
    def is_total(self) -> bool:
        return self in (Algorithm.MBS, Algorithm.FS, Algorithm.SONLY)


@dataclass(frozen=True)
class AnonymizerConfig:
    k: int
    algorithm: Algorithm = Algorithm.FS
    # split penalty; None means |V|^2 of the input graph
    omega: int | None = None
    seed: int = 0
    # with redirection off, mergence and creation use the base costs
    redirect: bool = True

    def __post_init__(self) -> None:
        if self.k < 1:
            raise KOutOfRange(f"k must be positive, got {self.k}")
        if self.omega is not None and self.omega < 1:
            raise ValueError(f"omega must be positive, got {self.omega}")

    def resolve_omega(self, g: Graph) -> int:
        return self.omega if self.omega is not None else len(g) ** 2


@dataclass(frozen=True)
class AddOp:
    u: Vertex
    v: Vertex

    def __str__(self) -> str:
        return f"ADD {self.u} {self.v}"


@dataclass(frozen=True)
class RedirectOp:
    w: Vertex
    v: Vertex
    x: Vertex

    @property
    def old_edge(self) -> Edge:
        return edge_key(self.w, self.v)

    @property
    def new_edge(self) -> Edge:
        return edge_key(self.w, self.x)

    def __str__(self) -> str:
        return f"REDIR {self.w} {self.v}->{self.x}"


@dataclass(frozen=True)
class SplitOp:
    v: Vertex
    substitutes: tuple[Vertex, ...]
    degrees: tuple[int, ...]
    linked: bool

    def __str__(self) -> str:
        parts = " ".join(f"{s}:{d}" for s, d in zip(self.substitutes, self.degrees))
        return f"SPLIT {self.v} -> {parts}" + (" linked" if self.linked else "")


@dataclass(frozen=True)
class ReserveOp:
    """Marks the degree-1 group being minted ahead of a plan that would strand the last communities"""

    members: tuple[Vertex, ...]

    def __str__(self) -> str:
        return "BOOT " + " ".join(str(m) for m in self.members)


RunLogEntry = AddOp | RedirectOp | SplitOp | ReserveOp


def format_run_log(operations: list[RunLogEntry]) -> str:
    return "".join(f"{op}\n" for op in operations)


def count_added_edges(g: Graph, splits: list[SplitRecord]) -> int:
    """Added edges between distinct input identities"""
    origins = resolve_origins(splits)
    return sum(
        1
        for (u, v), provenance in g.edges_with_provenance()
        if provenance is Provenance.ADDED and origins.get(u, u) != origins.get(v, v)
    )


def count_split_vertices(splits: list[SplitRecord]) -> int:
    return sum(split.size - 1 for split in splits)


@dataclass
class AnonymizationResult:
    graph: Graph
    k: int
    algorithm: Algorithm
    omega: int
    n_a: int
    n_s: int
    success: bool
    input_vertices: int
    input_edges: int
    splits: list[SplitRecord] = field(default_factory=list)
    redirections: list[RedirectOp] = field(default_factory=list)
    operations: list[RunLogEntry] = field(default_factory=list)

    @property
    def cost(self) -> int:
        return self.n_a + self.omega * self.n_s

    @property
    def split_vertex_count(self) -> int:
        return len({resolve_origins(self.splits).get(s.original, s.original) for s in self.splits})

    def summary(self) -> dict:
        split_count = self.split_vertex_count
        return {
            "algorithm": self.algorithm.value,
            "k": self.k,
            "success": self.success,
            "omega": self.omega,
            "n_a": self.n_a,
            "n_s": self.n_s,
            "cost": self.cost,
            "redirections": len(self.redirections),
            "new_edge_ratio": self.n_a / self.input_edges if self.input_edges else 0.0,
            "split_vertex_ratio": split_count / self.input_vertices if self.input_vertices else 0.0,
            "substitutes_per_split_vertex": (self.n_s + split_count) / split_count if split_count else 0.0,
        }
