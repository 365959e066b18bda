import logging
import random
from collections import defaultdict
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx  # type: ignore

from sda_toolkit.graph.types import (
    CommunityId,
    CommunityRangeError,
    CrossCommunity,
    DuplicateEdge,
    Edge,
    InfeasibleSplit,
    IsolatedVertex,
    KOutOfRange,
    MissingCommunity,
    Provenance,
    SelfLoop,
    SplitRecord,
    UnknownProvenanceEdge,
    Vertex,
    VertexNotFound,
    edge_key,
)

logger = logging.getLogger(__name__)

Seed = int | random.Random


def as_rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


class Graph:
    """
    Simple undirected graph with a community label per vertex and a provenance tag per edge.

    Mutation is single-writer; concurrent readers must not overlap with add_edge / split_vertex
    """

    def __init__(self) -> None:
        self._adjacency: dict[Vertex, set[Vertex]] = {}
        self._community: dict[Vertex, CommunityId] = {}
        self._members: dict[CommunityId, set[Vertex]] = defaultdict(set)
        self._provenance: dict[Edge, Provenance] = {}
        self._next_id = 0

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[Vertex, Vertex]],
        community: Mapping[Vertex, CommunityId],
        provenance: Mapping[Edge, Provenance] | None = None,
    ) -> "Graph":
        graph = cls()
        for v, c in community.items():
            graph._insert_vertex(v, c)
        for u, v in edges:
            if u == v:
                raise SelfLoop(f"Self-loop on vertex {u}")
            for endpoint in (u, v):
                if endpoint not in graph._community:
                    raise MissingCommunity(f"Vertex {endpoint} has no community")
            key = edge_key(u, v)
            if key in graph._provenance:
                raise DuplicateEdge(f"Duplicate edge {key}")
            graph._connect(u, v, (provenance or {}).get(key, Provenance.ORIGINAL))
        unknown = sorted(set(provenance or {}) - set(graph._provenance))
        if unknown:
            raise UnknownProvenanceEdge(f"Provenance given for edges not in the graph: {unknown}")
        for v in graph._adjacency:
            if not graph._adjacency[v]:
                raise IsolatedVertex(f"Vertex {v} has no incident edges")
        graph._check_community_range()
        return graph

    def _insert_vertex(self, v: Vertex, c: CommunityId) -> None:
        self._adjacency[v] = set()
        self._community[v] = c
        self._members[c].add(v)
        self._next_id = max(self._next_id, v + 1)

    def _connect(self, u: Vertex, v: Vertex, provenance: Provenance) -> None:
        self._adjacency[u].add(v)
        self._adjacency[v].add(u)
        self._provenance[edge_key(u, v)] = provenance

    def _disconnect(self, u: Vertex, v: Vertex) -> Provenance:
        self._adjacency[u].discard(v)
        self._adjacency[v].discard(u)
        return self._provenance.pop(edge_key(u, v))

    def _check_community_range(self) -> None:
        ids = sorted(c for c, members in self._members.items() if members)
        if ids != list(range(len(ids))):
            raise CommunityRangeError(f"Community ids must form a contiguous range from 0, got {ids}")

    def __len__(self) -> int:
        return len(self._adjacency)

    def __contains__(self, v: object) -> bool:
        return v in self._adjacency

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._adjacency == other._adjacency
            and self._community == other._community
            and self._provenance == other._provenance
        )

    def __repr__(self) -> str:
        return f"Graph(vertices={len(self)}, edges={self.number_of_edges}, communities={self.community_count})"

    @property
    def vertices(self) -> list[Vertex]:
        return sorted(self._adjacency)

    @property
    def number_of_edges(self) -> int:
        return len(self._provenance)

    @property
    def next_vertex_id(self) -> Vertex:
        return self._next_id

    def edges(self) -> Iterator[Edge]:
        return iter(sorted(self._provenance))

    def edges_with_provenance(self) -> Iterator[tuple[Edge, Provenance]]:
        for edge in sorted(self._provenance):
            yield edge, self._provenance[edge]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return edge_key(u, v) in self._provenance

    def provenance(self, u: Vertex, v: Vertex) -> Provenance:
        return self._provenance[edge_key(u, v)]

    def degree(self, v: Vertex) -> int:
        return len(self._adjacency[v])

    def neighbors(self, v: Vertex) -> set[Vertex]:
        """Live view, do not mutate"""
        return self._adjacency[v]

    def community(self, v: Vertex) -> CommunityId:
        return self._community[v]

    def members(self, c: CommunityId) -> set[Vertex]:
        """Live view, do not mutate"""
        return self._members[c]

    @property
    def communities(self) -> list[CommunityId]:
        return sorted(c for c, members in self._members.items() if members)

    @property
    def community_count(self) -> int:
        return len(self.communities)

    def community_map(self) -> dict[Vertex, CommunityId]:
        return dict(self._community)

    def to_networkx(self) -> nx.Graph:
        """Snapshot with `community` node and `provenance` edge attributes"""
        nxg = nx.Graph()
        nxg.add_nodes_from((v, {"community": c}) for v, c in sorted(self._community.items()))
        nxg.add_edges_from((u, v, {"provenance": p}) for (u, v), p in sorted(self._provenance.items()))
        return nxg

    def copy(self) -> "Graph":
        clone = Graph()
        clone._adjacency = {v: set(nbrs) for v, nbrs in self._adjacency.items()}
        clone._community = dict(self._community)
        clone._members = defaultdict(set, {c: set(m) for c, m in self._members.items()})
        clone._provenance = dict(self._provenance)
        clone._next_id = self._next_id
        return clone

    def relabel_communities(self, community: Mapping[Vertex, CommunityId]) -> "Graph":
        """Copy with new community labels; edges keep their provenance"""
        missing = set(self._adjacency) - set(community)
        if missing:
            raise MissingCommunity(f"No community given for vertices {sorted(missing)[:10]}")
        return Graph.from_edges(self._provenance, {v: community[v] for v in self._adjacency}, self._provenance)

    def add_edge(self, u: Vertex, v: Vertex) -> None:
        """Adding Edge: a new intra-community edge tagged ADDED"""
        for endpoint in (u, v):
            if endpoint not in self._adjacency:
                raise VertexNotFound(f"Vertex {endpoint} not in graph")
        if u == v:
            raise SelfLoop(f"Self-loop on vertex {u}")
        if self._community[u] != self._community[v]:
            raise CrossCommunity(
                f"Vertices {u} and {v} belong to communities {self._community[u]} and {self._community[v]}"
            )
        if self.has_edge(u, v):
            raise DuplicateEdge(f"Edge {edge_key(u, v)} already exists")
        self._connect(u, v, Provenance.ADDED)

    def move_edge(self, w: Vertex, v: Vertex, x: Vertex) -> None:
        """Re-points edge (w, v) to (w, x) keeping its provenance. Callers validate eligibility"""
        if not self.has_edge(w, v):
            raise VertexNotFound(f"No edge {edge_key(w, v)} to move")
        if x == w or self.has_edge(w, x):
            raise DuplicateEdge(f"Edge {edge_key(w, x)} already exists")
        provenance = self._disconnect(w, v)
        self._connect(w, x, provenance)

    def split_vertex(
        self,
        v: Vertex,
        target_degrees: Sequence[int],
        link_substitutes: bool = False,
        seed: Seed = 0,
        edge_order: Sequence[Vertex] | None = None,
    ) -> SplitRecord:
        """
        Splitting Vertex: replaces `v` by len(target_degrees) substitutes of v's community.

        `target_degrees` are final degrees. With `link_substitutes` consecutive substitutes are joined
        by SUBSTITUTE_LINK edges (a path), so inner substitutes get two link edges and the ends one.
        Incident edges of `v` are shuffled with the seeded rng unless `edge_order` (a permutation
        of v's neighbors) fixes the order in which they fill the substitutes.
        """
        if v not in self._adjacency:
            raise VertexNotFound(f"Vertex {v} not in graph")
        parts = len(target_degrees)
        degree = self.degree(v)
        if parts < 2:
            raise InfeasibleSplit(f"Splitting {v} needs at least two parts, got {list(target_degrees)}")
        if parts > degree:
            raise InfeasibleSplit(f"Vertex {v} of degree {degree} can't be split into {parts} parts")
        link_counts = [0] * parts
        if link_substitutes:
            for i in range(parts - 1):
                link_counts[i] += 1
                link_counts[i + 1] += 1
        raw_degrees = [target - links for target, links in zip(target_degrees, link_counts)]
        if any(raw < 1 for raw in raw_degrees) or sum(raw_degrees) != degree:
            raise InfeasibleSplit(
                f"Targets {list(target_degrees)} (links: {link_substitutes}) don't partition degree {degree} of {v}"
            )

        if edge_order is None:
            others = sorted(self._adjacency[v])
            as_rng(seed).shuffle(others)
        else:
            others = list(edge_order)
            if sorted(others) != sorted(self._adjacency[v]):
                raise InfeasibleSplit(f"Edge order for {v} is not a permutation of its neighbors")

        c = self._community[v]
        substitutes = tuple(range(self._next_id, self._next_id + parts))
        for s in substitutes:
            self._insert_vertex(s, c)
        assignment: dict[Edge, Vertex] = {}
        cursor = 0
        for substitute, raw in zip(substitutes, raw_degrees):
            for other in others[cursor : cursor + raw]:
                provenance = self._disconnect(v, other)
                self._connect(substitute, other, provenance)
                assignment[edge_key(v, other)] = substitute
            cursor += raw
        if link_substitutes:
            for left, right in zip(substitutes, substitutes[1:]):
                self._connect(left, right, Provenance.SUBSTITUTE_LINK)

        del self._adjacency[v]
        del self._community[v]
        self._members[c].discard(v)
        logger.debug(f"Split {v} into {substitutes} with degrees {list(target_degrees)}")
        return SplitRecord(original=v, substitutes=substitutes, edge_assignment=assignment)


def check_k(g: Graph, k: int) -> None:
    community_count = g.community_count
    if not 1 <= k <= community_count:
        raise KOutOfRange(f"k must be within 1..{community_count}, got {k}")


def degree_communities(g: Graph) -> dict[int, set[CommunityId]]:
    spread: dict[int, set[CommunityId]] = defaultdict(set)
    for v in g.vertices:
        spread[g.degree(v)].add(g.community(v))
    return dict(spread)


def is_k_structurally_diverse(g: Graph, k: int) -> bool:
    """Every degree class spans at least k communities"""
    check_k(g, k)
    return all(len(communities) >= k for communities in degree_communities(g).values())


def is_k_degree_anonymous(g: Graph, k: int) -> bool:
    counts: dict[int, int] = defaultdict(int)
    for v in g.vertices:
        counts[g.degree(v)] += 1
    return all(count >= k for count in counts.values())
