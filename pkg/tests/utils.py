import random
from typing import Iterable, Mapping, Sequence

from sda_toolkit.datagen import RmatParams, assign_communities, generate_rmat
from sda_toolkit.graph import Edge, Graph, Provenance, SplitRecord, resolve_origins


def make_graph(edges: Iterable[Edge], community: Mapping[int, int] | Sequence[int] | None = None) -> Graph:
    """Graph from an edge list; `community` maps vertex -> community (a sequence is indexed by vertex id)"""
    edges = list(edges)
    vertices = sorted({v for edge in edges for v in edge})
    if community is None:
        labels = {v: 0 for v in vertices}
    elif isinstance(community, Mapping):
        labels = dict(community)
    else:
        labels = {v: community[v] for v in vertices}
    return Graph.from_edges(edges, labels)


def path_star_graph() -> Graph:
    """Path 0-1-2 in community 0, star 3-{4,5,6} in community 1: no vertex of community 0 can reach degree 3"""
    return make_graph([(0, 1), (1, 2), (3, 4), (3, 5), (3, 6)], [0, 0, 0, 1, 1, 1, 1])


def two_triangles() -> Graph:
    return make_graph([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], [0, 0, 0, 1, 1, 1])


def random_community_graph(seed: int, n: int = 60, m: int = 120, communities: int = 4) -> Graph:
    return assign_communities(generate_rmat(RmatParams(n=n, m=m, seed=seed)), communities, seed)


def random_tiny_graph(rng: random.Random) -> Graph:
    """Two communities of 2..4 vertices, each connected by a random path plus random extra edges"""
    edges: list[Edge] = []
    community: dict[int, int] = {}
    first_id = 0
    for c in range(2):
        size = rng.randint(2, 4)
        members = list(range(first_id, first_id + size))
        first_id += size
        for v in members:
            community[v] = c
        path = list(members)
        rng.shuffle(path)
        chosen = {(min(u, v), max(u, v)) for u, v in zip(path, path[1:])}
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                if rng.random() < 0.3:
                    chosen.add((u, v))
        edges.extend(sorted(chosen))
    return make_graph(edges, community)


def recount_added_edges(g: Graph, splits: list[SplitRecord]) -> int:
    origins = resolve_origins(splits)
    added = 0
    for u, v in g.edges():
        if g.provenance(u, v) is Provenance.ADDED and origins.get(u, u) != origins.get(v, v):
            added += 1
    return added


def min_partition_size(total: int, parts: Sequence[int]) -> int | None:
    """Fewest parts from `parts` (repetition allowed) summing to `total`, by enumerating partitions"""
    allowed = sorted(set(p for p in parts if p >= 1), reverse=True)
    best: int | None = None

    def extend(remaining: int, largest_index: int, used: int) -> None:
        nonlocal best
        if remaining == 0:
            best = used if best is None else min(best, used)
            return
        for i in range(largest_index, len(allowed)):
            if allowed[i] <= remaining:
                extend(remaining - allowed[i], i, used + 1)

    extend(total, 0, 0)
    return best
