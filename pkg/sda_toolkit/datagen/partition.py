import heapq
import logging
import random
from collections import deque

import networkx as nx  # type: ignore

from sda_toolkit.graph import Graph, Vertex
from sda_toolkit.graph.types import CommunityRangeError
from sda_toolkit.metrics.structure import connected_components

logger = logging.getLogger(__name__)


def _farthest(distances: dict[Vertex, int]) -> Vertex:
    return min(distances, key=lambda v: (-distances[v], v))


def _spread_seeds(g: nx.Graph, members: list[Vertex], count: int, rng: random.Random) -> list[Vertex]:
    """A peripheral vertex found by a double sweep, then repeatedly the vertex farthest from all seeds"""
    start = rng.choice(members)
    periphery = _farthest(nx.single_source_shortest_path_length(g, start))
    seeds = [_farthest(nx.single_source_shortest_path_length(g, periphery))]
    nearest = nx.single_source_shortest_path_length(g, seeds[0])
    while len(seeds) < count:
        candidate = min((v for v in members if v not in seeds), key=lambda v: (-nearest[v], v))
        seeds.append(candidate)
        for v, distance in nx.single_source_shortest_path_length(g, candidate).items():
            nearest[v] = min(nearest[v], distance)
    return seeds


def _seed_counts(sizes: list[int], l: int) -> list[int]:
    """Seeds per component: the biggest components first, then wherever the fewest vertices share a seed"""
    counts = [0] * len(sizes)
    for i in range(min(l, len(sizes))):
        counts[i] = 1
    for _ in range(l - sum(counts)):
        i = max(
            (i for i in range(len(sizes)) if counts[i] < sizes[i]),
            key=lambda i: (sizes[i] / counts[i], -i),
        )
        counts[i] += 1
    return counts


def assign_communities(g: Graph, l: int, seed: int = 0) -> Graph:
    """
    Splits g into l communities grown breadth-first from well separated seeds, the smallest community
    claiming the next vertex. Components left without a seed join the smallest community whole.
    """
    if not 1 <= l <= len(g):
        raise CommunityRangeError(f"Community count must be within 1..{len(g)}, got {l}")
    rng = random.Random(seed)
    nxg = g.to_networkx()
    by_component: dict[int, list[Vertex]] = {}
    for v, index in connected_components(nxg).items():
        by_component.setdefault(index, []).append(v)
    components = sorted(by_component.values(), key=lambda members: (-len(members), members[0]))

    seeds: list[Vertex] = []
    for members, count in zip(components, _seed_counts([len(c) for c in components], l)):
        if count:
            seeds += _spread_seeds(nxg, sorted(members), count, rng)

    community: dict[Vertex, int] = {}
    sizes = [0] * l
    frontiers: list[deque[Vertex]] = []
    for c, s in enumerate(seeds):
        community[s] = c
        sizes[c] = 1
        frontiers.append(deque(sorted(g.neighbors(s))))
    heap = [(1, c) for c in range(l)]
    heapq.heapify(heap)
    while heap:
        size, c = heapq.heappop(heap)
        frontier = frontiers[c]
        while frontier and frontier[0] in community:
            frontier.popleft()
        if not frontier:
            continue
        v = frontier.popleft()
        community[v] = c
        sizes[c] += 1
        frontier.extend(sorted(u for u in g.neighbors(v) if u not in community))
        heapq.heappush(heap, (sizes[c], c))

    for members in components:
        if members[0] in community:
            continue
        c = min(range(l), key=lambda c: (sizes[c], c))
        for v in members:
            community[v] = c
        sizes[c] += len(members)
    logger.info(f"Assigned {len(g)} vertices to {l} communities, sizes {min(sizes)}..{max(sizes)}")
    return g.relabel_communities(community)
