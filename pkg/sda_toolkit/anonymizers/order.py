import bisect
from collections import defaultdict
from typing import Iterator

from sda_toolkit.graph import CommunityId, Vertex


class CommunityOrder:
    """
    Not-yet-anonymized vertices of every community sorted by degree.

    Vertices sit in per-degree buckets (ascending ids) and every community keeps its distinct degrees
    in a sorted list, so a degree change of one vertex touches two buckets only.
    """

    def __init__(self) -> None:
        self._buckets: dict[CommunityId, dict[int, list[Vertex]]] = defaultdict(dict)
        self._degrees: dict[CommunityId, list[int]] = defaultdict(list)
        self._position: dict[Vertex, tuple[CommunityId, int]] = {}
        self._sizes: dict[CommunityId, int] = defaultdict(int)

    def __contains__(self, v: object) -> bool:
        return v in self._position

    def __len__(self) -> int:
        return len(self._position)

    def insert(self, v: Vertex, community: CommunityId, degree: int) -> None:
        buckets = self._buckets[community]
        bucket = buckets.get(degree)
        if bucket is None:
            bucket = buckets[degree] = []
            bisect.insort(self._degrees[community], degree)
        bisect.insort(bucket, v)
        self._position[v] = (community, degree)
        self._sizes[community] += 1

    def remove(self, v: Vertex) -> None:
        community, degree = self._position.pop(v)
        buckets = self._buckets[community]
        bucket = buckets[degree]
        del bucket[bisect.bisect_left(bucket, v)]
        if not bucket:
            del buckets[degree]
            degrees = self._degrees[community]
            del degrees[bisect.bisect_left(degrees, degree)]
        self._sizes[community] -= 1

    def update(self, v: Vertex, degree: int) -> None:
        community, current = self._position[v]
        if current != degree:
            self.remove(v)
            self.insert(v, community, degree)

    def size(self, community: CommunityId) -> int:
        return self._sizes[community]

    def active_communities(self) -> list[CommunityId]:
        return sorted(c for c, size in self._sizes.items() if size > 0)

    def distinct_degrees(self, community: CommunityId) -> list[int]:
        return self._degrees[community]

    def head(self, community: CommunityId, descending: bool) -> Vertex | None:
        degrees = self._degrees[community]
        if not degrees:
            return None
        return self._buckets[community][degrees[-1] if descending else degrees[0]][0]

    def iter_community(self, community: CommunityId, descending: bool) -> Iterator[Vertex]:
        """Degree order in the requested direction, ascending ids within a degree"""
        degrees = self._degrees[community]
        for degree in reversed(degrees) if descending else degrees:
            yield from self._buckets[community][degree]

    def first(self, descending: bool) -> Vertex | None:
        """Next vertex to anonymize: extreme degree over all communities, smaller id on ties"""
        best: Vertex | None = None
        best_key: tuple[int, int] | None = None
        for community in self.active_communities():
            v = self.head(community, descending)
            if v is None:
                continue
            d = self._position[v][1]
            key = (-d if descending else d, v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best
