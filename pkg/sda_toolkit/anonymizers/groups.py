import bisect
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from sda_toolkit.graph import CommunityId, Vertex


@dataclass
class Group:
    degree: int
    members: set[Vertex] = field(default_factory=set)
    # community -> number of members from it
    communities: Counter = field(default_factory=Counter)


class GroupIndex:
    """Anonymous groups of already anonymized vertices, keyed by their (frozen) degree"""

    def __init__(self, k: int) -> None:
        self.k = k
        self._groups: dict[int, Group] = {}
        self._ksda_degrees: list[int] = []

    def add(self, v: Vertex, degree: int, community: CommunityId) -> None:
        group = self._groups.setdefault(degree, Group(degree))
        was_ksda = self.is_ksda(degree)
        group.members.add(v)
        group.communities[community] += 1
        if not was_ksda and len(group.communities) >= self.k:
            bisect.insort(self._ksda_degrees, degree)

    def is_ksda(self, degree: int) -> bool:
        group = self._groups.get(degree)
        return group is not None and len(group.communities) >= self.k

    def ksda_degrees(self) -> list[int]:
        """Ascending"""
        return self._ksda_degrees

    def ksda_degrees_up_to(self, degree: int) -> list[int]:
        return self._ksda_degrees[: bisect.bisect_right(self._ksda_degrees, degree)]

    @property
    def max_ksda_degree(self) -> int | None:
        return self._ksda_degrees[-1] if self._ksda_degrees else None

    def get(self, degree: int) -> Group | None:
        return self._groups.get(degree)

    def __contains__(self, degree: object) -> bool:
        return degree in self._groups

    def __iter__(self) -> Iterator[Group]:
        for degree in sorted(self._groups):
            yield self._groups[degree]

    def __len__(self) -> int:
        return len(self._groups)
