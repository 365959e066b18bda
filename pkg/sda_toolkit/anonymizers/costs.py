"""
Cost formulas shared by the heuristics. Costs are ints or math.inf (infeasible).
"""

import math
from typing import Iterable

from sda_toolkit.anonymizers.groups import GroupIndex
from sda_toolkit.graph import CommunityId

Cost = float
INFEASIBLE: Cost = math.inf


def base_mergence_cost(d_v: int, d: int) -> Cost:
    """Cost of moving a vertex of degree d_v into a group of degree d with added edges only"""
    if d >= d_v:
        return d - d_v
    return INFEASIBLE


def mergence_cost(d_v: int, d: int, redirectable: int = 0, partner_supply: int | None = None) -> Cost:
    """
    Zero when d can be reached by redirecting at most `redirectable` added edges away, d - d_v when
    raising is possible. `partner_supply` bounds the edges that can be added (None: unbounded)
    """
    if d_v >= d >= d_v - redirectable:
        return 0
    if d > d_v and (partner_supply is None or partner_supply >= d - d_v):
        return d - d_v
    return INFEASIBLE


def diversity(communities: Iterable[CommunityId], k: int) -> Cost:
    return 1 if len(set(communities)) >= k else INFEASIBLE


def _group_degrees(groups: GroupIndex | Iterable[int]) -> list[int]:
    if isinstance(groups, GroupIndex):
        return list(groups.ksda_degrees())
    return sorted(set(groups))


def single_split_parts(d_v: int, groups: GroupIndex | Iterable[int]) -> list[int] | None:
    """
    Fewest k-SDA group degrees summing to d_v (largest part first), None when no decomposition exists.
    """
    degrees = [d for d in _group_degrees(groups) if 1 <= d <= d_v]
    if not degrees:
        return None
    # parts[x]: fewest parts summing to x; choice[x]: largest degree reaching that optimum
    parts: list[Cost] = [0] + [INFEASIBLE] * d_v
    choice = [0] * (d_v + 1)
    for x in range(1, d_v + 1):
        for d in reversed(degrees):
            if d <= x and parts[x - d] + 1 < parts[x]:
                parts[x] = parts[x - d] + 1
                choice[x] = d
    if parts[d_v] == INFEASIBLE:
        return None
    decomposition = []
    x = d_v
    while x > 0:
        decomposition.append(choice[x])
        x -= choice[x]
    return sorted(decomposition, reverse=True)


def single_split_size(d_v: int, groups: GroupIndex | Iterable[int]) -> Cost:
    parts = single_split_parts(d_v, groups)
    return INFEASIBLE if parts is None else len(parts)


def group_split_size(d_v: int, member_degrees: Iterable[int]) -> int:
    """Substitutes produced when every member above d_v is cut down to d_v"""
    return 2 * sum(1 for d_u in member_degrees if d_u > d_v)


def linked_split_parts(d_v: int, groups: GroupIndex | Iterable[int]) -> list[int] | None:
    """
    Fewest k-SDA group degrees for a split whose substitutes form a path of link edges: the two ends
    keep degree - 1 of v's edges, inner substitutes degree - 2. Ends come first and last, inner
    substitutes in between largest first. None when no such decomposition exists.
    """
    degrees = _group_degrees(groups)
    ends = [d for d in degrees if 2 <= d <= d_v]
    inner = [d for d in degrees if 3 <= d <= d_v]
    # fewest[x]: fewest inner substitutes holding x of v's edges; choice[x]: largest degree reaching it
    fewest: list[Cost] = [0] + [INFEASIBLE] * d_v
    choice = [0] * (d_v + 1)
    for x in range(1, d_v + 1):
        for d in reversed(inner):
            if d - 2 <= x and fewest[x - d + 2] + 1 < fewest[x]:
                fewest[x] = fewest[x - d + 2] + 1
                choice[x] = d
    best: tuple[Cost, int, int] | None = None
    for i, first in enumerate(ends):
        for last in ends[i:]:
            rest = d_v - (first - 1) - (last - 1)
            if rest < 0 or math.isinf(fewest[rest]):
                continue
            key = (fewest[rest], -last, -first)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    _, last, first = best
    last, first = -last, -first
    middle = []
    x = d_v - (first - 1) - (last - 1)
    while x > 0:
        middle.append(choice[x])
        x -= choice[x] - 2
    return [last, *sorted(middle, reverse=True), first]
