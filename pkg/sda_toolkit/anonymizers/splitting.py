import math
import random
from typing import Sequence

from sda_toolkit.anonymizers.base import Anonymizer
from sda_toolkit.anonymizers.costs import (
    Cost,
    group_split_size,
    linked_split_parts,
    mergence_cost,
    single_split_parts,
    single_split_size,
)
from sda_toolkit.anonymizers.state import EdgePlan
from sda_toolkit.anonymizers.types import Algorithm, ReserveOp
from sda_toolkit.graph import CommunityId, Vertex


def spanning_count(block_sizes: Sequence[int], raw_sizes: Sequence[int]) -> int | None:
    """
    Fewest substitutes that, holding one edge into every block between them, tie all blocks into one
    tree (largest raw degrees first); None when no such choice exists. Zero when there is no block.
    """
    q = len(block_sizes)
    if q == 0:
        return 0
    slack = 0
    for count, raw in enumerate(sorted(raw_sizes, reverse=True), start=1):
        slack += raw - 1
        if slack >= q - 1:
            # a tree over `count` substitutes and q blocks has count + q - 1 edges
            return count if sum(block_sizes) >= count + q - 1 else None
    return None


def connected_edge_order(
    blocks: Sequence[Sequence[Vertex]],
    loose: Sequence[Vertex],
    raw_sizes: Sequence[int],
    rng: random.Random,
) -> list[Vertex] | None:
    """
    Orders a vertex's neighbors for an unlinked split into chunks of `raw_sizes` so that the
    substitutes keep every block (neighbors sharing a component without the vertex) reachable
    from each other. `loose` neighbors belong to no block and may go anywhere.

    None when every order cuts some block off.
    """
    count = spanning_count([len(b) for b in blocks], raw_sizes)
    if count is None:
        return None
    pool = [list(b) for b in blocks]
    for block in pool:
        rng.shuffle(block)
    slots: list[list[Vertex]] = [[] for _ in raw_sizes]
    if pool:
        spanning = sorted(range(len(raw_sizes)), key=lambda i: (-raw_sizes[i], i))[:count]
        left = _tree_degrees([raw_sizes[i] for i in spanning], len(pool) - 1)
        right = _tree_degrees([len(b) for b in pool], count - 1)
        for i, j in _bipartite_tree(left, right):
            slots[spanning[i]].append(pool[j].pop())
    rest = [x for block in pool for x in block] + list(loose)
    rng.shuffle(rest)
    for slot, raw in zip(slots, raw_sizes):
        while len(slot) < raw:
            slot.append(rest.pop())
    return [x for slot in slots for x in slot]


def _tree_degrees(caps: Sequence[int], extra: int) -> list[int]:
    """One each plus `extra` spread over the largest caps first, never exceeding a cap"""
    degrees = [1] * len(caps)
    for i in sorted(range(len(caps)), key=lambda i: (-caps[i], i)):
        step = min(extra, caps[i] - 1)
        degrees[i] += step
        extra -= step
    if extra:
        raise ValueError(f"Caps {list(caps)} can't hold {extra} more tree edges")
    return degrees


def _bipartite_tree(left: Sequence[int], right: Sequence[int]) -> list[tuple[int, int]]:
    """
    Spanning tree of the complete bipartite graph with the given degrees (all >= 1, both sides
    summing to the node count minus one) as (left, right) index pairs. A leaf is joined to the
    widest node of the other side until two nodes remain.
    """
    degrees = (list(left), list(right))
    alive = (set(range(len(left))), set(range(len(right))))
    edges = []
    while len(alive[0]) + len(alive[1]) > 2:
        for side in (0, 1):
            other = 1 - side
            hubs = [i for i in alive[other] if degrees[other][i] >= 2]
            leaves = [i for i in alive[side] if degrees[side][i] == 1]
            if hubs and leaves:
                break
        else:
            raise ValueError(f"Degrees {list(left)} / {list(right)} don't form a tree")
        hub = max(hubs, key=lambda i: (degrees[other][i], -i))
        leaf = min(leaves)
        edges.append((leaf, hub) if side == 0 else (hub, leaf))
        degrees[side][leaf] -= 1
        degrees[other][hub] -= 1
        alive[side].discard(leaf)
    edges.append((min(alive[0]), min(alive[1])))
    return edges


class MergeBySplit(Anonymizer):
    """Increasing degree order; falls back to splitting a vertex into cohorts of existing k-SDA groups"""

    algorithm = Algorithm.MBS

    def accept_edge_plan(self, plan: EdgePlan) -> bool:
        return plan.cost < self.state.omega

    def anonymize_vertex(self, v: Vertex) -> bool:
        state = self.state
        plan = state.edge_plan(v, descending=False)
        if plan is not None and self.accept_edge_plan(plan):
            pure_join_target = plan.target if state.is_pure_join(plan) else None
            if state.reserve_needed(plan.members, pure_join_target):
                self.mint_reserve()
                return True
            self.logger.debug(f"{v}: {plan.kind} at degree {plan.target}, cost {plan.cost}")
            state.apply_plan(plan, self.partners_descending)
            return True
        return self.split(v)

    def split(self, v: Vertex) -> bool:
        parts = single_split_parts(self.state.degree(v), self.state.groups)
        if parts is not None:
            return self.single_split(v, parts)
        return self.group_split(v, self.candidate_cohort(v))

    def candidate_cohort(self, v: Vertex) -> list[Vertex]:
        """v and the smallest-degree open vertex of k - 1 other communities"""
        return [v, *self.state.heads(v, self.state.k - 1, descending=False)]

    def split_apart(self, v: Vertex, targets: Sequence[int], link: bool) -> list[tuple[Vertex, int]]:
        """Splits v, returning (substitute, target degree) pairs"""
        record = self.state.split(v, targets, link)
        return list(zip(record.substitutes, targets))

    def single_split(self, v: Vertex, parts: list[int]) -> bool:
        state = self.state
        if state.reserve_needed([v], None):
            self.mint_reserve()
            return True
        if len(parts) == 1:
            state.settle(v, parts[0])
            return True
        self.logger.debug(f"{v}: single splitting into {parts}")
        for substitute, degree in self.split_apart(v, parts, link=False):
            state.settle(substitute, degree)
        return True

    def cut_down(self, u: Vertex, target: int) -> Vertex:
        """Splits u so that one substitute has degree `target`; returns that substitute"""
        pieces = self.split_apart(u, [target, self.state.degree(u) - target], link=False)
        return next(s for s, d in pieces if d == target)

    def group_split(self, v: Vertex, cohort: list[Vertex]) -> bool:
        state = self.state
        if len(cohort) < state.k:
            raise RuntimeError(f"Only {len(cohort)} communities left to mint a group for {v}, need {state.k}")
        target = state.degree(v)
        unsplit = [u for u in cohort if state.degree(u) == target]
        if state.reserve_needed(unsplit, None):
            self.mint_reserve()
            return True
        self.logger.debug(f"{v}: group splitting {cohort} down to degree {target}")
        members = [u if state.degree(u) == target else self.cut_down(u, target) for u in cohort]
        for u in members:
            state.settle(u, target)
        return True

    def mint_reserve(self) -> None:
        """Creates the degree-1 group from the smallest open vertex of k communities"""
        state = self.state
        heads = []
        for c in state.order.active_communities():
            head = state.order.head(c, descending=False)
            if head is not None:
                heads.append((state.degree(head), c, head))
        heads.sort()
        if len(heads) < state.k:
            raise RuntimeError(f"Only {len(heads)} communities left for the degree-1 group, need {state.k}")
        self.logger.warning(f"Minting the degree-1 group ahead of time from {[h for *_, h in heads[: state.k]]}")
        members = []
        for degree, _, head in heads[: state.k]:
            members.append(head if degree == 1 else self.cut_down(head, 1))
        for u in members:
            state.settle(u, 1)
        state.operations.append(ReserveOp(tuple(members)))


class FlexSplit(MergeBySplit):
    """
    MergeBySplit that picks between Single and Group Splitting by comparing the substitutes each
    strategy is expected to produce, looking ahead at the cohort vertices Adding Edge can't handle.

    Splits keep the graph connected: unlinked splits place edges so that the substitutes hold the
    components around the split vertex together, and fall back to linked substitutes when no such
    placement exists.
    """

    algorithm = Algorithm.FS

    def split(self, v: Vertex) -> bool:
        state = self.state
        d_v = state.degree(v)
        cohort = self.candidate_cohort(v)
        parts = single_split_parts(d_v, state.groups)
        if len(cohort) >= state.k:
            group_size = group_split_size(d_v, [state.degree(u) for u in cohort])
            if parts is None or group_size < self.lookahead_split_size(v, cohort):
                return self.group_split(v, cohort)
        if parts is None:
            raise RuntimeError(f"Vertex {v} of degree {d_v} can be neither single nor group split")
        return self.single_split(v, parts)

    def lookahead_split_size(self, v: Vertex, cohort: list[Vertex]) -> Cost:
        """Substitutes Single Splitting would eventually need for the cohort members Adding Edge can't anonymize"""
        state = self.state
        g = state.graph
        target = max(1, state.degree(v) - len(state.redirectable_edges(v)))
        failing = [
            u
            for u in cohort
            if math.isinf(
                mergence_cost(state.degree(u), target, len(state.redirectable_edges(u)), state.partner_supply(u))
            )
        ]
        if not failing:
            return 0
        widest = max(state.degree(u) for u in failing)
        lookahead = [u for u in cohort if state.degree(u) <= widest]
        d_max = state.groups.max_ksda_degree
        remaining = []
        for u in lookahead:
            cost = (
                math.inf
                if d_max is None
                else mergence_cost(state.degree(u), d_max, len(state.redirectable_edges(u)))
            )
            if not cost > len(g.members(g.community(u))) - state.degree(u) - 1:
                remaining.append(u)
        return sum(single_split_size(state.degree(u), state.groups) for u in remaining)

    def connected_order(self, v: Vertex, raw_sizes: Sequence[int]) -> list[Vertex] | None:
        state = self.state
        skeleton = state.skeleton_neighbors(v)
        loose = state.loose_neighbors(v)
        # every skeleton neighbor on its own is the worst case and needs no traversal
        order = connected_edge_order([[x] for x in skeleton], loose, raw_sizes, state.rng)
        if order is None:
            order = connected_edge_order(state.components_around(v), loose, raw_sizes, state.rng)
        return order

    def keeps_connected(self, v: Vertex, raw_sizes: Sequence[int]) -> bool:
        state = self.state
        skeleton = state.skeleton_neighbors(v)
        if spanning_count([1] * len(skeleton), raw_sizes) is not None:
            return True
        return spanning_count([len(b) for b in state.components_around(v)], raw_sizes) is not None

    def split_apart(self, v: Vertex, targets: Sequence[int], link: bool) -> list[tuple[Vertex, int]]:
        if link:
            return super().split_apart(v, targets, link)
        state = self.state
        edge_order = self.connected_order(v, targets)
        if edge_order is None:
            self.logger.warning(f"No edge placement keeps {v} connected when split into {list(targets)}")
        record = state.split(v, targets, False, edge_order)
        return list(zip(record.substitutes, targets))

    def single_split(self, v: Vertex, parts: list[int]) -> bool:
        state = self.state
        if len(parts) == 1 or self.keeps_connected(v, parts) or state.reserve_needed([v], None):
            return super().single_split(v, parts)
        linked = linked_split_parts(state.degree(v), state.groups)
        if linked is not None:
            self.logger.debug(f"{v}: single splitting into linked {linked}")
            for substitute, degree in self.split_apart(v, linked, link=True):
                state.settle(substitute, degree)
            return True
        cohort = self.candidate_cohort(v)
        if len(cohort) >= state.k:
            return self.group_split(v, cohort)
        plan = self.fallback_plan(v)
        if plan is not None:
            self.logger.debug(f"{v}: {plan.kind} at degree {plan.target} instead of a disconnecting split")
            state.apply_plan(plan, self.partners_descending)
            return True
        return super().single_split(v, parts)

    def fallback_plan(self, v: Vertex) -> EdgePlan | None:
        """Edge plan of any cost, taken when every split of v would disconnect the graph"""
        return self.state.mergence_plan(v)

    def cut_down(self, u: Vertex, target: int) -> Vertex:
        d_u = self.state.degree(u)
        if target > 2 or (target == 2 and not self.keeps_connected(u, [target, d_u - target])):
            # the remainder keeps its link to the cut piece, so a cut to 2 leaves it at degree d_u
            pieces = self.split_apart(u, [target, d_u - target + 2], link=True)
        else:
            pieces = self.split_apart(u, [target, d_u - target], link=False)
        return pieces[0][0]

    def cut_candidate(self, c: CommunityId) -> tuple[bool, int, CommunityId, Vertex] | None:
        """
        Smallest open vertex of c that reaches degree 1 without disconnecting anything, as a sort key
        (unsafe, degree, community, vertex); the plain smallest vertex flagged unsafe when none does.
        """
        state = self.state
        for u in state.order.iter_community(c, descending=False):
            d_u = state.degree(u)
            if d_u == 1 or self.keeps_connected(u, [1, d_u - 1]):
                return False, d_u, c, u
        head = state.order.head(c, descending=False)
        if head is None:
            return None
        return True, state.degree(head), c, head

    def degree_one_picks(self, exclude: CommunityId | None) -> list[Vertex]:
        picks = []
        for c in self.state.order.active_communities():
            if c != exclude and (pick := self.cut_candidate(c)) is not None:
                picks.append(pick)
        picks.sort()
        return [u for *_, u in picks]

    def candidate_cohort(self, v: Vertex) -> list[Vertex]:
        state = self.state
        if state.degree(v) > 1:
            return super().candidate_cohort(v)
        return [v, *self.degree_one_picks(state.graph.community(v))[: state.k - 1]]

    def mint_reserve(self) -> None:
        state = self.state
        picks = self.degree_one_picks(None)
        if len(picks) < state.k:
            raise RuntimeError(f"Only {len(picks)} communities left for the degree-1 group, need {state.k}")
        members = picks[: state.k]
        self.logger.warning(f"Minting the degree-1 group ahead of time from {members}")
        members = [u if state.degree(u) == 1 else self.cut_down(u, 1) for u in members]
        for u in members:
            state.settle(u, 1)
        state.operations.append(ReserveOp(tuple(members)))


class SplittingOnly(FlexSplit):
    """FlexSplit without Adding Edge: only zero-cost joins are taken, everything else is split"""

    algorithm = Algorithm.SONLY

    def accept_edge_plan(self, plan: EdgePlan) -> bool:
        return plan.cost == 0 and self.state.is_pure_join(plan)

    def fallback_plan(self, v: Vertex) -> EdgePlan | None:
        return None
