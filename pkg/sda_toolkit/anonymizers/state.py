import itertools
import logging
import math
import random
from collections import Counter, deque
from dataclasses import dataclass
from typing import Collection, Iterable, Iterator, Literal, Sequence

from sda_toolkit.anonymizers.costs import Cost, diversity, mergence_cost
from sda_toolkit.anonymizers.groups import GroupIndex
from sda_toolkit.anonymizers.order import CommunityOrder
from sda_toolkit.anonymizers.types import (
    AddOp,
    AnonymizerConfig,
    RedirectOp,
    RunLogEntry,
    SplitOp,
)
from sda_toolkit.graph import Edge, Graph, Provenance, SplitRecord, Vertex

logger = logging.getLogger(__name__)


class RedirectError(ValueError):
    pass


@dataclass(frozen=True)
class RedirectableSet:
    owner: Vertex
    # (w, owner) pairs with w anonymized, ascending w
    edges: tuple[Edge, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)


@dataclass(frozen=True)
class EdgePlan:
    kind: Literal["mergence", "creation"]
    target: int
    members: tuple[Vertex, ...]
    cost: Cost


class AnonymizationState:
    """Working copy of the graph plus everything the heuristics track while anonymizing it"""

    def __init__(self, g: Graph, cfg: AnonymizerConfig, omega: int, closes_triangles: bool = False) -> None:
        self.graph = g
        # partners and redirect targets sharing neighbors come first
        self.closes_triangles = closes_triangles
        self.k = cfg.k
        self.omega = omega
        self.redirect_enabled = cfg.redirect
        self.rng = random.Random(cfg.seed)
        self.groups = GroupIndex(cfg.k)
        self.order = CommunityOrder()
        for v in g.vertices:
            self.order.insert(v, g.community(v), g.degree(v))
        self.anonymized: set[Vertex] = set()
        self.splits: list[SplitRecord] = []
        self.redirections: list[RedirectOp] = []
        self.operations: list[RunLogEntry] = []

    def is_open(self, v: Vertex) -> bool:
        return v in self.order

    def degree(self, v: Vertex) -> int:
        return self.graph.degree(v)

    def next_vertex(self, descending: bool) -> Vertex | None:
        return self.order.first(descending)

    def heads(self, exclude: Vertex, count: int, descending: bool) -> list[Vertex]:
        """Extreme-degree open vertex of up to `count` communities other than the one of `exclude`"""
        own = self.graph.community(exclude)
        candidates = []
        for c in self.order.active_communities():
            if c == own:
                continue
            head = self.order.head(c, descending)
            if head is not None:
                d = self.degree(head)
                candidates.append((-d if descending else d, c, head))
        candidates.sort()
        return [head for _, _, head in candidates[:count]]

    def _open_neighbors_in(self, v: Vertex, community: int) -> int:
        return sum(1 for n in self.graph.neighbors(v) if n in self.order and self.graph.community(n) == community)

    def partner_supply(self, v: Vertex) -> int:
        c = self.graph.community(v)
        return self.order.size(c) - (1 if self.is_open(v) else 0) - self._open_neighbors_in(v, c)

    def _closing_first(self, v: Vertex, candidates: Iterable[Vertex]) -> list[Vertex]:
        """Candidates sharing more neighbors with v first, keeping the given order among equals"""
        neighbors = self.graph.neighbors(v)
        ranked = [(-len(neighbors & self.graph.neighbors(x)), i, x) for i, x in enumerate(candidates)]
        return [x for _, _, x in sorted(ranked)]

    def partners(self, v: Vertex, count: int, descending: bool) -> list[Vertex]:
        if count <= 0:
            return []
        neighbors = self.graph.neighbors(v)
        community = self.order.iter_community(self.graph.community(v), descending)
        eligible = (x for x in community if x != v and x not in neighbors)
        if self.closes_triangles:
            return self._closing_first(v, eligible)[:count]
        return list(itertools.islice(eligible, count))

    def redirectable_edges(self, v: Vertex) -> RedirectableSet:
        if not self.redirect_enabled:
            return RedirectableSet(v)
        c = self.graph.community(v)
        open_in_community = self.order.size(c)
        edges = []
        for w in sorted(self.graph.neighbors(v)):
            if w not in self.anonymized or self.graph.provenance(v, w) is not Provenance.ADDED:
                continue
            if open_in_community - self._open_neighbors_in(w, c) >= 1:
                edges.append((w, v))
        return RedirectableSet(v, tuple(edges))

    def redirect_target(self, w: Vertex, v: Vertex, descending: bool) -> Vertex | None:
        neighbors = self.graph.neighbors(w)
        community = self.order.iter_community(self.graph.community(v), descending)
        eligible = (x for x in community if x != v and x not in neighbors)
        if self.closes_triangles:
            return next(iter(self._closing_first(w, eligible)), None)
        return next(eligible, None)

    def redirect_edge(self, w: Vertex, v: Vertex, x: Vertex) -> None:
        """Moves added edge (w, v) to (w, x): w keeps its degree, v loses one, x gains one"""
        g = self.graph
        if not g.has_edge(w, v) or g.provenance(w, v) is not Provenance.ADDED:
            raise RedirectError(f"({w}, {v}) is not an added edge")
        if w not in self.anonymized:
            raise RedirectError(f"{w} is not anonymized")
        if not self.is_open(x) or x == v:
            raise RedirectError(f"{x} is not an eligible redirect target for ({w}, {v})")
        if not g.community(w) == g.community(v) == g.community(x):
            raise RedirectError(f"{w}, {v} and {x} don't share a community")
        if g.has_edge(w, x):
            raise RedirectError(f"{x} is already adjacent to {w}")
        g.move_edge(w, v, x)
        for endpoint in (v, x):
            if self.is_open(endpoint):
                self.order.update(endpoint, g.degree(endpoint))
        op = RedirectOp(w, v, x)
        self.redirections.append(op)
        self.operations.append(op)

    def add_edge(self, u: Vertex, x: Vertex) -> None:
        self.graph.add_edge(u, x)
        for endpoint in (u, x):
            if self.is_open(endpoint):
                self.order.update(endpoint, self.graph.degree(endpoint))
        self.operations.append(AddOp(u, x))

    def settle(self, v: Vertex, degree: int) -> None:
        if self.graph.degree(v) != degree:
            raise RuntimeError(f"Vertex {v} has degree {self.graph.degree(v)}, can't join group {degree}")
        self.order.remove(v)
        self.anonymized.add(v)
        self.groups.add(v, degree, self.graph.community(v))

    def split(
        self,
        v: Vertex,
        target_degrees: Sequence[int],
        link_substitutes: bool,
        edge_order: Sequence[Vertex] | None = None,
    ) -> SplitRecord:
        self.order.remove(v)
        record = self.graph.split_vertex(v, target_degrees, link_substitutes, self.rng, edge_order)
        c = self.graph.community(record.substitutes[0])
        for substitute in record.substitutes:
            self.order.insert(substitute, c, self.graph.degree(substitute))
        self.splits.append(record)
        self.operations.append(SplitOp(v, record.substitutes, tuple(target_degrees), link_substitutes))
        return record

    def mergence_plan(self, v: Vertex) -> EdgePlan | None:
        d_v = self.degree(v)
        redirectable = len(self.redirectable_edges(v))
        supply = self.partner_supply(v)
        best: EdgePlan | None = None
        best_key: tuple | None = None
        for d in self.groups.ksda_degrees():
            cost = mergence_cost(d_v, d, redirectable, supply)
            if math.isinf(cost):
                continue
            key = (cost, abs(d - d_v), d)
            if best_key is None or key < best_key:
                best, best_key = EdgePlan("mergence", d, (v,), cost), key
        return best

    def creation_cost(self, v: Vertex, descending: bool) -> tuple[Cost, tuple[Vertex, ...], int]:
        """Cost of minting a new group around v, the group members and their target degree"""
        target = max(1, self.degree(v) - len(self.redirectable_edges(v)))
        members = (v, *self.heads(v, self.k - 1, descending))
        div = diversity((self.graph.community(u) for u in members), self.k)
        if math.isinf(div):
            return div, members, target
        cost: Cost = 0
        for u in members:
            cost += mergence_cost(self.degree(u), target, len(self.redirectable_edges(u)), self.partner_supply(u))
            if math.isinf(cost):
                break
        return div * cost, members, target

    def creation_plan(self, v: Vertex, descending: bool) -> EdgePlan | None:
        cost, members, target = self.creation_cost(v, descending)
        if math.isinf(cost):
            return None
        return EdgePlan("creation", target, members, cost)

    def edge_plan(self, v: Vertex, descending: bool) -> EdgePlan | None:
        """Cheaper of mergence and creation, mergence winning ties; None when both are infeasible"""
        mergence = self.mergence_plan(v)
        if mergence is not None and mergence.cost == 0:
            return mergence
        creation = self.creation_plan(v, descending)
        if creation is None or (mergence is not None and mergence.cost <= creation.cost):
            return mergence
        return creation

    def is_pure_join(self, plan: EdgePlan) -> bool:
        return all(self.degree(u) == plan.target for u in plan.members)

    def adjust_degree(self, u: Vertex, target: int, descending: bool) -> None:
        d_u = self.degree(u)
        if d_u < target:
            for x in self.partners(u, target - d_u, descending):
                self.add_edge(u, x)
        elif d_u > target:
            for w, _ in self.redirectable_edges(u).edges[: d_u - target]:
                x = self.redirect_target(w, u, descending)
                if x is None:
                    raise RuntimeError(f"No redirect target for ({w}, {u})")
                self.redirect_edge(w, u, x)
        if self.degree(u) != target:
            raise RuntimeError(f"Vertex {u} ended at degree {self.degree(u)} instead of {target}")

    def apply_plan(self, plan: EdgePlan, partners_descending: bool) -> None:
        for u in plan.members:
            self.adjust_degree(u, plan.target, partners_descending)
        for u in plan.members:
            self.settle(u, plan.target)

    def strands_communities(self, settled: Collection[Vertex]) -> bool:
        """Would fewer than k communities keep unanonymized vertices once `settled` are anonymized"""
        per_community = Counter(self.graph.community(u) for u in settled)
        closing = sum(1 for c, count in per_community.items() if self.order.size(c) == count)
        return len(self.order.active_communities()) - closing < self.k

    def reserve_needed(self, settled: Collection[Vertex], pure_join_target: int | None) -> bool:
        """
        A degree-1 k-SDA group lets any vertex be split into cohorts; it must exist before the
        unanonymized vertices shrink to fewer than k communities, unless every one of them can
        already join an existing group as it is.
        """
        if self.groups.is_ksda(1) or not self.strands_communities(settled):
            return False
        if pure_join_target is None:
            return True
        joinable = set(self.groups.ksda_degrees()) | {pure_join_target}
        excluded = set(settled)
        for c in self.order.active_communities():
            for x in self.order.iter_community(c, descending=False):
                if x not in excluded and self.degree(x) not in joinable:
                    return True
        return False

    def skeleton_neighbors(self, v: Vertex) -> list[Vertex]:
        """Neighbors over original and substitute-link edges: redirection never moves these"""
        g = self.graph
        return sorted(n for n in g.neighbors(v) if g.provenance(v, n) is not Provenance.ADDED)

    def loose_neighbors(self, v: Vertex) -> list[Vertex]:
        g = self.graph
        return sorted(n for n in g.neighbors(v) if g.provenance(v, n) is Provenance.ADDED)

    def components_around(self, v: Vertex) -> list[list[Vertex]]:
        """v's skeleton neighbors grouped by the skeleton component (without v) they belong to"""
        g = self.graph
        pending = set(self.skeleton_neighbors(v))
        blocks = []
        for start in sorted(pending):
            if start not in pending:
                continue
            block = []
            seen = {v, start}
            queue = deque([start])
            while queue and pending:
                x = queue.popleft()
                if x in pending:
                    pending.discard(x)
                    block.append(x)
                for y in g.neighbors(x):
                    if y not in seen and g.provenance(x, y) is not Provenance.ADDED:
                        seen.add(y)
                        queue.append(y)
            blocks.append(sorted(block))
        return blocks
