import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator, Literal, Mapping

import pyomo.environ as pyo  # type: ignore
from pyomo.repn import generate_standard_repn  # type: ignore

from sda_toolkit.constants.defaults import SUBSTITUTE_BUDGET
from sda_toolkit.graph import CommunityId, Edge, Graph, Vertex, check_k, edge_key

logger = logging.getLogger(__name__)

Relation = Literal["<=", ">=", "="]
# (coefficient, variable name)
Term = tuple[int, str]


@dataclass(frozen=True)
class LinearRow:
    """One constraint of a model flattened to `terms relation rhs`"""

    label: str
    terms: tuple[Term, ...]
    relation: Relation
    rhs: int

    @property
    def family(self) -> str:
        """Constraint component the row belongs to, e.g. 'c4'"""
        return self.label.split("[", 1)[0]

    def activity(self, assignment: Mapping[str, int]) -> int:
        return sum(coef * assignment.get(var, 0) for coef, var in self.terms)

    def is_satisfied(self, assignment: Mapping[str, int]) -> bool:
        activity = self.activity(assignment)
        if self.relation == "<=":
            return activity <= self.rhs
        if self.relation == ">=":
            return activity >= self.rhs
        return activity == self.rhs


def linear_terms(expr: Any) -> tuple[list[Term], int]:
    """Integer linear terms and constant of a pyomo expression"""
    repn = generate_standard_repn(expr, compute_values=True)
    if not repn.is_linear():
        raise ValueError(f"Expression {expr} is not linear")
    terms = [(int(coef), var.name) for coef, var in zip(repn.linear_coefs, repn.linear_vars) if coef]
    return terms, int(repn.constant)


def _row(con: Any) -> LinearRow:
    terms, constant = linear_terms(con.body)
    if con.equality:
        return LinearRow(con.name, tuple(terms), "=", int(con.ub) - constant)
    if con.lb is None and con.ub is not None:
        return LinearRow(con.name, tuple(terms), "<=", int(con.ub) - constant)
    if con.ub is None and con.lb is not None:
        return LinearRow(con.name, tuple(terms), ">=", int(con.lb) - constant)
    raise ValueError(f"Constraint {con.name} is ranged or unbounded")


class IpModel:
    """Minimization over binary variables with linear constraints, held as a pyomo model"""

    def __init__(self, model: pyo.ConcreteModel) -> None:
        self.model = model

    @property
    def name(self) -> str:
        return self.model.name

    @property
    def variables(self) -> list[str]:
        return [var.name for var in self.model.component_data_objects(pyo.Var)]

    def _objective(self) -> Any:
        objectives = list(self.model.component_data_objects(pyo.Objective, active=True))
        if len(objectives) != 1:
            raise ValueError(f"Model {self.name!r} needs exactly one objective, has {len(objectives)}")
        if objectives[0].sense != pyo.minimize:
            raise ValueError(f"Model {self.name!r} must be a minimization")
        return objectives[0]

    @property
    def objective(self) -> list[Term]:
        return linear_terms(self._objective().expr)[0]

    @property
    def objective_offset(self) -> int:
        """Constant part of the objective"""
        return linear_terms(self._objective().expr)[1]

    def rows(self) -> list[LinearRow]:
        return [_row(con) for con in self.model.component_data_objects(pyo.Constraint, active=True)]

    def family_counts(self) -> Counter:
        return Counter(row.family for row in self.rows())

    def evaluate(self, assignment: Mapping[str, int]) -> int:
        terms, offset = linear_terms(self._objective().expr)
        return offset + sum(coef * assignment.get(var, 0) for coef, var in terms)

    def violated(self, assignment: Mapping[str, int]) -> list[LinearRow]:
        return [row for row in self.rows() if not row.is_satisfied(assignment)]


def index_set(items: Iterable[Any], dimen: int) -> pyo.Set:
    return pyo.Set(initialize=list(items), dimen=dimen, ordered=True)


def candidate_pairs(g: Graph) -> list[Edge]:
    """Non-adjacent same-community pairs, i.e. the edges Adding Edge may create"""
    pairs = []
    for c in g.communities:
        for u, v in itertools.combinations(sorted(g.members(c)), 2):
            if not g.has_edge(u, v):
                pairs.append((u, v))
    return pairs


class AddEdgeModelBuilder:
    """Adding Edge only: minimize added edges subject to constraint families c1-c6"""

    def __init__(self, g: Graph, k: int) -> None:
        check_k(g, k)
        self.g = g
        self.k = k
        self.model = pyo.ConcreteModel(name=f"sda_add_edge_k{k}")
        self.pairs = candidate_pairs(g)
        self.candidates: dict[Vertex, list[Vertex]] = {v: [] for v in g.vertices}
        for u, v in self.pairs:
            self.candidates[u].append(v)
            self.candidates[v].append(u)
        # reachable degree range of every vertex
        self.degree_range = {v: (g.degree(v), g.degree(v) + len(self.candidates[v])) for v in g.vertices}
        self.degrees = list(range(1, max(high for _, high in self.degree_range.values()) + 1))

    def build(self) -> IpModel:
        self.add_variables()
        self.add_objective()
        self.add_single_degree_constraints()
        self.add_degree_pruning_constraints()
        self.add_degree_count_constraints()
        self.add_degree_presence_constraints()
        self.add_degree_witness_constraints()
        self.add_diversity_constraints()
        logger.info(
            f"Built {self.model.name}: {self.model.nvariables()} variables, {self.model.nconstraints()} constraints"
        )
        return IpModel(self.model)

    def add_variables(self) -> None:
        m = self.model
        g = self.g
        m.alpha = pyo.Var(index_set(self.pairs, 2), domain=pyo.Binary)
        m.delta = pyo.Var(index_set(itertools.product(g.vertices, self.degrees), 2), domain=pyo.Binary)
        m.theta = pyo.Var(index_set(itertools.product(g.communities, self.degrees), 2), domain=pyo.Binary)

    def add_objective(self) -> None:
        m = self.model
        m.cost = pyo.Objective(expr=sum(m.alpha[pair] for pair in self.pairs), sense=pyo.minimize)

    def add_single_degree_constraints(self) -> None:
        self.model.c1 = pyo.Constraint(
            index_set(self.g.vertices, 1),
            rule=lambda m, u: sum(m.delta[u, d] for d in self.degrees) == 1,
        )

    def add_degree_pruning_constraints(self) -> None:
        pruned = [
            (u, d)
            for u in self.g.vertices
            for d in self.degrees
            if not self.degree_range[u][0] <= d <= self.degree_range[u][1]
        ]
        self.model.c2 = pyo.Constraint(index_set(pruned, 2), rule=lambda m, u, d: m.delta[u, d] == 0)

    def add_degree_count_constraints(self) -> None:
        def rule(m: pyo.ConcreteModel, u: Vertex) -> Any:
            added = sum(m.alpha[edge_key(u, v)] for v in self.candidates[u])
            return added - sum(d * m.delta[u, d] for d in self.degrees) == -self.g.degree(u)

        self.model.c3 = pyo.Constraint(index_set(self.g.vertices, 1), rule=rule)

    def add_degree_presence_constraints(self) -> None:
        low_high = self.degree_range
        reachable = [(u, d) for u in self.g.vertices for d in self.degrees if low_high[u][0] <= d <= low_high[u][1]]
        self.model.c4 = pyo.Constraint(
            index_set(reachable, 2),
            rule=lambda m, u, d: m.delta[u, d] - m.theta[self.g.community(u), d] <= 0,
        )

    def add_degree_witness_constraints(self) -> None:
        def rule(m: pyo.ConcreteModel, c: CommunityId, d: int) -> Any:
            return m.theta[c, d] - sum(m.delta[u, d] for u in sorted(self.g.members(c))) <= 0

        self.model.c5 = pyo.Constraint(index_set(itertools.product(self.g.communities, self.degrees), 2), rule=rule)

    def add_diversity_constraints(self) -> None:
        self.model.c6 = pyo.Constraint(
            index_set(itertools.product(self.g.communities, self.degrees), 2),
            rule=diversity_rule(self.g.communities, self.k),
        )


def diversity_rule(communities: list[CommunityId], k: int) -> Callable[..., Any]:
    """A degree used by community c is used by k - 1 other communities too; void for k = 1"""

    def rule(m: pyo.ConcreteModel, c: CommunityId, d: int) -> Any:
        if k == 1:
            return pyo.Constraint.Skip
        return (k - 1) * m.theta[c, d] - sum(m.theta[other, d] for other in communities if other != c) <= 0

    return rule


def build_add_edge_model(g: Graph, k: int) -> IpModel:
    return AddEdgeModelBuilder(g, k).build()


def default_substitute_budget(g: Graph) -> Callable[[Vertex], int]:
    return lambda v: min(g.degree(v), SUBSTITUTE_BUDGET)


class FullModelBuilder:
    """
    Adding Edge plus Splitting Vertex, constraint families c7-c16. Vertex u gets `budget(u)` candidate
    substitutes; an inactive substitute has degree 0 and no edges.
    """

    def __init__(self, g: Graph, k: int, omega: int | None = None, budget: Callable[[Vertex], int] | None = None):
        check_k(g, k)
        self.g = g
        self.k = k
        self.omega = omega if omega is not None else len(g) ** 2
        budget = budget or default_substitute_budget(g)
        self.substitutes: dict[Vertex, int] = {}
        for v in g.vertices:
            size = budget(v)
            if not 1 <= size <= g.degree(v):
                raise ValueError(f"Substitute budget of {v} must be within 1..{g.degree(v)}, got {size}")
            self.substitutes[v] = size
        self.model = pyo.ConcreteModel(name=f"sda_full_k{k}")
        self.pairs = candidate_pairs(g)
        self.original_edges = list(g.edges())
        candidate_edges: dict[Vertex, int] = {v: 0 for v in g.vertices}
        for u, v in self.pairs:
            candidate_edges[u] += self.substitutes[v]
            candidate_edges[v] += self.substitutes[u]
        max_degree = max(g.degree(v) + candidate_edges[v] + self.substitutes[v] - 1 for v in g.vertices)
        self.degrees = list(range(1, max_degree + 1))

    def slots(self, u: Vertex) -> range:
        return range(self.substitutes[u])

    # variable names, valid once the model is built
    def alpha(self, u: Vertex, v: Vertex, i: int, j: int) -> str:
        return self.model.alpha[u, v, i, j].name

    def beta(self, u: Vertex, i: int, j: int) -> str:
        return self.model.beta[u, i, j].name

    def eta(self, u: Vertex, v: Vertex, i: int, j: int) -> str:
        return self.model.eta[u, v, i, j].name

    def pi(self, u: Vertex, i: int) -> str:
        return self.model.pi[u, i].name

    def delta(self, u: Vertex, i: int, d: int) -> str:
        return self.model.delta[u, i, d].name

    def theta(self, c: CommunityId, d: int) -> str:
        return self.model.theta[c, d].name

    def pair_slots(self, pairs: list[Edge]) -> Iterator[tuple[Vertex, Vertex, int, int]]:
        for u, v in pairs:
            for i in self.slots(u):
                for j in self.slots(v):
                    yield u, v, i, j

    def link_slots(self) -> Iterator[tuple[Vertex, int, int]]:
        for u in self.g.vertices:
            for i, j in itertools.combinations(self.slots(u), 2):
                yield u, i, j

    def vertex_slots(self) -> list[tuple[Vertex, int]]:
        return [(u, i) for u in self.g.vertices for i in self.slots(u)]

    def build(self) -> IpModel:
        self.add_variables()
        self.add_objective()
        self.add_single_degree_constraints()
        self.add_degree_count_constraints()
        self.add_degree_presence_constraints()
        self.add_degree_witness_constraints()
        self.add_diversity_constraints()
        self.add_original_edge_constraints()
        self.add_activation_constraints()
        logger.info(
            f"Built {self.model.name}: {self.model.nvariables()} variables, {self.model.nconstraints()} constraints"
        )
        return IpModel(self.model)

    def add_variables(self) -> None:
        m = self.model
        m.alpha = pyo.Var(index_set(self.pair_slots(self.pairs), 4), domain=pyo.Binary)
        m.beta = pyo.Var(index_set(self.link_slots(), 3), domain=pyo.Binary)
        m.eta = pyo.Var(index_set(self.pair_slots(self.original_edges), 4), domain=pyo.Binary)
        m.pi = pyo.Var(index_set(self.vertex_slots(), 2), domain=pyo.Binary)
        degrees = [0, *self.degrees]
        m.delta = pyo.Var(
            index_set(((u, i, d) for u, i in self.vertex_slots() for d in degrees), 3), domain=pyo.Binary
        )
        m.theta = pyo.Var(index_set(itertools.product(self.g.communities, self.degrees), 2), domain=pyo.Binary)

    def add_objective(self) -> None:
        m = self.model
        splitting = sum(self.omega * m.pi[slot] for slot in self.vertex_slots())
        edges = sum(m.alpha[index] for index in self.pair_slots(self.pairs))
        edges += sum(m.eta[index] for index in self.pair_slots(self.original_edges))
        offset = -self.omega * len(self.g) - len(self.original_edges)
        m.cost = pyo.Objective(expr=splitting + edges + offset, sense=pyo.minimize)

    def incident_edges(self, u: Vertex, i: int) -> list[Any]:
        """Every edge variable that may touch substitute i of u"""
        m = self.model
        edges = []
        for v in sorted(self.g.neighbors(u)):
            for j in self.slots(v):
                edges.append(m.eta[u, v, i, j] if u < v else m.eta[v, u, j, i])
        for j in self.slots(u):
            if j != i:
                edges.append(m.beta[u, min(i, j), max(i, j)])
        for a, b in self.pairs:
            if u in (a, b):
                other = b if u == a else a
                for j in self.slots(other):
                    edges.append(m.alpha[a, b, i, j] if u == a else m.alpha[a, b, j, i])
        return edges

    def add_single_degree_constraints(self) -> None:
        self.model.c7 = pyo.Constraint(
            index_set(self.vertex_slots(), 2),
            rule=lambda m, u, i: sum(m.delta[u, i, d] for d in [0, *self.degrees]) == 1,
        )

    def add_degree_count_constraints(self) -> None:
        def rule(m: pyo.ConcreteModel, u: Vertex, i: int) -> Any:
            return sum(self.incident_edges(u, i)) - sum(d * m.delta[u, i, d] for d in self.degrees) == 0

        self.model.c8 = pyo.Constraint(index_set(self.vertex_slots(), 2), rule=rule)

    def add_degree_presence_constraints(self) -> None:
        self.model.c9 = pyo.Constraint(
            index_set(((u, i, d) for u, i in self.vertex_slots() for d in self.degrees), 3),
            rule=lambda m, u, i, d: m.delta[u, i, d] - m.theta[self.g.community(u), d] <= 0,
        )

    def add_degree_witness_constraints(self) -> None:
        def rule(m: pyo.ConcreteModel, c: CommunityId, d: int) -> Any:
            members = sorted(self.g.members(c))
            return m.theta[c, d] - sum(m.delta[u, i, d] for u in members for i in self.slots(u)) <= 0

        self.model.c10 = pyo.Constraint(index_set(itertools.product(self.g.communities, self.degrees), 2), rule=rule)

    def add_diversity_constraints(self) -> None:
        self.model.c11 = pyo.Constraint(
            index_set(itertools.product(self.g.communities, self.degrees), 2),
            rule=diversity_rule(self.g.communities, self.k),
        )

    def add_original_edge_constraints(self) -> None:
        self.model.c12 = pyo.Constraint(
            index_set(self.original_edges, 2),
            rule=lambda m, u, v: sum(m.eta[u, v, i, j] for i in self.slots(u) for j in self.slots(v)) >= 1,
        )

    def add_activation_constraints(self) -> None:
        """An edge variable may only be set when both substitutes it joins are active; end 0 is u's side"""
        m = self.model

        def pair_rule(edge: Any) -> Callable[..., Any]:
            return lambda m, u, v, i, j, end: edge[u, v, i, j] - (m.pi[u, i] if end == 0 else m.pi[v, j]) <= 0

        ends = (0, 1)
        m.c13 = pyo.Constraint(
            index_set(((*slot, end) for slot in self.pair_slots(self.original_edges) for end in ends), 5),
            rule=pair_rule(m.eta),
        )
        m.c15 = pyo.Constraint(
            index_set(((*slot, end) for slot in self.pair_slots(self.pairs) for end in ends), 5),
            rule=pair_rule(m.alpha),
        )
        m.c16 = pyo.Constraint(
            index_set(((*slot, end) for slot in self.link_slots() for end in ends), 4),
            rule=lambda m, u, i, j, end: m.beta[u, i, j] - m.pi[u, i if end == 0 else j] <= 0,
        )


def build_full_model(
    g: Graph, k: int, omega: int | None = None, budget: Callable[[Vertex], int] | None = None
) -> IpModel:
    return FullModelBuilder(g, k, omega, budget).build()
