import logging
from dataclasses import dataclass, field

from sda_toolkit.constants.defaults import SOLVER_NODE_LIMIT
from sda_toolkit.exact.model import IpModel

logger = logging.getLogger(__name__)


class NodeLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Solution:
    feasible: bool
    objective: int | None = None
    assignment: dict[str, int] = field(default_factory=dict)
    nodes: int = 0


class _Row:
    __slots__ = ("coefs", "vars", "relation", "rhs", "fixed", "min_free", "max_free")

    def __init__(self, coefs: list[int], variables: list[int], relation: str, rhs: int) -> None:
        self.coefs = coefs
        self.vars = variables
        self.relation = relation
        self.rhs = rhs
        self.fixed = 0
        self.min_free = sum(c for c in coefs if c < 0)
        self.max_free = sum(c for c in coefs if c > 0)

    def feasible(self) -> bool:
        if self.relation in ("<=", "=") and self.fixed + self.min_free > self.rhs:
            return False
        if self.relation in (">=", "=") and self.fixed + self.max_free < self.rhs:
            return False
        return True

    def forced(self, values: list[int | None]) -> list[tuple[int, int]]:
        """Free variables whose value follows from the row bounds"""
        implied = []
        low = self.fixed + self.min_free
        high = self.fixed + self.max_free
        for coef, var in zip(self.coefs, self.vars):
            if values[var] is not None or coef == 0:
                continue
            if self.relation in ("<=", "="):
                if coef > 0 and low + coef > self.rhs:
                    implied.append((var, 0))
                elif coef < 0 and low - coef > self.rhs:
                    implied.append((var, 1))
            if self.relation in (">=", "="):
                if coef > 0 and high - coef < self.rhs:
                    implied.append((var, 1))
                elif coef < 0 and high + coef < self.rhs:
                    implied.append((var, 0))
        return implied


class BranchAndBound:
    """
    Exact minimization of a binary program by depth-first branch and bound.

    Rows keep the activity of fixed variables plus the extreme contributions of free ones, which gives
    both the feasibility test and the implied values propagated after every branching decision.
    """

    def __init__(self, model: IpModel, node_limit: int = SOLVER_NODE_LIMIT) -> None:
        self.model = model
        self.node_limit = node_limit
        self.index = {name: i for i, name in enumerate(model.variables)}
        n = len(model.variables)
        self.cost = [0] * n
        for coef, var in model.objective:
            self.cost[self.index[var]] += coef
        self.rows: list[_Row] = []
        self.rows_of: list[list[int]] = [[] for _ in range(n)]
        for constraint in model.rows():
            row = _Row(
                [coef for coef, _ in constraint.terms],
                [self.index[var] for _, var in constraint.terms],
                constraint.relation,
                constraint.rhs,
            )
            for var in set(row.vars):
                self.rows_of[var].append(len(self.rows))
            self.rows.append(row)
        self.values: list[int | None] = [None] * n
        self.trail: list[int] = []
        self.objective_fixed = 0
        self.objective_free_min = sum(c for c in self.cost if c < 0)
        self.best: int | None = None
        self.best_values: list[int | None] = []
        self.nodes = 0

    def _assign(self, var: int, value: int) -> bool:
        self.values[var] = value
        self.trail.append(var)
        cost = self.cost[var]
        if cost < 0:
            self.objective_free_min -= cost
        self.objective_fixed += cost * value
        ok = True
        for r in self.rows_of[var]:
            row = self.rows[r]
            for coef, v in zip(row.coefs, row.vars):
                if v != var:
                    continue
                if coef < 0:
                    row.min_free -= coef
                else:
                    row.max_free -= coef
                row.fixed += coef * value
            if not row.feasible():
                ok = False
        return ok

    def _unassign_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            var = self.trail.pop()
            value = self.values[var]
            assert value is not None
            cost = self.cost[var]
            if cost < 0:
                self.objective_free_min += cost
            self.objective_fixed -= cost * value
            for r in self.rows_of[var]:
                row = self.rows[r]
                for coef, v in zip(row.coefs, row.vars):
                    if v != var:
                        continue
                    if coef < 0:
                        row.min_free += coef
                    else:
                        row.max_free += coef
                    row.fixed -= coef * value
            self.values[var] = None

    def _propagate(self, var: int, value: int) -> bool:
        pending = [(var, value)]
        while pending:
            v, val = pending.pop()
            current = self.values[v]
            if current is not None:
                if current != val:
                    return False
                continue
            if not self._assign(v, val):
                return False
            for r in self.rows_of[v]:
                pending.extend(self.rows[r].forced(self.values))
        return True

    def _bound(self) -> int:
        return self.objective_fixed + self.objective_free_min

    def _search(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise NodeLimitExceeded(f"Branch and bound exceeded {self.node_limit} nodes on {self.model.name!r}")
        if self.best is not None and self._bound() >= self.best:
            return
        free = next((i for i, value in enumerate(self.values) if value is None), None)
        if free is None:
            self.best = self.objective_fixed
            self.best_values = list(self.values)
            return
        for value in (0, 1) if self.cost[free] >= 0 else (1, 0):
            mark = len(self.trail)
            if self._propagate(free, value):
                self._search()
            self._unassign_to(mark)

    def solve(self) -> Solution:
        if all(row.feasible() for row in self.rows):
            self._search()
        if self.best is None:
            logger.info(f"{self.model.name}: infeasible ({self.nodes} nodes)")
            return Solution(feasible=False, nodes=self.nodes)
        objective = self.best + self.model.objective_offset
        logger.info(f"{self.model.name}: optimum {objective} ({self.nodes} nodes)")
        assignment = {name: int(self.best_values[i] or 0) for name, i in self.index.items()}
        return Solution(feasible=True, objective=objective, assignment=assignment, nodes=self.nodes)


def solve_binary_program(model: IpModel, node_limit: int = SOLVER_NODE_LIMIT) -> Solution:
    return BranchAndBound(model, node_limit).solve()
