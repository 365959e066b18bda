from sda_toolkit.anonymizers.base import Anonymizer
from sda_toolkit.anonymizers.types import Algorithm
from sda_toolkit.graph import Vertex


class EdgeConnect(Anonymizer):
    """Adding Edge only, vertices in decreasing degree order; new edges close triangles where they can"""

    algorithm = Algorithm.EC
    closes_triangles = True

    def anonymize_vertex(self, v: Vertex) -> bool:
        plan = self.state.edge_plan(v, descending=True)
        if plan is None:
            return False
        self.logger.debug(f"{v}: {plan.kind} at degree {plan.target}, cost {plan.cost}")
        self.state.apply_plan(plan, self.partners_descending)
        return True


class InverseEdgeConnect(EdgeConnect):
    """EdgeConnect that raises degrees with the smallest-degree partners of the community"""

    algorithm = Algorithm.IEC
    closes_triangles = False

    @property
    def partners_descending(self) -> bool:
        return False


class CreateBySplit(EdgeConnect):
    algorithm = Algorithm.CBS

    def anonymize_vertex(self, v: Vertex) -> bool:
        state = self.state
        plan = state.edge_plan(v, descending=True)
        if plan is not None and plan.cost < state.omega:
            self.logger.debug(f"{v}: {plan.kind} at degree {plan.target}, cost {plan.cost}")
            state.apply_plan(plan, self.partners_descending)
            return True

        members = [v, *state.heads(v, state.k - 1, descending=True)]
        if len(members) < state.k:
            return False
        target = min(state.degree(u) for u in members)
        self.logger.debug(f"{v}: splitting {members} down to degree {target}")
        cohort = []
        for u in members:
            d_u = state.degree(u)
            if d_u == target:
                cohort.append(u)
                continue
            if target > 2:
                record = state.split(u, [target, d_u - target + 2], link_substitutes=True)
            else:
                record = state.split(u, [target, d_u - target], link_substitutes=False)
            cohort.append(record.substitutes[0])
        for u in cohort:
            state.settle(u, target)
        return True
