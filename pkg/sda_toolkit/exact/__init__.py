from sda_toolkit.exact.encode import encode_result, identities, result_budget
from sda_toolkit.exact.lp import export_lp, write_lp
from sda_toolkit.exact.model import (
    AddEdgeModelBuilder,
    FullModelBuilder,
    IpModel,
    LinearRow,
    build_add_edge_model,
    build_full_model,
    candidate_pairs,
    default_substitute_budget,
)
from sda_toolkit.exact.oracle import (
    EnumerationBudgetExceeded,
    OracleResult,
    brute_force_add_edge_optimum,
)
from sda_toolkit.exact.solver import NodeLimitExceeded, Solution, solve_binary_program

__all__ = [
    "AddEdgeModelBuilder",
    "EnumerationBudgetExceeded",
    "FullModelBuilder",
    "IpModel",
    "LinearRow",
    "NodeLimitExceeded",
    "OracleResult",
    "Solution",
    "brute_force_add_edge_optimum",
    "build_add_edge_model",
    "build_full_model",
    "candidate_pairs",
    "default_substitute_budget",
    "encode_result",
    "export_lp",
    "identities",
    "result_budget",
    "solve_binary_program",
    "write_lp",
]
