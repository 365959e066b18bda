from collections import defaultdict
from typing import Callable

from sda_toolkit.anonymizers.types import AnonymizationResult
from sda_toolkit.exact.model import FullModelBuilder, IpModel
from sda_toolkit.graph import Graph, Vertex, resolve_origins


def identities(result: AnonymizationResult) -> dict[Vertex, list[Vertex]]:
    """Output vertices standing for each input vertex, ascending"""
    origins = resolve_origins(result.splits)
    images: dict[Vertex, list[Vertex]] = defaultdict(list)
    for v in result.graph.vertices:
        images[origins.get(v, v)].append(v)
    return dict(images)


def result_budget(g: Graph, result: AnonymizationResult) -> Callable[[Vertex], int]:
    """Smallest substitute budget able to represent the result"""
    images = identities(result)
    return lambda v: len(images.get(v, [v]))


def encode_result(
    g: Graph, result: AnonymizationResult, budget: Callable[[Vertex], int] | None = None
) -> tuple[IpModel, dict[str, int]]:
    """
    Builds the full model of the input graph and the variable assignment describing `result`, so that
    `model.evaluate(assignment)` is the heuristic's cost and `model.violated(assignment)` lists what
    the result breaks.
    """
    builder = FullModelBuilder(g, result.k, result.omega, budget or result_budget(g, result))
    model = builder.build()
    images = identities(result)
    slot: dict[Vertex, tuple[Vertex, int]] = {}
    for origin, vertices in images.items():
        if origin not in builder.substitutes:
            raise ValueError(f"Output vertex {vertices[0]} has no input identity")
        if len(vertices) > builder.substitutes[origin]:
            raise ValueError(
                f"{origin} has {len(vertices)} substitutes, the model allows {builder.substitutes[origin]}"
            )
        for i, v in enumerate(vertices):
            slot[v] = (origin, i)

    out = result.graph
    assignment = {var: 0 for var in model.variables}
    for origin, vertices in images.items():
        for i, v in enumerate(vertices):
            assignment[builder.pi(origin, i)] = 1
            assignment[builder.delta(origin, i, out.degree(v))] = 1
        for i in range(len(vertices), builder.substitutes[origin]):
            assignment[builder.delta(origin, i, 0)] = 1
    for v in out.vertices:
        assignment[builder.theta(out.community(v), out.degree(v))] = 1
    for x, y in out.edges():
        (a, i), (b, j) = sorted((slot[x], slot[y]))
        if a == b:
            var = builder.beta(a, min(i, j), max(i, j))
        elif g.has_edge(a, b):
            var = builder.eta(a, b, i, j)
        else:
            var = builder.alpha(a, b, i, j)
        assignment[var] = 1
    return model, assignment
