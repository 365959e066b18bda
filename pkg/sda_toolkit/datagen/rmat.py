import logging
import math
import random
from dataclasses import dataclass
from typing import Callable, TypeVar

import tenacity

from sda_toolkit.constants import defaults
from sda_toolkit.graph import Edge, Graph, edge_key

logger = logging.getLogger(__name__)


class RmatGenerationError(RuntimeError):
    pass


class _Rejected(Exception):
    pass


WrappedFuncT = TypeVar("WrappedFuncT", bound=Callable)


def resample_retry(max_attempts: int) -> Callable[[WrappedFuncT], WrappedFuncT]:
    return tenacity.retry(  # type: ignore
        stop=tenacity.stop.stop_after_attempt(max_attempts),
        retry=tenacity.retry_if_exception_type(_Rejected),
        after=tenacity.after.after_log(logger, log_level=logging.DEBUG),
    )


@dataclass(frozen=True)
class RmatParams:
    n: int
    m: int
    a: float = defaults.RMAT_A
    b: float = defaults.RMAT_B
    c: float = defaults.RMAT_C
    d: float = defaults.RMAT_D
    seed: int = 0
    max_attempts_per_edge: int = defaults.RMAT_MAX_ATTEMPTS_PER_EDGE

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"R-MAT needs at least 2 vertices, got n={self.n}")
        if self.m < 1:
            raise ValueError(f"R-MAT needs at least 1 edge, got m={self.m}")
        if self.m > self.n * (self.n - 1) // 2:
            raise ValueError(f"A simple graph on {self.n} vertices can't have {self.m} edges")
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ValueError("Quadrant probabilities must be non-negative")
        if not math.isclose(self.a + self.b + self.c + self.d, 1.0, rel_tol=0, abs_tol=1e-9):
            raise ValueError(f"Quadrant probabilities must sum to 1, got {self.a + self.b + self.c + self.d}")
        if self.max_attempts_per_edge < 1:
            raise ValueError("At least one attempt per edge is needed")


class RmatSampler:
    """Recursive quadrant descent over a 2^depth x 2^depth adjacency matrix"""

    def __init__(self, params: RmatParams) -> None:
        self.params = params
        self.rng = random.Random(params.seed)
        self.depth = max(1, math.ceil(math.log2(params.n)))
        self.thresholds = (params.a, params.a + params.b, params.a + params.b + params.c)
        self.edges: set[Edge] = set()

    def descend(self) -> Edge:
        u = v = 0
        for _ in range(self.depth):
            r = self.rng.random()
            row = 1 if r >= self.thresholds[1] else 0
            col = 1 if self.thresholds[0] <= r < self.thresholds[1] or r >= self.thresholds[2] else 0
            u = 2 * u + row
            v = 2 * v + col
        return u, v

    def sample_edge(self) -> Edge:
        u, v = self.descend()
        if u >= self.params.n or v >= self.params.n or u == v:
            raise _Rejected(f"({u}, {v}) is not a vertex pair")
        edge = edge_key(u, v)
        if edge in self.edges:
            raise _Rejected(f"{edge} already sampled")
        return edge

    def generate(self) -> list[Edge]:
        sample = resample_retry(self.params.max_attempts_per_edge)(self.sample_edge)
        while len(self.edges) < self.params.m:
            try:
                edge = sample()
            except tenacity.RetryError as exc:
                raise RmatGenerationError(
                    f"No new edge after {self.params.max_attempts_per_edge} attempts "
                    f"({len(self.edges)} of {self.params.m} edges sampled)"
                ) from exc
            self.edges.add(edge)
        return sorted(self.edges)


def generate_rmat(params: RmatParams) -> Graph:
    """
    Simple R-MAT graph with exactly `params.m` edges. Vertices left without edges are dropped and the
    rest renumbered in id order; every vertex is placed in community 0.
    """
    edges = RmatSampler(params).generate()
    used = sorted({v for edge in edges for v in edge})
    compact = {v: i for i, v in enumerate(used)}
    g = Graph.from_edges(
        [(compact[u], compact[v]) for u, v in edges],
        community={i: 0 for i in range(len(used))},
    )
    logger.info(f"Generated R-MAT graph: {len(g)} of {params.n} vertices kept, {g.number_of_edges} edges")
    return g
