import logging
import time
from abc import ABC, abstractmethod
from typing import ClassVar

from sda_toolkit.anonymizers.state import AnonymizationState
from sda_toolkit.anonymizers.types import (
    AnonymizationResult,
    AnonymizerConfig,
    Algorithm,
    count_added_edges,
    count_split_vertices,
)
from sda_toolkit.graph import Graph, Vertex, check_k, is_k_structurally_diverse


class Anonymizer(ABC):
    """
    Greedy anonymization loop: repeatedly pick the next not-yet-anonymized vertex in degree order
    and let the concrete heuristic place it into a k-SDA group.
    """

    algorithm: ClassVar[Algorithm]
    closes_triangles: ClassVar[bool] = False

    def __init__(self, g: Graph, cfg: AnonymizerConfig) -> None:
        if cfg.algorithm is not self.algorithm:
            raise ValueError(f"{type(self).__name__} can't run {cfg.algorithm!r}")
        check_k(g, cfg.k)
        self.cfg = cfg
        self.input_vertices = len(g)
        self.input_edges = g.number_of_edges
        self.state = AnonymizationState(g.copy(), cfg, cfg.resolve_omega(g), self.closes_triangles)
        self.logger = logging.getLogger(f"{__name__}[{self.algorithm.value}]")

    @property
    def partners_descending(self) -> bool:
        return self.algorithm.descending

    @abstractmethod
    def anonymize_vertex(self, v: Vertex) -> bool:
        """Anonymizes v (or prepares the ground for it); False when the heuristic is stuck"""
        ...

    def run(self) -> AnonymizationResult:
        start_time = time.time()
        state = self.state
        self.logger.info(
            f"Anonymizing {state.graph!r} with k = {state.k}, omega = {state.omega}, seed = {self.cfg.seed}"
        )
        while (v := state.next_vertex(self.algorithm.descending)) is not None:
            if not self.anonymize_vertex(v):
                self.logger.info(f"Vertex {v} (degree {state.degree(v)}) can't be anonymized, giving up")
                return self._result(success=False)
        success = is_k_structurally_diverse(state.graph, state.k)
        if not success:
            self.logger.error("Anonymized graph failed the k-structural diversity check")
        result = self._result(success=success)
        self.logger.info(
            f"Done in {time.time() - start_time:.2f} sec: n_a = {result.n_a}, n_s = {result.n_s}, "
            f"{len(result.redirections)} redirections"
        )
        return result

    def _result(self, success: bool) -> AnonymizationResult:
        state = self.state
        return AnonymizationResult(
            graph=state.graph,
            k=state.k,
            algorithm=self.algorithm,
            omega=state.omega,
            n_a=count_added_edges(state.graph, state.splits),
            n_s=count_split_vertices(state.splits),
            success=success,
            input_vertices=self.input_vertices,
            input_edges=self.input_edges,
            splits=list(state.splits),
            redirections=list(state.redirections),
            operations=list(state.operations),
        )
