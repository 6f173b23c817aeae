from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from apps.coloring.models import Coloring
from apps.graphs.models import Edge, Graph


@dataclass(frozen=True)
class GadgetInstance:
    """Split graph H built from (G, k).

    G' is G plus two universal vertices x = n and y = n + 1. H has G' as its
    clique side and one independent vertex per edge of G', adjacent to that
    edge's two endpoints. Independent vertices are numbered from n + 2 in
    sorted edge order.
    """
    source: Graph
    k: int
    augmented: Graph
    graph: Graph
    edge_vertices: Tuple[Tuple[Edge, int], ...]

    @property
    def x(self) -> int:
        return self.source.n

    @property
    def y(self) -> int:
        return self.source.n + 1

    @property
    def clique_side(self) -> Tuple[int, ...]:
        return tuple(range(self.source.n + 2))

    @property
    def edge_vertex(self) -> Dict[Edge, int]:
        return dict(self.edge_vertices)

    @property
    def expected_order(self) -> int:
        """|V(G)| + 2 + |E(G)| + 2|V(G)| + 1"""
        n, m = self.source.n, self.source.m
        return n + 2 + m + 2 * n + 1


@dataclass(frozen=True)
class CrossValidation:
    """Both sides of: G is k-colorable iff H has a CF-ON (k+2)-coloring"""
    instance: GadgetInstance
    source_colorable: bool
    gadget_colorable: bool
    proper_witness: Optional[Coloring] = None
    gadget_witness: Optional[Coloring] = None
    decoded: Optional[Coloring] = None

    @property
    def agree(self) -> bool:
        return self.source_colorable == self.gadget_colorable
