"""Left-to-right sweeps coloring interval graphs with at most four colors.

Both sweeps follow the same shape: an uncolored vertex v_i takes color 1,
the neighbor v_l reaching furthest right takes 2 and, when v_l is not the
rightmost interval, the vertex v_l' reaching furthest right from v_l takes
3. Uncolored vertices in the covered window are then filled with 0.
Already colored vertices are never zero-filled.
"""

import logging
from itertools import combinations
from typing import Dict, Iterable, Optional

from apps.coloring.models import Coloring, Optimality, SolveOutcome, Variant
from apps.coloring.services import certify
from apps.core.exceptions import PreconditionError
from apps.graphs.models import Graph
from apps.graphs.services import is_connected

from .models import IntervalRepresentation, RepresentationVerdict

logger = logging.getLogger(__name__)


def intersection_graph(rep: IntervalRepresentation) -> Graph:
    edges = [
        (u, v)
        for u, v in combinations(range(rep.n), 2)
        if rep[u].intersects(rep[v])
    ]
    return Graph.from_edges(rep.n, edges)


def validate_representation(g: Graph, rep: IntervalRepresentation) -> RepresentationVerdict:
    """Distinct endpoints and exactly the edges of g"""
    if rep.n != g.n:
        return RepresentationVerdict(False, f"{rep.n} intervals for {g.n} vertices")

    owner = {}
    for v, interval in enumerate(rep.intervals):
        for endpoint in (interval.left, interval.right):
            if endpoint in owner:
                return RepresentationVerdict(
                    False, f"endpoint {endpoint} is shared by vertices {owner[endpoint]} and {v}",
                    (owner[endpoint], v),
                )
            owner[endpoint] = v

    for u, v in combinations(g.vertices, 2):
        overlap = rep[u].intersects(rep[v])
        if overlap != g.has_edge(u, v):
            state = 'overlap' if overlap else 'are disjoint'
            edge = 'no edge' if overlap else 'an edge'
            return RepresentationVerdict(False, f"intervals {u} and {v} {state} but the graph has {edge}", (u, v))
    return RepresentationVerdict(True)


class IntervalSweep:
    """State shared by the closed and open sweeps"""

    def __init__(self, g: Graph, rep: IntervalRepresentation):
        self.g = g
        self.rep = rep
        self.rightmost = rep.rightmost()
        self.colors: Dict[int, int] = {}

    def furthest_right(self, v: int) -> int:
        """Vertex of N[v] whose interval ends last"""
        return max(self.g.neighbors(v) + (v,), key=self.rep.right)

    def zero_fill(self, sources: Iterable[int], from_left, up_to_right=None) -> None:
        for source in sources:
            for w in self.g.neighbors(source):
                if w in self.colors or self.rep.left(w) < from_left:
                    continue
                if up_to_right is not None and self.rep.right(w) > up_to_right:
                    continue
                self.colors[w] = 0

    def chain(self, v_i: int) -> None:
        """Colors 1, 2 (and 3) along the furthest-right chain from v_i"""
        v_l = self.furthest_right(v_i)
        self.colors[v_i] = 1
        self.colors[v_l] = 2
        if v_l == self.rightmost:
            self.zero_fill((v_i, v_l), self.rep.left(v_i))
            return
        v_ll = self.furthest_right(v_l)
        self.colors[v_ll] = 3
        self.zero_fill((v_i, v_l, v_ll), self.rep.left(v_i), self.rep.right(v_ll))
        logger.debug(f"chain {v_i} -> {v_l} -> {v_ll}")

    def coloring(self) -> Coloring:
        return Coloring.from_mapping(self.g, self.colors)


def _check_input(g: Graph, rep: IntervalRepresentation, min_edges: int) -> None:
    verdict = validate_representation(g, rep)
    if not verdict:
        raise PreconditionError(str(verdict))
    if not is_connected(g):
        raise PreconditionError("interval sweep needs a connected graph")
    if g.m < min_edges:
        raise PreconditionError(f"interval sweep needs at least {min_edges} edge(s), graph has {g.m}")


def cfcn_interval(g: Graph, rep: IntervalRepresentation) -> SolveOutcome:
    _check_input(g, rep, min_edges=1)
    sweep = IntervalSweep(g, rep)
    for v_i in rep.sweep_order():
        if v_i in sweep.colors:
            continue
        if v_i == sweep.rightmost:
            sweep.colors[v_i] = 1
            sweep.zero_fill((v_i,), rep.left(v_i))
        else:
            sweep.chain(v_i)
    coloring = sweep.coloring()
    optimality = Optimality.EXACT if coloring.size == 2 else Optimality.UPPER_BOUND
    return certify(coloring, Variant.CLOSED, optimality, 'interval')


def _contained_neighbor(sweep: IntervalSweep, v_i: int) -> Optional[int]:
    """Neighbor starting after v_i with the smallest left endpoint"""
    inside = [w for w in sweep.g.neighbors(v_i) if sweep.rep.left(w) >= sweep.rep.left(v_i)]
    return min(inside, key=sweep.rep.left) if inside else None


def cfon_interval(g: Graph, rep: IntervalRepresentation) -> SolveOutcome:
    _check_input(g, rep, min_edges=2)
    sweep = IntervalSweep(g, rep)
    for v_i in rep.sweep_order():
        if v_i in sweep.colors:
            continue
        if v_i == sweep.rightmost:
            # v_i ends last, so a neighbor starting after it lies inside it.
            inner = _contained_neighbor(sweep, v_i)
            sweep.colors[v_i] = 1
            if inner is not None:
                if inner not in sweep.colors:
                    sweep.colors[inner] = 2
                sweep.zero_fill((v_i,), rep.left(v_i))
        else:
            sweep.chain(v_i)
    coloring = sweep.coloring()
    optimality = Optimality.EXACT if coloring.size <= 1 else Optimality.UPPER_BOUND
    return certify(coloring, Variant.OPEN, optimality, 'interval')


def solve_interval(g: Graph, rep: IntervalRepresentation, variant) -> SolveOutcome:
    if Variant.parse(variant) is Variant.CLOSED:
        return cfcn_interval(g, rep)
    return cfon_interval(g, rep)
