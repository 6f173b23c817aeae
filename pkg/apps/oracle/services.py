"""Exhaustive backtracking oracle for conflict-free colorings.

Vertices are colored in id order. Vertex i may only take colors
0..(largest color on vertices < i) + 1, so every palette is a canonical
prefix 0..k-1 and the k! color permutations are never revisited.
A neighborhood constraint is checked incrementally:

* once its last vertex is colored it must contain a color exactly once;
* before that, it is already lost if every palette color occurs at
  least twice in it (no completion can bring any count back to one).
"""

import logging
from typing import List, Optional, Sequence, Tuple

from django.conf import settings

from apps.coloring.models import Coloring, Variant
from apps.coloring.services import neighborhood
from apps.core.exceptions import PreconditionError, SizeGuardError
from apps.graphs.models import Graph

from .models import OracleResult

logger = logging.getLogger(__name__)


def oracle_limit() -> int:
    return settings.CFCOLOR['ORACLE_LIMIT']


class ConstraintSearch:
    """Backtracking over colorings of vertices 0..n-1 with ≤ k colors such that
    every constraint set contains a uniquely colored vertex.

    Vertices outside every constraint are still colored (they take color 0
    under symmetry breaking unless forced otherwise).
    """

    def __init__(self, n: int, constraints: Sequence[Sequence[int]], k: int):
        self.n = n
        self.k = k
        self.constraints = [tuple(c) for c in constraints]
        self.member_of: List[List[int]] = [[] for _ in range(n)]
        for index, members in enumerate(self.constraints):
            for v in members:
                self.member_of[v].append(index)
        self.remaining = [len(c) for c in self.constraints]
        self.counts = [[0] * k for _ in self.constraints]
        self.ones = [0] * len(self.constraints)
        self.twice = [0] * len(self.constraints)
        self.colors = [-1] * n
        self.nodes = 0

    def _place(self, v: int, color: int) -> bool:
        """Color v and update constraints; False if some constraint is now dead"""
        self.colors[v] = color
        alive = True
        for index in self.member_of[v]:
            counts = self.counts[index]
            counts[color] += 1
            if counts[color] == 1:
                self.ones[index] += 1
            elif counts[color] == 2:
                self.ones[index] -= 1
                self.twice[index] += 1
            self.remaining[index] -= 1
            if self.twice[index] == self.k:
                alive = False
            elif self.remaining[index] == 0 and self.ones[index] == 0:
                alive = False
        return alive

    def _unplace(self, v: int) -> None:
        color = self.colors[v]
        for index in self.member_of[v]:
            counts = self.counts[index]
            if counts[color] == 1:
                self.ones[index] -= 1
            elif counts[color] == 2:
                self.ones[index] += 1
                self.twice[index] -= 1
            counts[color] -= 1
            self.remaining[index] += 1
        self.colors[v] = -1

    def _extend(self, v: int, highest: int) -> bool:
        if v == self.n:
            return True
        self.nodes += 1
        for color in range(min(highest + 2, self.k)):
            if self._place(v, color) and self._extend(v + 1, max(highest, color)):
                return True
            self._unplace(v)
        return False

    def run(self) -> Optional[Tuple[int, ...]]:
        if self.n == 0:
            return ()
        if any(not c for c in self.constraints):
            return None
        if self._extend(0, -1):
            return tuple(self.colors)
        return None


def _guard(g: Graph, limit: Optional[int]) -> None:
    limit = oracle_limit() if limit is None else limit
    if g.n > limit:
        raise SizeGuardError(g.n, limit)


def _constraints(g: Graph, variant: Variant):
    return [neighborhood(g, v, variant) for v in g.vertices]


def decide_cf(g: Graph, variant, k: int, limit: Optional[int] = None) -> Tuple[bool, Optional[Coloring]]:
    """Is there a CF coloring of g with at most k distinct colors?"""
    variant = Variant.parse(variant)
    if k < 1:
        raise PreconditionError(f"k must be at least 1, got {k}")
    _guard(g, limit)
    search = ConstraintSearch(g.n, _constraints(g, variant), k)
    found = search.run()
    logger.debug(f"decide_cf(n={g.n}, {variant.value}, k={k}): {found is not None} after {search.nodes} nodes")
    if found is None:
        return False, None
    return True, Coloring(g, found)


def exact_cf(g: Graph, variant, max_k: Optional[int] = None, limit: Optional[int] = None) -> OracleResult:
    """Minimum number of colors of a CF-CN / CF-ON coloring, with a witness"""
    variant = Variant.parse(variant)
    _guard(g, limit)

    if variant is Variant.OPEN and g.isolated_vertices():
        logger.info(f"CF-ON is infeasible: vertex {g.isolated_vertices()[0]} is isolated")
        return OracleResult(variant=variant, chromatic=None, witness=None, infeasible=True)
    if g.n == 0:
        return OracleResult(variant=variant, chromatic=0, witness=Coloring(g, ()))

    max_k = g.n if max_k is None else max_k
    constraints = _constraints(g, variant)
    explored = 0
    for k in range(1, max_k + 1):
        search = ConstraintSearch(g.n, constraints, k)
        found = search.run()
        explored += search.nodes
        if found is not None:
            logger.debug(f"exact_cf(n={g.n}, {variant.value}) = {k} after {explored} nodes")
            return OracleResult(
                variant=variant,
                chromatic=k,
                witness=Coloring(g, found),
                nodes_explored=explored,
            )
    return OracleResult(variant=variant, chromatic=None, witness=None, nodes_explored=explored)
