"""Recognizers for the graph classes the solvers dispatch on, modular
decomposition, and exhaustive branching search for modulators.
"""

import logging
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from apps.core.exceptions import PreconditionError
from apps.graphs.models import Graph
from apps.graphs.services import connected_components, delete_vertices

from .models import (
    DecompositionNode,
    GraphClass,
    Modulator,
    NodeKind,
    Recognition,
    ResidualClass,
    SplitPartition,
)

logger = logging.getLogger(__name__)

ISOLATED = 'isolated'
UNIVERSAL = 'universal'


# ---------------------------------------------------------------------------
# Single-class recognizers, each returning a certificate or None
# ---------------------------------------------------------------------------

def bipartition(g: Graph) -> Optional[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """Sides (A, B) with the smallest vertex of every component on side A"""
    nx_graph = g.to_networkx()
    if not nx.is_bipartite(nx_graph):
        return None
    sides = nx.bipartite.color(nx_graph)
    side_a, side_b = set(), set()
    for component in connected_components(g):
        flip = sides[min(component)]
        for v in component:
            (side_a if sides[v] == flip else side_b).add(v)
    return frozenset(side_a), frozenset(side_b)


def cluster_cliques(g: Graph) -> Optional[Tuple[FrozenSet[int], ...]]:
    """Components of g if every one of them is a clique"""
    components = connected_components(g)
    for component in components:
        size = len(component)
        inner = g.adjacency[np.ix_(sorted(component), sorted(component))].sum() // 2
        if inner != size * (size - 1) // 2:
            return None
    return tuple(components)


def split_partition(g: Graph) -> Optional[SplitPartition]:
    """Degree-sequence split test; C is a maximum clique.

    With degrees d_1 ≥ … ≥ d_n and m = max{i : d_i ≥ i - 1}, g is split iff
    sum_{i≤m} d_i = m(m-1) + sum_{i>m} d_i, and then the top m vertices form
    a clique and the rest an independent set.
    """
    if g.n == 0:
        return SplitPartition(clique=frozenset(), independent=frozenset())
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    degrees = [g.degree(v) for v in order]
    m = max(i for i in range(1, g.n + 1) if degrees[i - 1] >= i - 1)
    if sum(degrees[:m]) != m * (m - 1) + sum(degrees[m:]):
        return None

    clique = set(order[:m])
    independent = set(order[m:])
    # An independent vertex adjacent to the whole clique extends it.
    for v in sorted(independent):
        if all(g.has_edge(v, c) for c in clique):
            clique.add(v)
            independent.discard(v)
            break
    partition = SplitPartition(clique=frozenset(clique), independent=frozenset(independent))
    if not partition.is_valid_for(g):
        raise PreconditionError(f"degree test accepted {g} but the partition {partition} is not split")
    return partition


def alternative_split_partitions(g: Graph, p: SplitPartition) -> List[SplitPartition]:
    """p itself followed by every valid partition one move or one swap away"""
    candidates = [p]
    for v in sorted(p.independent):
        candidates.append(SplitPartition(p.clique | {v}, p.independent - {v}))
    for v in sorted(p.clique):
        candidates.append(SplitPartition(p.clique - {v}, p.independent | {v}))
    for c in sorted(p.clique):
        for i in sorted(p.independent):
            candidates.append(SplitPartition((p.clique - {c}) | {i}, (p.independent - {i}) | {c}))

    seen, valid = set(), []
    for candidate in candidates:
        if candidate not in seen and candidate.is_valid_for(g):
            seen.add(candidate)
            valid.append(candidate)
    return valid


def threshold_elimination(g: Graph) -> Optional[Tuple[Tuple[int, str], ...]]:
    """Repeatedly strip the smallest isolated or universal vertex.

    The order of removals (read backwards) is a construction sequence.
    """
    alive = np.ones(g.n, dtype=bool)
    order = []
    for _ in range(g.n):
        remaining = int(alive.sum())
        inner = g.adjacency[:, alive].sum(axis=1)
        for v in np.flatnonzero(alive):
            v = int(v)
            if inner[v] == 0:
                order.append((v, ISOLATED))
                break
            if inner[v] == remaining - 1:
                order.append((v, UNIVERSAL))
                break
        else:
            return None
        alive[order[-1][0]] = False
    return tuple(order)


def rebuild_from_elimination(n: int, order: Iterable[Tuple[int, str]]) -> Graph:
    """Replay an elimination order backwards as isolated/universal additions"""
    present: List[int] = []
    edges = []
    for v, kind in reversed(tuple(order)):
        if kind == UNIVERSAL:
            edges.extend((v, u) for u in present)
        elif kind != ISOLATED:
            raise PreconditionError(f"unknown elimination step {kind!r}")
        present.append(v)
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# Modular decomposition
# ---------------------------------------------------------------------------

def _components_within(graph: nx.Graph, members: FrozenSet[int]) -> List[FrozenSet[int]]:
    return sorted((frozenset(c) for c in nx.connected_components(graph.subgraph(members))), key=min)


def _module_closure(g: Graph, members: FrozenSet[int], seed: Set[int]) -> FrozenSet[int]:
    """Smallest module of G[members] containing seed"""
    module = set(seed)
    while True:
        outside = sorted(members - module)
        if not outside:
            return frozenset(module)
        hits = g.adjacency[np.ix_(outside, sorted(module))].sum(axis=1)
        splitters = [v for v, count in zip(outside, hits) if 0 < count < len(module)]
        if not splitters:
            return frozenset(module)
        module.update(splitters)


def _maximal_modules(g: Graph, members: FrozenSet[int]) -> List[FrozenSet[int]]:
    groups: List[FrozenSet[int]] = []
    assigned: Set[int] = set()
    for u in sorted(members):
        if u in assigned:
            continue
        group = {u}
        for v in sorted(members - assigned - {u}):
            if _module_closure(g, members, {u, v}) != members:
                group.add(v)
        assigned |= group
        groups.append(frozenset(group))
    return groups


def _decompose(g: Graph, graph: nx.Graph, co_graph: nx.Graph, members: FrozenSet[int]) -> DecompositionNode:
    if len(members) == 1:
        return DecompositionNode(kind=NodeKind.LEAF, members=members)

    parts = _components_within(graph, members)
    if len(parts) > 1:
        kind = NodeKind.PARALLEL
    else:
        parts = _components_within(co_graph, members)
        if len(parts) > 1:
            kind = NodeKind.SERIES
        else:
            kind = NodeKind.PRIME
            parts = _maximal_modules(g, members)

    children = tuple(_decompose(g, graph, co_graph, part) for part in parts)
    return DecompositionNode(kind=kind, members=members, children=children)


def modular_decomposition(g: Graph) -> Optional[DecompositionNode]:
    """Modular decomposition tree; None for the empty graph"""
    if g.n == 0:
        return None
    graph = g.to_networkx()
    tree = _decompose(g, graph, nx.complement(graph), frozenset(g.vertices))
    logger.debug(f"modular decomposition of {g}: root {tree.kind.value}, prime={tree.has_prime}")
    return tree


def is_cograph(g: Graph) -> bool:
    tree = modular_decomposition(g)
    return tree is None or not tree.has_prime


# ---------------------------------------------------------------------------
# recognize
# ---------------------------------------------------------------------------

def recognize(g: Graph) -> Recognition:
    labels = set()
    sides = bipartition(g)
    if sides is not None:
        labels.add(GraphClass.BIPARTITE)
    cliques = cluster_cliques(g)
    if cliques is not None:
        labels.add(GraphClass.CLUSTER)
    split = split_partition(g)
    if split is not None:
        labels.add(GraphClass.SPLIT)
    order = threshold_elimination(g)
    if order is not None:
        labels.add(GraphClass.THRESHOLD)
    tree = modular_decomposition(g)
    if tree is None or not tree.has_prime:
        labels.add(GraphClass.COGRAPH)
    if not labels:
        labels.add(GraphClass.GENERAL)

    logger.info(f"{g} recognized as {sorted(label.value for label in labels)}")
    return Recognition(
        labels=frozenset(labels),
        bipartition=sides,
        cliques=cliques,
        split=split,
        threshold_order=order,
        decomposition=tree if GraphClass.COGRAPH in labels else None,
    )


# ---------------------------------------------------------------------------
# Modulators
# ---------------------------------------------------------------------------

Obstruction = Optional[Tuple[int, ...]]


def find_induced_p3(g: Graph, alive: FrozenSet[int]) -> Obstruction:
    """First vertex triple (lexicographic) inducing exactly two edges"""
    for triple in combinations(sorted(alive), 3):
        a, b, c = triple
        if g.has_edge(a, b) + g.has_edge(a, c) + g.has_edge(b, c) == 2:
            return triple
    return None


def _degree_profile(g: Graph, quad: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(sorted(sum(g.has_edge(u, v) for v in quad if v != u) for u in quad))


THRESHOLD_OBSTRUCTIONS = {
    (1, 1, 2, 2),  # P4
    (2, 2, 2, 2),  # C4
    (1, 1, 1, 1),  # 2K2
}


def find_threshold_obstruction(g: Graph, alive: FrozenSet[int]) -> Obstruction:
    """First vertex quadruple (lexicographic) inducing P4, C4 or 2K2"""
    for quad in combinations(sorted(alive), 4):
        if _degree_profile(g, quad) in THRESHOLD_OBSTRUCTIONS:
            return quad
    return None


OBSTRUCTION_FINDERS: Dict[ResidualClass, Callable[[Graph, FrozenSet[int]], Obstruction]] = {
    ResidualClass.CLUSTER: find_induced_p3,
    ResidualClass.THRESHOLD: find_threshold_obstruction,
}


def _solutions(g: Graph, alive: FrozenSet[int], budget: int, finder) -> List[FrozenSet[int]]:
    """Every deletion set found by the branching tree within the budget"""
    obstruction = finder(g, alive)
    if obstruction is None:
        return [frozenset()]
    if budget == 0:
        return []
    found = []
    for v in obstruction:
        for rest in _solutions(g, alive - {v}, budget - 1, finder):
            found.append(rest | {v})
    return found


def find_modulator(g: Graph, residual_class, budget: int) -> Optional[Modulator]:
    """Smallest modulator of size ≤ budget, lexicographically least among ties.

    Budgets are tried in increasing order, so the first hit is minimum and
    None is a proof that no modulator within the budget exists.
    """
    residual_class = ResidualClass(residual_class)
    if budget < 0:
        raise PreconditionError(f"budget must be non-negative, got {budget}")
    finder = OBSTRUCTION_FINDERS[residual_class]
    everything = frozenset(g.vertices)
    for size in range(budget + 1):
        found = _solutions(g, everything, size, finder)
        if found:
            best = min(found, key=lambda s: (len(s), sorted(s)))
            logger.debug(f"{residual_class.value} modulator of size {len(best)}: {sorted(best)}")
            return Modulator(deleted=best, residual_class=residual_class)
    logger.info(f"no {residual_class.value} modulator within budget {budget}")
    return None


def cluster_modulator(g: Graph, budget: int) -> Optional[Modulator]:
    return find_modulator(g, ResidualClass.CLUSTER, budget)


def threshold_modulator(g: Graph, budget: int) -> Optional[Modulator]:
    return find_modulator(g, ResidualClass.THRESHOLD, budget)


def check_modulator(g: Graph, modulator: Modulator) -> None:
    """Raise unless deleting the modulator leaves the declared class"""
    for v in modulator.deleted:
        g.check_vertex(v)
    residual, _ = delete_vertices(g, modulator.deleted)
    if modulator.residual_class is ResidualClass.CLUSTER:
        holds = cluster_cliques(residual) is not None
    else:
        holds = threshold_elimination(residual) is not None
    if not holds:
        raise PreconditionError(
            f"G minus {sorted(modulator.deleted)} is not a {modulator.residual_class.value} graph"
        )
