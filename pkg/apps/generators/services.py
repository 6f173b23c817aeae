"""Seeded random instances per graph class and exhaustive small-graph streams.

All randomness goes through one ``numpy.random.Generator`` created from the
spec's seed, so an identical GenSpec reproduces an identical instance.
"""

import itertools
import logging
import math
from collections import defaultdict
from dataclasses import replace
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np

from apps.classes.models import GraphClass, Modulator, ResidualClass, SplitPartition
from apps.classes.services import (
    ISOLATED,
    UNIVERSAL,
    bipartition,
    check_modulator,
    cluster_cliques,
    is_cograph,
    rebuild_from_elimination,
    split_partition,
    threshold_elimination,
)
from apps.core.exceptions import PreconditionError, SolverDefectError
from apps.graphs.models import Edge, Graph
from apps.graphs.services import is_connected
from apps.interval.models import IntervalRepresentation
from apps.interval.services import intersection_graph, validate_representation

from .models import GenClass, GeneratedInstance, GenSpec

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 1000
ATLAS_MAX_N = 7

Draw = Dict[str, object]


def _check_knobs(spec: GenSpec) -> None:
    if spec.n < 1:
        raise PreconditionError(f"n must be at least 1, got {spec.n}")
    if not 0.0 <= spec.p <= 1.0:
        raise PreconditionError(f"edge probability must lie in [0, 1], got {spec.p}")
    if spec.d < 0 or spec.d > spec.n:
        raise PreconditionError(f"modulator size {spec.d} outside 0..{spec.n}")
    if any(size < 1 for size in spec.clique_sizes):
        raise PreconditionError("clique sizes must be positive")

    cls = spec.graph_class
    if cls in (GenClass.CLUSTER, GenClass.CLUSTER_MODULATOR) and spec.clique_sizes:
        residual = spec.n - (spec.d if cls is GenClass.CLUSTER_MODULATOR else 0)
        if sum(spec.clique_sizes) != residual:
            raise PreconditionError(f"clique sizes {list(spec.clique_sizes)} do not add up to {residual}")
    if cls is GenClass.CLUSTER and spec.connected and len(spec.clique_sizes) > 1:
        raise PreconditionError("a connected cluster graph is a single clique")
    if cls is GenClass.SPLIT and (len(spec.clique_sizes) > 1 or sum(spec.clique_sizes) > spec.n):
        raise PreconditionError("split instances take at most one clique size, no larger than n")
    if cls is GenClass.BIPARTITE and spec.connected and spec.n > 1 and spec.p == 0.0:
        raise PreconditionError("a connected bipartite graph needs a positive edge probability")


def _random_sizes(rng: np.random.Generator, total: int) -> Tuple[int, ...]:
    cap = max(2, round(math.sqrt(total)) + 1)
    sizes = []
    while total > 0:
        size = int(rng.integers(1, min(total, cap) + 1))
        sizes.append(size)
        total -= size
    return tuple(sizes)


def _cliques(sizes, offset: int = 0) -> Tuple[List[Edge], Tuple[frozenset, ...]]:
    edges, groups, start = [], [], offset
    for size in sizes:
        members = range(start, start + size)
        edges.extend(itertools.combinations(members, 2))
        groups.append(frozenset(members))
        start += size
    return edges, tuple(groups)


def _creation_sequence(rng: np.random.Generator, n: int, p: float) -> Tuple[List[Edge], Tuple[Tuple[int, str], ...]]:
    """Vertex v arrives isolated or universal to 0..v-1"""
    steps = tuple((v, UNIVERSAL if v > 0 and rng.random() < p else ISOLATED) for v in range(n))
    return list(rebuild_from_elimination(n, reversed(steps)).edges), steps


def _attach_modulator(rng: np.random.Generator, n: int, d: int, p: float) -> List[Edge]:
    """Random edges from X = {n-d..n-1} to everything, including inside X"""
    edges = []
    for x in range(n - d, n):
        for u in range(x):
            if rng.random() < p:
                edges.append((u, x))
    return edges


def _cotree_edges(rng: np.random.Generator, members: List[int], p: float) -> List[Edge]:
    if len(members) == 1:
        return []
    cut = int(rng.integers(1, len(members)))
    left, right = members[:cut], members[cut:]
    edges = _cotree_edges(rng, left, p) + _cotree_edges(rng, right, p)
    if rng.random() < p:
        edges.extend(itertools.product(left, right))
    return edges


def _draw_cluster(spec: GenSpec, rng: np.random.Generator) -> Draw:
    if spec.clique_sizes:
        sizes = spec.clique_sizes
    elif spec.connected:
        sizes = (spec.n,)
    else:
        sizes = _random_sizes(rng, spec.n)
    edges, groups = _cliques(sizes)
    return {'graph': Graph.from_edges(spec.n, edges), 'cliques': groups}


def _draw_interval(spec: GenSpec, rng: np.random.Generator) -> Draw:
    endpoints = rng.choice(4 * spec.n, size=2 * spec.n, replace=False)
    pairs = [tuple(sorted(int(e) for e in endpoints[2 * v:2 * v + 2])) for v in range(spec.n)]
    rep = IntervalRepresentation.from_pairs(pairs)
    return {'graph': intersection_graph(rep), 'representation': rep}


def _draw_threshold(spec: GenSpec, rng: np.random.Generator) -> Draw:
    edges, steps = _creation_sequence(rng, spec.n, spec.p)
    return {'graph': Graph.from_edges(spec.n, edges), 'creation': steps}


def _draw_split(spec: GenSpec, rng: np.random.Generator) -> Draw:
    size = spec.clique_sizes[0] if spec.clique_sizes else int(rng.integers(1, spec.n + 1))
    edges, _ = _cliques([size])
    for v in range(size, spec.n):
        edges.extend((u, v) for u in range(size) if rng.random() < spec.p)
    partition = SplitPartition(frozenset(range(size)), frozenset(range(size, spec.n)))
    return {'graph': Graph.from_edges(spec.n, edges), 'partition': partition}


def _draw_cograph(spec: GenSpec, rng: np.random.Generator) -> Draw:
    order = [int(v) for v in rng.permutation(spec.n)]
    return {'graph': Graph.from_edges(spec.n, _cotree_edges(rng, order, spec.p))}


def _draw_bipartite(spec: GenSpec, rng: np.random.Generator) -> Draw:
    a = int(rng.integers(1, spec.n)) if spec.n > 1 else 1
    edges = [(u, v) for u in range(a) for v in range(a, spec.n) if rng.random() < spec.p]
    sides = (frozenset(range(a)), frozenset(range(a, spec.n)))
    return {'graph': Graph.from_edges(spec.n, edges), 'sides': sides}


def _draw_cluster_modulator(spec: GenSpec, rng: np.random.Generator) -> Draw:
    residual = spec.n - spec.d
    sizes = spec.clique_sizes or _random_sizes(rng, residual)
    edges, groups = _cliques(sizes)
    edges += _attach_modulator(rng, spec.n, spec.d, spec.p)
    modulator = Modulator(frozenset(range(residual, spec.n)), ResidualClass.CLUSTER)
    return {'graph': Graph.from_edges(spec.n, edges), 'cliques': groups, 'modulator': modulator}


def _draw_threshold_modulator(spec: GenSpec, rng: np.random.Generator) -> Draw:
    residual = spec.n - spec.d
    edges, steps = _creation_sequence(rng, residual, spec.p)
    edges += _attach_modulator(rng, spec.n, spec.d, spec.p)
    modulator = Modulator(frozenset(range(residual, spec.n)), ResidualClass.THRESHOLD)
    return {'graph': Graph.from_edges(spec.n, edges), 'creation': steps, 'modulator': modulator}


DRAWERS: Dict[GenClass, Callable[[GenSpec, np.random.Generator], Draw]] = {
    GenClass.CLUSTER: _draw_cluster,
    GenClass.INTERVAL: _draw_interval,
    GenClass.THRESHOLD: _draw_threshold,
    GenClass.SPLIT: _draw_split,
    GenClass.COGRAPH: _draw_cograph,
    GenClass.BIPARTITE: _draw_bipartite,
    GenClass.CLUSTER_MODULATOR: _draw_cluster_modulator,
    GenClass.THRESHOLD_MODULATOR: _draw_threshold_modulator,
}


def _certify(instance: GeneratedInstance) -> None:
    """Re-check the certificate against the matching recognizer or validator"""
    g = instance.graph
    cls = instance.spec.graph_class
    if cls is GenClass.CLUSTER:
        ok = cluster_cliques(g) is not None
    elif cls is GenClass.INTERVAL:
        ok = bool(validate_representation(g, instance.representation))
    elif cls is GenClass.THRESHOLD:
        ok = threshold_elimination(g) is not None
    elif cls is GenClass.SPLIT:
        ok = instance.partition.is_valid_for(g)
    elif cls is GenClass.COGRAPH:
        ok = is_cograph(g)
    elif cls is GenClass.BIPARTITE:
        ok = bipartition(g) is not None
    else:
        check_modulator(g, instance.modulator)
        ok = True
    if not ok:
        raise SolverDefectError(f"generated {cls.value} instance fails its recognizer")


def gen(spec: GenSpec) -> GeneratedInstance:
    _check_knobs(spec)
    rng = np.random.default_rng(spec.seed)
    draw = DRAWERS[spec.graph_class]
    must_connect = spec.connected or spec.graph_class is GenClass.INTERVAL

    for attempt in range(1, MAX_ATTEMPTS + 1):
        fields = draw(spec, rng)
        if must_connect and not is_connected(fields['graph']):
            continue
        instance = GeneratedInstance(spec=spec, attempts=attempt, **fields)
        _certify(instance)
        logger.debug(f"generated {spec.graph_class.value} {instance.graph} (seed {spec.seed}, attempt {attempt})")
        return instance

    raise PreconditionError(
        f"no connected {spec.graph_class.value} instance after {MAX_ATTEMPTS} draws; raise p or drop --connected"
    )


def gen_many(spec: GenSpec, count: int) -> Iterator[GeneratedInstance]:
    """``count`` instances with seeds spec.seed, spec.seed + 1, ..."""
    for offset in range(count):
        yield gen(replace(spec, seed=spec.seed + offset))


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------

CLASS_FILTERS: Dict[GraphClass, Callable[[Graph], bool]] = {
    GraphClass.BIPARTITE: lambda g: bipartition(g) is not None,
    GraphClass.CLUSTER: lambda g: cluster_cliques(g) is not None,
    GraphClass.SPLIT: lambda g: split_partition(g) is not None,
    GraphClass.THRESHOLD: lambda g: threshold_elimination(g) is not None,
    GraphClass.COGRAPH: is_cograph,
    GraphClass.GENERAL: lambda g: True,
}


def _class_filter(graph_class) -> Callable[[Graph], bool]:
    if graph_class is None:
        return CLASS_FILTERS[GraphClass.GENERAL]
    if not isinstance(graph_class, GraphClass):
        graph_class = GraphClass(graph_class)
    if graph_class not in CLASS_FILTERS:
        raise PreconditionError(f"cannot enumerate by class {graph_class.value}")
    return CLASS_FILTERS[graph_class]


def enumerate_small(n: int, graph_class=None, smallest: Optional[int] = None) -> Iterator[Graph]:
    """Connected graphs on ``smallest``..``n`` vertices, one per isomorphism class.

    ``smallest`` defaults to ``n``. Graphs come from the networkx atlas, which
    lists every graph up to seven vertices exactly once.
    """
    if n > ATLAS_MAX_N:
        raise PreconditionError(f"exhaustive enumeration stops at {ATLAS_MAX_N} vertices, got {n}")
    smallest = n if smallest is None else smallest
    keep = _class_filter(graph_class)
    for nx_graph in nx.graph_atlas_g():
        order = nx_graph.number_of_nodes()
        if order < max(smallest, 1) or order > n or not nx.is_connected(nx_graph):
            continue
        g = Graph.from_networkx(nx_graph)
        if keep(g):
            yield g


def enumerate_split(n: int, connected: bool = True, distinct: bool = True) -> Iterator[Tuple[Graph, SplitPartition]]:
    """Split graphs on exactly n vertices.

    Each is given by a clique size c and a multiset of neighborhoods (subsets
    of the clique) for the n - c independent vertices. With ``distinct`` set,
    isomorphic repeats are dropped (Weisfeiler-Lehman hash buckets, exact
    isomorphism test inside a bucket).
    """
    if n < 1:
        raise PreconditionError(f"n must be at least 1, got {n}")
    seen: Dict[str, List[nx.Graph]] = defaultdict(list)

    for c in range(1, n + 1):
        masks = range(1 if connected and n > 1 else 0, 1 << c)
        for neighborhoods in itertools.combinations_with_replacement(masks, n - c):
            edges = list(itertools.combinations(range(c), 2))
            for offset, mask in enumerate(neighborhoods):
                edges.extend((u, c + offset) for u in range(c) if mask >> u & 1)
            g = Graph.from_edges(n, edges)
            if connected and not is_connected(g):
                continue
            if distinct:
                nx_graph = g.to_networkx()
                bucket = seen[nx.weisfeiler_lehman_graph_hash(nx_graph)]
                if any(nx.is_isomorphic(nx_graph, other) for other in bucket):
                    continue
                bucket.append(nx_graph)
            yield g, SplitPartition(frozenset(range(c)), frozenset(range(c, n)))
