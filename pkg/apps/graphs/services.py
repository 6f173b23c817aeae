import logging
from typing import Dict, Iterable, List, Tuple

import networkx as nx

from .models import Graph, VertexSet

logger = logging.getLogger(__name__)


def open_neighborhood(g: Graph, v: int) -> VertexSet:
    """N(v): all vertices adjacent to v"""
    g.check_vertex(v)
    return frozenset(g.neighbors(v))


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    """N[v] = N(v) together with v itself"""
    g.check_vertex(v)
    return frozenset(g.neighbors(v)) | {v}


def connected_components(g: Graph) -> List[VertexSet]:
    """Maximal connected vertex sets, ordered by smallest member"""
    components = [frozenset(c) for c in nx.connected_components(g.to_networkx())]
    return sorted(components, key=min)


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def induced_subgraph(g: Graph, s: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """G[S] relabeled to 0..|S|-1 in increasing old-id order.

    Returns the subgraph and the map old id -> new id.
    """
    members = sorted(set(s))
    for v in members:
        g.check_vertex(v)
    relabel = {old: new for new, old in enumerate(members)}
    edges = [
        (relabel[u], relabel[v])
        for u, v in g.edges
        if u in relabel and v in relabel
    ]
    return Graph.from_edges(len(members), edges), relabel


def delete_vertices(g: Graph, removed: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """G minus a vertex set, with the same relabeling convention as induced_subgraph"""
    removed = set(removed)
    return induced_subgraph(g, (v for v in g.vertices if v not in removed))

