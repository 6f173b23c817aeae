"""Graph record used by every solver.

Plain immutable values, not database tables.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Tuple

import networkx as nx
import numpy as np

from apps.core.exceptions import InvalidVertexError, PreconditionError

Edge = Tuple[int, int]
VertexSet = FrozenSet[int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the dense vertex ids 0..n-1.

    ``edges`` holds each edge once as ``(u, v)`` with ``u < v``, sorted.
    Neighbor lists and a boolean adjacency matrix are derived once at
    construction and never change afterwards.
    """
    n: int
    edges: Tuple[Edge, ...]
    _adjacency: np.ndarray = field(init=False, repr=False, compare=False)
    _neighbors: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError(f"vertex count must be non-negative, got {self.n}")
        adjacency = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            adjacency[u, v] = adjacency[v, u] = True
        adjacency.setflags(write=False)
        neighbors = tuple(tuple(int(w) for w in np.flatnonzero(row)) for row in adjacency)
        object.__setattr__(self, '_adjacency', adjacency)
        object.__setattr__(self, '_neighbors', neighbors)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge] = ()) -> 'Graph':
        """Build a graph, collapsing duplicate edges and rejecting self-loops"""
        canonical = set()
        for u, v in edges:
            u, v = int(u), int(v)
            for w in (u, v):
                if not 0 <= w < n:
                    raise InvalidVertexError(w, n)
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            canonical.add((min(u, v), max(u, v)))
        return cls(n=n, edges=tuple(sorted(canonical)))

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> 'Graph':
        """Relabel a networkx graph's nodes to 0..n-1 in sorted node order"""
        order = {node: i for i, node in enumerate(sorted(nx_graph.nodes()))}
        return cls.from_edges(len(order), ((order[u], order[v]) for u, v in nx_graph.edges()))

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges)
        return nx_graph

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only boolean adjacency matrix"""
        return self._adjacency

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidVertexError(v, self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adjacency[u, v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        """Sorted open neighborhood N(v)"""
        return self._neighbors[v]

    def degree(self, v: int) -> int:
        return len(self._neighbors[v])

    def is_universal(self, v: int) -> bool:
        return self.degree(v) == self.n - 1

    def isolated_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v in self.vertices if not self._neighbors[v])

    def complement(self) -> 'Graph':
        pairs = np.argwhere(np.triu(~self._adjacency, k=1))
        return Graph.from_edges(self.n, (tuple(pair) for pair in pairs))

    def __str__(self):
        return f"Graph(n={self.n}, m={self.m})"
