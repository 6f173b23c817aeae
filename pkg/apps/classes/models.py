"""Graph-class labels and the certificates recognizers attach to them."""

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Optional, Tuple

from apps.graphs.models import Graph


class GraphClass(Enum):
    BIPARTITE = 'bipartite'
    CLUSTER = 'cluster'
    SPLIT = 'split'
    THRESHOLD = 'threshold'
    COGRAPH = 'cograph'
    INTERVAL_GIVEN = 'interval-given'
    GENERAL = 'general'


class ResidualClass(Enum):
    """Target class of a modulator"""
    CLUSTER = 'cluster'
    THRESHOLD = 'threshold'


@dataclass(frozen=True)
class SplitPartition:
    clique: FrozenSet[int]
    independent: FrozenSet[int]

    def is_valid_for(self, g: Graph) -> bool:
        if self.clique & self.independent or (self.clique | self.independent) != frozenset(g.vertices):
            return False
        clique = sorted(self.clique)
        independent = sorted(self.independent)
        return (
            all(g.has_edge(u, v) for i, u in enumerate(clique) for v in clique[i + 1:])
            and not any(g.has_edge(u, v) for i, u in enumerate(independent) for v in independent[i + 1:])
        )


@dataclass(frozen=True)
class Modulator:
    """Vertex set X whose deletion leaves a graph of ``residual_class``"""
    deleted: FrozenSet[int]
    residual_class: ResidualClass

    @property
    def d(self) -> int:
        return len(self.deleted)

    @property
    def ordered(self) -> Tuple[int, ...]:
        return tuple(sorted(self.deleted))


class NodeKind(Enum):
    LEAF = 'leaf'
    SERIES = 'series'
    PARALLEL = 'parallel'
    PRIME = 'prime'


@dataclass(frozen=True)
class DecompositionNode:
    """Node h of a modular decomposition tree; ``members`` is the module M(h).

    Children are ordered by their smallest member.
    """
    kind: NodeKind
    members: FrozenSet[int]
    children: Tuple['DecompositionNode', ...] = ()

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    @property
    def has_prime(self) -> bool:
        return any(node.kind is NodeKind.PRIME for node in self.walk())

    def representative_graph(self, g: Graph) -> Graph:
        """G_h: children adjacent iff some edge of g joins their modules"""
        edges = [
            (i, j)
            for i, left in enumerate(self.children)
            for j in range(i + 1, len(self.children))
            if any(g.has_edge(u, v) for u in left.members for v in self.children[j].members)
        ]
        return Graph.from_edges(len(self.children), edges)

    def render(self, g: Optional[Graph] = None, depth: int = 0) -> str:
        """One line per node; with ``g``, internal nodes also list the edges of G_h"""
        label = ','.join(str(v) for v in sorted(self.members))
        line = f"{'  ' * depth}{self.kind.value} {{{label}}}"
        if g is not None and self.children:
            quotient = self.representative_graph(g).edges
            line += ' quotient ' + (' '.join(f"{i}-{j}" for i, j in quotient) if quotient else 'none')
        lines = [line]
        lines.extend(child.render(g, depth + 1) for child in self.children)
        return "\n".join(lines)


@dataclass(frozen=True)
class Recognition:
    """All labels that hold for a graph, with their certificates"""
    labels: FrozenSet[GraphClass]
    bipartition: Optional[Tuple[FrozenSet[int], FrozenSet[int]]] = None
    cliques: Optional[Tuple[FrozenSet[int], ...]] = None
    split: Optional[SplitPartition] = None
    threshold_order: Optional[Tuple[Tuple[int, str], ...]] = None
    decomposition: Optional[DecompositionNode] = None

    def __contains__(self, label: GraphClass) -> bool:
        return label in self.labels
