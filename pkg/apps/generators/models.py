from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Optional, Tuple

from apps.classes.models import Modulator, SplitPartition
from apps.graphs.models import Graph
from apps.interval.models import IntervalRepresentation


class GenClass(Enum):
    CLUSTER = 'cluster'
    INTERVAL = 'interval'
    THRESHOLD = 'threshold'
    SPLIT = 'split'
    COGRAPH = 'cograph'
    BIPARTITE = 'bipartite'
    CLUSTER_MODULATOR = 'cluster+modulator'
    THRESHOLD_MODULATOR = 'threshold+modulator'

    @classmethod
    def parse(cls, value) -> 'GenClass':
        if isinstance(value, cls):
            return value
        for member in cls:
            if member.value == value:
                return member
        raise ValueError(f"unknown generator class {value!r}")


@dataclass(frozen=True)
class GenSpec:
    """Everything that determines a generated instance, seed included.

    ``clique_sizes`` fixes the residual cliques of cluster instances (and the
    clique side of split instances when it has one entry); ``p`` is the edge
    probability used wherever an edge is drawn at random; ``d`` is the
    modulator size of the ``*+modulator`` classes. With ``connected`` set the
    generator rejects and redraws until the graph is connected.
    """
    graph_class: GenClass
    n: int
    seed: int = 0
    d: int = 0
    clique_sizes: Tuple[int, ...] = ()
    p: float = 0.5
    connected: bool = False


@dataclass(frozen=True)
class GeneratedInstance:
    spec: GenSpec
    graph: Graph
    cliques: Optional[Tuple[FrozenSet[int], ...]] = None
    partition: Optional[SplitPartition] = None
    sides: Optional[Tuple[FrozenSet[int], FrozenSet[int]]] = None
    creation: Optional[Tuple[Tuple[int, str], ...]] = None
    representation: Optional[IntervalRepresentation] = None
    modulator: Optional[Modulator] = None
    attempts: int = 1
