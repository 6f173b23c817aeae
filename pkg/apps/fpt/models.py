"""Types, mega-types and kernels for a graph with a cluster modulator."""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Tuple

from apps.classes.models import Modulator
from apps.coloring.models import Coloring, SolveOutcome, Variant
from apps.graphs.models import Graph


@dataclass(frozen=True)
class TypeSignature:
    """T_Y^C: the vertices of clique C whose neighborhood in X is exactly Y.

    ``mask`` encodes Y with bit i set when the i-th smallest vertex of X is in Y.
    """
    clique_rep: int
    mask: int
    members: Tuple[int, ...]

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class MegaTypeVector:
    """Type counts of one clique, one entry per subset Y of X, capped"""
    counts: Tuple[int, ...]

    def __str__(self):
        return '(' + ','.join(str(c) for c in self.counts) + ')'


@dataclass(frozen=True)
class CliqueProfile:
    """A clique of G minus X split into its non-empty types"""
    members: Tuple[int, ...]
    types: Tuple[TypeSignature, ...]

    @property
    def rep(self) -> int:
        return self.members[0]

    def type_for(self, mask: int) -> Optional[TypeSignature]:
        return next((t for t in self.types if t.mask == mask), None)

    def vector(self, d: int, cap: int) -> MegaTypeVector:
        counts = [0] * (1 << d)
        for t in self.types:
            counts[t.mask] = min(len(t), cap)
        return MegaTypeVector(tuple(counts))


@dataclass(frozen=True)
class DeletedVertex:
    """A vertex removed by the type-capping rule"""
    vertex: int
    clique_rep: int
    mask: int


@dataclass(frozen=True)
class DeletedClique:
    """A clique removed by the mega-type rule, after type capping"""
    clique: CliqueProfile
    vector: MegaTypeVector
    survivor_rep: int

    @property
    def clique_rep(self) -> int:
        return self.clique.rep


@dataclass(frozen=True)
class KernelInstance:
    """Reduced instance plus what is needed to lift a coloring back.

    ``kept`` lists the source vertices that survive, in increasing order;
    kernel vertex i is source vertex ``kept[i]``. The vertex order used to
    pick critical cliques is ascending source id. When ``shortcut`` is set,
    k is large enough that the d+2 / 2d+2 construction already answers YES
    and the kernel is the source graph itself.
    """
    source: Graph
    graph: Graph
    modulator: Modulator
    variant: Variant
    k: int
    cap: int
    kept: Tuple[int, ...]
    profiles: Tuple[CliqueProfile, ...]
    deleted_vertices: Tuple[DeletedVertex, ...] = ()
    deleted_cliques: Tuple[DeletedClique, ...] = ()
    shortcut: Optional[Coloring] = None
    size_bound: int = 0

    @property
    def d(self) -> int:
        return self.modulator.d

    @property
    def to_kernel(self) -> Dict[int, int]:
        return {old: new for new, old in enumerate(self.kept)}

    @property
    def kernel_modulator(self) -> FrozenSet[int]:
        relabel = self.to_kernel
        return frozenset(relabel[x] for x in self.modulator.deleted)

    @property
    def is_fixpoint(self) -> bool:
        return not self.deleted_vertices and not self.deleted_cliques


@dataclass(frozen=True)
class KernelDecision:
    """Answer for one k, with the lifted coloring when the answer is YES"""
    kernel: KernelInstance
    feasible: bool
    coloring: Optional[Coloring] = None
    kernel_coloring: Optional[Coloring] = None


@dataclass(frozen=True)
class ThresholdApproximation:
    """Coloring built around a threshold modulator.

    ``partial_optimum`` is a lower bound on the optimum; the coloring adds
    ``fresh_colors`` on top of it. The additive bound is guaranteed when at
    most one component of G minus X has two or more vertices.
    """
    outcome: SolveOutcome
    partial_optimum: int
    fresh_colors: int
    bound_guaranteed: bool
    notes: Tuple[str, ...] = field(default=())

    @property
    def colors_used(self) -> int:
        return self.outcome.colors_used
