"""Constructive colorings for bipartite, split and cograph inputs, and the
d+2 / 2d+2 upper-bound constructions around a cluster modulator.

Every public solver hands its coloring to ``certify`` before returning, so
an outcome that reaches the caller has passed the verifier.
"""

import logging
from typing import Callable, Dict, FrozenSet, Optional, Tuple

from django.conf import settings

from apps.classes.models import (
    DecompositionNode,
    GraphClass,
    Modulator,
    NodeKind,
    ResidualClass,
    SplitPartition,
)
from apps.classes.services import (
    alternative_split_partitions,
    check_modulator,
    cluster_modulator,
    modular_decomposition,
    recognize,
    threshold_modulator,
)
from apps.coloring.models import Coloring, Optimality, SolveOutcome, Variant
from apps.coloring.services import certify
from apps.core.exceptions import InfeasibleError, PreconditionError
from apps.graphs.models import Graph
from apps.graphs.services import connected_components, delete_vertices, induced_subgraph, is_connected
from apps.oracle.services import exact_cf, oracle_limit

logger = logging.getLogger(__name__)


def trivial_lower_bound(g: Graph, variant: Variant) -> int:
    if variant is Variant.CLOSED and g.m > 0:
        return 2
    return 1 if g.n > 0 else 0


def optimality_for(coloring: Coloring, variant: Variant) -> Optimality:
    """Exact when the coloring meets the trivial lower bound, else an upper bound"""
    if coloring.size <= trivial_lower_bound(coloring.host, variant):
        return Optimality.EXACT
    return Optimality.UPPER_BOUND


def _require_no_isolated(g: Graph) -> None:
    isolated = g.isolated_vertices()
    if isolated:
        raise InfeasibleError(f"vertex {isolated[0]} is isolated, so N({isolated[0]}) is empty")


# ---------------------------------------------------------------------------
# Bipartite
# ---------------------------------------------------------------------------

def solve_bipartite_cfcn(g: Graph, sides: Tuple[FrozenSet[int], FrozenSet[int]]) -> SolveOutcome:
    side_a, side_b = (frozenset(s) for s in sides)
    if side_a & side_b or (side_a | side_b) != frozenset(g.vertices):
        raise PreconditionError("bipartition sides must be disjoint and cover every vertex")
    for u, v in g.edges:
        if (u in side_a) == (v in side_a):
            raise PreconditionError(f"edge ({u}, {v}) lies inside one side of the bipartition")

    coloring = Coloring(g, tuple(0 if v in side_a else 1 for v in g.vertices))
    return certify(coloring, Variant.CLOSED, optimality_for(coloring, Variant.CLOSED), 'bipartite')


# ---------------------------------------------------------------------------
# Split
# ---------------------------------------------------------------------------

def _universal_vertex(g: Graph) -> Optional[int]:
    return next((v for v in g.vertices if g.is_universal(v)), None)


def one_private_neighbor(g: Graph, p: SplitPartition) -> bool:
    """Every clique vertex has exactly one neighbor on the independent side"""
    return all(
        sum(1 for w in g.neighbors(v) if w in p.independent) == 1
        for v in p.clique
    )


def split_three_coloring(g: Graph, p: SplitPartition) -> Coloring:
    """Smallest clique vertex 0, the rest of the clique 1, the independent side 2"""
    if not p.clique:
        raise PreconditionError("the clique side is empty")
    pivot = min(p.clique)
    return Coloring(g, tuple(
        0 if v == pivot else 1 if v in p.clique else 2
        for v in g.vertices
    ))


def _double_star_coloring(g: Graph, p: SplitPartition) -> Coloring:
    """Two-vertex maximum clique {w, z}: w and z's leaves 1, z and w's leaves 0"""
    w, z = sorted(p.clique)
    colors = {w: 1, z: 0}
    for v in p.independent:
        colors[v] = 0 if g.has_edge(v, w) else 1
    return Coloring.from_mapping(g, colors)


def solve_split_cfcn(g: Graph, p: SplitPartition) -> SolveOutcome:
    """Minimum CF-CN coloring of a split graph (two colors or three).

    Two colors suffice exactly when there is a universal vertex, when on
    some split partition each clique vertex has one independent neighbor, or
    when the maximum clique is a single edge (a double star).
    """
    if not p.is_valid_for(g):
        raise PreconditionError(f"{p} is not a split partition of {g}")
    if g.m == 0:
        raise PreconditionError("split solver needs at least one edge")

    universal = _universal_vertex(g)
    if universal is not None:
        coloring = Coloring(g, tuple(1 if v == universal else 0 for v in g.vertices))
        return certify(coloring, Variant.CLOSED, Optimality.EXACT, 'split', [f"universal vertex {universal}"])

    partitions = alternative_split_partitions(g, p)
    for candidate in partitions:
        if candidate.clique and one_private_neighbor(g, candidate):
            coloring = Coloring(g, tuple(0 if v in candidate.clique else 1 for v in g.vertices))
            return certify(coloring, Variant.CLOSED, Optimality.EXACT, 'split',
                           [f"one private neighbor per clique vertex of {sorted(candidate.clique)}"])

    # A clique holds at most one independent vertex, so the largest
    # candidate clique is a maximum clique.
    connected = is_connected(g)
    if connected and max(len(q.clique) for q in partitions) == 2:
        edge = next(q for q in partitions if len(q.clique) == 2)
        coloring = _double_star_coloring(g, edge)
        return certify(coloring, Variant.CLOSED, Optimality.EXACT, 'split', ["maximum clique is one edge"])

    coloring = split_three_coloring(g, p)
    optimality = Optimality.EXACT if connected else Optimality.UPPER_BOUND
    return certify(coloring, Variant.CLOSED, optimality, 'split', ["no two-coloring pattern applies"])


# ---------------------------------------------------------------------------
# Cographs
# ---------------------------------------------------------------------------

def solve_cograph(g: Graph, tree: DecompositionNode, variant) -> SolveOutcome:
    variant = Variant.parse(variant)
    if tree.has_prime:
        raise PreconditionError("decomposition tree has a prime node; the graph is not a cograph")
    if tree.kind is NodeKind.PARALLEL:
        raise PreconditionError("cograph solver needs a connected graph (root is a parallel node)")

    if g.n == 1:
        if variant is Variant.OPEN:
            raise InfeasibleError("a single vertex has an empty open neighborhood")
        return certify(Coloring(g, (0,)), variant, Optimality.EXACT, 'cograph')

    if variant is Variant.CLOSED:
        universal = _universal_vertex(g)
        if universal is not None:
            coloring = Coloring(g, tuple(1 if v == universal else 0 for v in g.vertices))
            return certify(coloring, variant, Optimality.EXACT, 'cograph', [f"universal vertex {universal}"])
    elif g.n == 2:
        return certify(Coloring(g, (0, 1)), variant, Optimality.UPPER_BOUND, 'cograph')

    first, rest = tree.children[0].members, frozenset().union(*(c.members for c in tree.children[1:]))
    zero, one = min(first), min(rest)
    coloring = Coloring(g, tuple(0 if v == zero else 1 if v == one else 2 for v in g.vertices))
    return certify(coloring, variant, Optimality.UPPER_BOUND, 'cograph',
                   [f"vertex {zero} from module {sorted(first)}, vertex {one} from the joined side"])


# ---------------------------------------------------------------------------
# Cluster modulator constructions
# ---------------------------------------------------------------------------

def _residual_cliques(g: Graph, modulator: Modulator):
    if modulator.residual_class is not ResidualClass.CLUSTER:
        raise PreconditionError("a cluster modulator is required")
    check_modulator(g, modulator)
    residual, relabel = delete_vertices(g, modulator.deleted)
    back = {new: old for old, new in relabel.items()}
    return [
        sorted(back[v] for v in component)
        for component in connected_components(residual)
    ]


def lemma1_cfcn(g: Graph, modulator: Modulator) -> SolveOutcome:
    """At most d+2 colors: one 0 per clique, 1 elsewhere in it, distinct colors on X"""
    colors: Dict[int, int] = {}
    for clique in _residual_cliques(g, modulator):
        colors[clique[0]] = 0
        colors.update((v, 1) for v in clique[1:])
    for i, x in enumerate(modulator.ordered):
        colors[x] = 2 + i

    coloring = Coloring.from_mapping(g, colors)
    logger.debug(f"lemma1_cfcn: d={modulator.d}, {coloring.size} colors")
    return certify(coloring, Variant.CLOSED, optimality_for(coloring, Variant.CLOSED), 'lemma1',
                   [f"d={modulator.d}, bound {modulator.d + 2}"])


def lemma1_cfon(g: Graph, modulator: Modulator) -> SolveOutcome:
    """At most 2d+2 colors around a cluster modulator X = {x_1 < ... < x_d}.

    1. Every vertex outside X gets 0.
    2. x_j gets j.
    3. If N(x_j) is all 0, its smallest neighbor gets d+j.
    4. A clique of two or more vertices still all 0 gets 2d+1 on its
       smallest vertex with a neighbor in X. A clique with no such vertex is
       a whole component; its smallest vertex gets 2d+1 and, from three
       vertices up, the next one gets 1 (or the fresh color 2 when d = 0).
    """
    _require_no_isolated(g)
    cliques = _residual_cliques(g, modulator)
    ordered = modulator.ordered
    d = len(ordered)
    in_x = set(ordered)

    colors: Dict[int, int] = {v: 0 for v in g.vertices}
    for j, x in enumerate(ordered, start=1):
        colors[x] = j
    for j, x in enumerate(ordered, start=1):
        if all(colors[w] == 0 for w in g.neighbors(x)):
            colors[g.neighbors(x)[0]] = d + j

    notes = [f"d={d}, bound {2 * d + 2}"]
    optimality = None
    for clique in cliques:
        if len(clique) < 2 or any(colors[v] != 0 for v in clique):
            continue
        anchored = [v for v in clique if any(w in in_x for w in g.neighbors(v))]
        if anchored:
            colors[anchored[0]] = 2 * d + 1
            continue
        colors[clique[0]] = 2 * d + 1
        if len(clique) >= 3:
            colors[clique[1]] = 1 if d >= 1 else 2
            if d == 0:
                logger.warning(f"clique component {clique} with empty modulator needs 3 colors, above 2d+2")
                notes.append("isolated clique with d=0 exceeds 2d+2")
                optimality = Optimality.UPPER_BOUND

    coloring = Coloring.from_mapping(g, colors)
    return certify(coloring, Variant.OPEN, optimality or optimality_for(coloring, Variant.OPEN), 'lemma1', notes)


def solve_lemma1(g: Graph, modulator: Modulator, variant) -> SolveOutcome:
    if Variant.parse(variant) is Variant.CLOSED:
        return lemma1_cfcn(g, modulator)
    return lemma1_cfon(g, modulator)


# ---------------------------------------------------------------------------
# Components and automatic dispatch
# ---------------------------------------------------------------------------

def color_by_components(g: Graph, solve_component: Callable[[Graph], SolveOutcome]) -> SolveOutcome:
    """Solve each component on its own and merge.

    Each component's palette is renumbered 0, 1, ... by first appearance, so
    the merged count is the largest per-component count.
    """
    components = connected_components(g)
    colors: Dict[int, int] = {}
    outcomes = []
    for component in components:
        sub, relabel = induced_subgraph(g, component)
        outcome = solve_component(sub)
        palette: Dict[int, int] = {}
        for old, new in relabel.items():
            color = outcome.coloring[new]
            colors[old] = palette.setdefault(color, len(palette))
        outcomes.append(outcome)

    variant = outcomes[0].variant if outcomes else Variant.CLOSED
    exact = all(o.is_exact for o in outcomes)
    strategies = sorted({o.strategy for o in outcomes})
    coloring = Coloring.from_mapping(g, colors)
    return certify(
        coloring,
        variant,
        Optimality.EXACT if exact else Optimality.UPPER_BOUND,
        'components(' + ','.join(strategies) + ')',
        [f"{len(components)} components"],
    )


def _auto_connected(g: Graph, variant: Variant, budget: int, limit: int) -> SolveOutcome:
    if g.n == 1:
        if variant is Variant.OPEN:
            raise InfeasibleError("a single vertex has an empty open neighborhood")
        return certify(Coloring(g, (0,)), variant, Optimality.EXACT, 'trivial')

    recognition = recognize(g)
    if variant is Variant.CLOSED and GraphClass.SPLIT in recognition:
        return solve_split_cfcn(g, recognition.split)
    if variant is Variant.CLOSED and GraphClass.BIPARTITE in recognition:
        return solve_bipartite_cfcn(g, recognition.bipartition)
    if GraphClass.COGRAPH in recognition:
        return solve_cograph(g, recognition.decomposition, variant)

    modulator = cluster_modulator(g, budget)
    cap = budget if modulator is None else modulator.d - 1
    around_threshold = threshold_modulator(g, cap) if cap >= 0 else None
    if around_threshold is not None:
        # apps.fpt imports this module
        from apps.fpt.approx import approx_threshold
        return approx_threshold(g, around_threshold, variant).outcome
    if modulator is not None:
        return solve_lemma1(g, modulator, variant)

    if g.n <= limit:
        result = exact_cf(g, variant, limit=limit)
        return certify(result.witness, variant, Optimality.EXACT, 'oracle')
    raise PreconditionError(
        f"no strategy applies to {g}: no class match, no cluster modulator within {budget}, above oracle limit {limit}"
    )


def solve_auto(g: Graph, variant, budget: Optional[int] = None, limit: Optional[int] = None) -> SolveOutcome:
    """Recognize and dispatch.

    Order: split > bipartite > cograph > the smaller of a cluster modulator
    (d+2 / 2d+2 construction) and a threshold modulator (additive approximation),
    ties going to the cluster side > oracle within its limit.
    """
    variant = Variant.parse(variant)
    budget = settings.CFCOLOR['AUTO_BUDGET'] if budget is None else budget
    limit = oracle_limit() if limit is None else limit
    if variant is Variant.OPEN:
        _require_no_isolated(g)
    if g.n == 0:
        return certify(Coloring(g, ()), variant, Optimality.EXACT, 'trivial')
    if len(connected_components(g)) > 1:
        return color_by_components(g, lambda sub: _auto_connected(sub, variant, budget, limit))
    return _auto_connected(g, variant, budget, limit)


def solve_with_tree(g: Graph, variant) -> SolveOutcome:
    """Cograph path with the tree computed here"""
    tree = modular_decomposition(g)
    if tree is None:
        raise PreconditionError("empty graph")
    return solve_cograph(g, tree, variant)
