"""Kernelization for the cluster-vertex-deletion parameter.

Rule 1 truncates every type T_Y^C to ``cap`` vertices (k+1 for closed
neighborhoods, 2k+1 for open ones), keeping the smallest ids. Rule 2 then
keeps, per mega-type, the d+1 cliques with the smallest least member.
Colorings of the kernel lift back in reverse order: deleted cliques copy an
unmarked surviving clique of their mega-type, then deleted type vertices
take a color repeated among the survivors of their type.
"""

import logging
from collections import Counter, defaultdict
from typing import Dict, List, Optional

from django.conf import settings

from apps.classes.models import Modulator, ResidualClass
from apps.classes.services import check_modulator
from apps.coloring.models import Coloring, Optimality, SolveOutcome, Variant
from apps.coloring.services import certify, neighborhood, verify
from apps.core.exceptions import InfeasibleError, PreconditionError, SizeGuardError, SolverDefectError
from apps.graphs.models import Graph
from apps.graphs.services import connected_components, delete_vertices, induced_subgraph
from apps.oracle.services import decide_cf, oracle_limit
from apps.polysolve.services import lemma1_cfcn, lemma1_cfon

from .models import (
    CliqueProfile,
    DeletedClique,
    DeletedVertex,
    KernelDecision,
    KernelInstance,
    TypeSignature,
)

logger = logging.getLogger(__name__)


def kernel_oracle_limit() -> int:
    return settings.CFCOLOR['KERNEL_ORACLE_LIMIT']


def type_cap(variant: Variant, k: int) -> int:
    return k + 1 if variant is Variant.CLOSED else 2 * k + 1


def lemma1_bound(variant: Variant, d: int) -> int:
    return d + 2 if variant is Variant.CLOSED else 2 * d + 2


def kernel_size_bound(d: int, k: int, variant) -> int:
    """d + (k+2)^(2^d) * (d+1) * 2^d * cap"""
    variant = Variant.parse(variant)
    return d + (k + 2) ** (2 ** d) * (d + 1) * 2 ** d * type_cap(variant, k)


def modulator_mask(modulator: Modulator, vertices) -> int:
    position = {x: i for i, x in enumerate(modulator.ordered)}
    return sum(1 << position[x] for x in vertices if x in position)


def compute_types(g: Graph, modulator: Modulator) -> List[CliqueProfile]:
    """Every clique of G minus X with its vertices split by N(v) ∩ X"""
    if modulator.residual_class is not ResidualClass.CLUSTER:
        raise PreconditionError("types are defined for a cluster modulator")
    check_modulator(g, modulator)
    residual, relabel = delete_vertices(g, modulator.deleted)
    back = {new: old for old, new in relabel.items()}

    profiles = []
    for component in connected_components(residual):
        members = tuple(sorted(back[v] for v in component))
        by_mask: Dict[int, List[int]] = defaultdict(list)
        for v in members:
            by_mask[modulator_mask(modulator, g.neighbors(v))].append(v)
        types = tuple(
            TypeSignature(clique_rep=members[0], mask=mask, members=tuple(vs))
            for mask, vs in sorted(by_mask.items())
        )
        profiles.append(CliqueProfile(members=members, types=types))
    return profiles


def _shortcut(g: Graph, modulator: Modulator, variant: Variant, k: int) -> Optional[Coloring]:
    """Cluster-modulator coloring if k allows it and it really uses at most k colors"""
    if k < lemma1_bound(variant, modulator.d):
        return None
    outcome = lemma1_cfcn(g, modulator) if variant is Variant.CLOSED else lemma1_cfon(g, modulator)
    if outcome.colors_used > k:
        logger.info(f"k={k} reaches the 2d+2 bound but the construction needs {outcome.colors_used} colors")
        return None
    return outcome.coloring


def reduce_instance(g: Graph, modulator: Modulator, variant, k: int) -> KernelInstance:
    variant = Variant.parse(variant)
    if k < 1:
        raise PreconditionError(f"k must be at least 1, got {k}")
    if variant is Variant.OPEN and g.isolated_vertices():
        raise InfeasibleError(f"vertex {g.isolated_vertices()[0]} is isolated, no CF-ON coloring exists")

    d = modulator.d
    cap = type_cap(variant, k)
    bound = kernel_size_bound(d, k, variant)
    profiles = compute_types(g, modulator)

    shortcut = _shortcut(g, modulator, variant, k)
    if shortcut is not None:
        logger.info(f"k={k} ≥ {lemma1_bound(variant, d)}: answered by the modulator construction")
        return KernelInstance(
            source=g, graph=g, modulator=modulator, variant=variant, k=k, cap=cap,
            kept=tuple(g.vertices), profiles=tuple(profiles), shortcut=shortcut, size_bound=bound,
        )

    # Rule 1: cap every type.
    deleted_vertices = []
    capped = []
    for profile in profiles:
        types = []
        for t in profile.types:
            types.append(TypeSignature(t.clique_rep, t.mask, t.members[:cap]))
            deleted_vertices.extend(DeletedVertex(v, t.clique_rep, t.mask) for v in t.members[cap:])
        members = tuple(sorted(v for t in types for v in t.members))
        capped.append(CliqueProfile(members=members, types=tuple(types)))

    # Rule 2: at most d+1 cliques per mega-type.
    by_vector = defaultdict(list)
    for profile in capped:
        by_vector[profile.vector(d, cap)].append(profile)
    kept_profiles, deleted_cliques = [], []
    for vector, group in by_vector.items():
        group.sort(key=lambda p: p.rep)
        kept_profiles.extend(group[:d + 1])
        deleted_cliques.extend(DeletedClique(p, vector, group[0].rep) for p in group[d + 1:])
    kept_profiles.sort(key=lambda p: p.rep)
    deleted_cliques.sort(key=lambda dc: dc.clique_rep)

    kept = sorted(set(modulator.deleted).union(*(p.members for p in kept_profiles)))
    kernel, _ = induced_subgraph(g, kept)
    logger.debug(
        f"kernel for k={k} ({variant.value}): {g.n} -> {kernel.n} vertices, "
        f"{len(deleted_vertices)} type vertices and {len(deleted_cliques)} cliques removed"
    )
    if kernel.n > bound:
        raise SolverDefectError(f"kernel has {kernel.n} vertices, above the bound {bound}")

    return KernelInstance(
        source=g,
        graph=kernel,
        modulator=modulator,
        variant=variant,
        k=k,
        cap=cap,
        kept=tuple(kept),
        profiles=tuple(capped),
        deleted_vertices=tuple(deleted_vertices),
        deleted_cliques=tuple(deleted_cliques),
        size_bound=bound,
    )


def reduce_cfcn(g: Graph, modulator: Modulator, k: int) -> KernelInstance:
    return reduce_instance(g, modulator, Variant.CLOSED, k)


def reduce_cfon(g: Graph, modulator: Modulator, k: int) -> KernelInstance:
    return reduce_instance(g, modulator, Variant.OPEN, k)


def _critical_cliques(kernel: KernelInstance, colors: Dict[int, int]) -> set:
    """Reps of cliques holding, for some x in X, the smallest uniquely
    colored vertex of x's neighborhood"""
    clique_of = {v: p.rep for p in kernel.profiles for v in p.members}
    kept = set(kernel.kept)
    marked = set()
    for x in kernel.modulator.ordered:
        around = [v for v in neighborhood(kernel.source, x, kernel.variant) if v in kept]
        counts = Counter(colors[v] for v in around)
        unique = sorted(v for v in around if counts[colors[v]] == 1)
        if unique and unique[0] in clique_of:
            marked.add(clique_of[unique[0]])
    return marked


def lift_coloring(kernel: KernelInstance, kernel_coloring: Coloring) -> Coloring:
    """Extend a coloring of the kernel to the source graph"""
    if kernel.shortcut is not None:
        return kernel.shortcut
    colors = {old: kernel_coloring[new] for new, old in enumerate(kernel.kept)}

    marked = _critical_cliques(kernel, colors)
    kept_reps = set()
    kept_set = set(kernel.kept)
    for profile in kernel.profiles:
        if profile.members and profile.members[0] in kept_set:
            kept_reps.add(profile.rep)
    by_rep = {p.rep: p for p in kernel.profiles}

    for deleted in kernel.deleted_cliques:
        donors = sorted(
            rep for rep in kept_reps
            if rep not in marked and by_rep[rep].vector(kernel.d, kernel.cap) == deleted.vector
        )
        if not donors:
            raise SolverDefectError(f"no unmarked clique to copy for deleted clique {deleted.clique_rep}")
        donor = by_rep[donors[0]]
        for t in deleted.clique.types:
            source = donor.type_for(t.mask)
            for v, w in zip(t.members, source.members):
                colors[v] = colors[w]

    repeats = 2 if kernel.variant is Variant.CLOSED else 3
    survivors = {(p.rep, t.mask): t.members for p in kernel.profiles for t in p.types}
    for deleted in kernel.deleted_vertices:
        counts = Counter(colors[v] for v in survivors[(deleted.clique_rep, deleted.mask)])
        repeated = sorted(c for c, count in counts.items() if count >= repeats)
        if not repeated:
            raise SolverDefectError(f"type of vertex {deleted.vertex} has no color used {repeats} times")
        colors[deleted.vertex] = repeated[0]

    return Coloring.from_mapping(kernel.source, colors)


def solve_via_kernel(g: Graph, modulator: Modulator, variant, k: int,
                     limit: Optional[int] = None) -> KernelDecision:
    """Decide CF k-colorability on the kernel and lift a YES witness"""
    variant = Variant.parse(variant)
    kernel = reduce_instance(g, modulator, variant, k)
    if kernel.shortcut is not None:
        return KernelDecision(kernel=kernel, feasible=True, coloring=kernel.shortcut)

    limit = kernel_oracle_limit() if limit is None else limit
    if kernel.graph.n > limit:
        raise SizeGuardError(kernel.graph.n, limit, what=f"kernel (bound {kernel.size_bound})")
    if kernel.graph.n > oracle_limit():
        logger.warning(f"kernel has {kernel.graph.n} vertices, above the oracle limit {oracle_limit()}")

    feasible, kernel_coloring = decide_cf(kernel.graph, variant, k, limit=limit)
    if not feasible:
        return KernelDecision(kernel=kernel, feasible=False)

    lifted = lift_coloring(kernel, kernel_coloring)
    verdict = verify(lifted, variant)
    if not verdict or lifted.size > k:
        raise SolverDefectError(f"lifted coloring is not a CF-{variant.value.upper()} {k}-coloring ({verdict})")
    return KernelDecision(kernel=kernel, feasible=True, coloring=lifted, kernel_coloring=kernel_coloring)


def minimize_via_kernel(g: Graph, modulator: Modulator, variant, limit: Optional[int] = None) -> SolveOutcome:
    """Smallest k answered YES through the kernel, with its lifted coloring"""
    variant = Variant.parse(variant)
    if g.n == 0:
        return certify(Coloring(g, ()), variant, Optimality.EXACT, 'fpt')
    for k in range(1, g.n + 1):
        decision = solve_via_kernel(g, modulator, variant, k, limit=limit)
        if decision.feasible:
            notes = [f"k={k}", f"kernel {decision.kernel.graph.n} of {g.n} vertices"]
            return certify(decision.coloring, variant, Optimality.EXACT, 'fpt', notes)
    raise SolverDefectError(f"no k up to {g.n} admits a CF-{variant.value.upper()} coloring")
