"""Additive approximation around a threshold modulator X.

H is G[X ∪ N(X)] without the edges inside N(X). A minimum coloring of H in
which every N[x] (or N(x)) for x in X has a unique color is found by
exhaustive search after capping the types of N(X); since any CF coloring of
G restricts to such a partial coloring, its size is a lower bound. The rest
of G is filled with color 0 and each non-trivial component of G minus X gets
one fresh color on a universal vertex (two fresh colors for open
neighborhoods).
"""

import logging
from collections import Counter, defaultdict
from typing import Dict, List, Tuple

from apps.classes.models import Modulator, ResidualClass
from apps.classes.services import check_modulator
from apps.coloring.models import Coloring, Optimality, Variant
from apps.coloring.services import certify
from apps.core.exceptions import InfeasibleError, PreconditionError, SolverDefectError
from apps.graphs.models import Graph
from apps.graphs.services import connected_components, delete_vertices
from apps.oracle.services import ConstraintSearch

from .models import ThresholdApproximation
from .services import modulator_mask

logger = logging.getLogger(__name__)


def _residual_components(g: Graph, modulator: Modulator) -> List[Tuple[int, ...]]:
    residual, relabel = delete_vertices(g, modulator.deleted)
    back = {new: old for old, new in relabel.items()}
    return [tuple(sorted(back[v] for v in c)) for c in connected_components(residual)]


def _partial_search(g: Graph, modulator: Modulator, variant: Variant,
                    pinned: List[int], limit: int) -> Tuple[int, Dict[int, int]]:
    """Minimum partial coloring of H on X ∪ N(X); returns (color count, assignment)"""
    in_x = set(modulator.deleted)
    frontier = sorted({w for x in in_x for w in g.neighbors(x)} - in_x)
    pinned_set = set(pinned)

    def around(v):
        inside = [w for w in g.neighbors(v) if w in in_x or v in in_x]
        return inside + [v] if variant is Variant.CLOSED else inside

    types = defaultdict(list)
    for v in frontier:
        if v not in pinned_set:
            types[modulator_mask(modulator, g.neighbors(v))].append(v)

    for k in range(1, limit + 1):
        cap = k + 1
        dropped = {v for members in types.values() for v in members[cap:]}
        kept = sorted(in_x | (set(frontier) - dropped))
        index = {v: i for i, v in enumerate(kept)}
        constraints = [
            [index[w] for w in around(v) if w in index]
            for v in sorted(in_x) + sorted(pinned_set)
        ]
        found = ConstraintSearch(len(kept), constraints, k).run()
        if found is None:
            continue

        colors = {v: found[index[v]] for v in kept}
        for members in types.values():
            if len(members) <= cap:
                continue
            counts = Counter(colors[v] for v in members[:cap])
            repeated = min(c for c, count in counts.items() if count >= 2)
            for v in members[cap:]:
                colors[v] = repeated
        logger.debug(f"partial coloring of H: {k} colors on {len(kept)} of {len(kept) + len(dropped)} vertices")
        return k, colors

    raise SolverDefectError(f"no partial coloring of H with at most {limit} colors")


def approx_threshold(g: Graph, modulator: Modulator, variant) -> ThresholdApproximation:
    variant = Variant.parse(variant)
    if modulator.residual_class is not ResidualClass.THRESHOLD:
        raise PreconditionError("a threshold modulator is required")
    check_modulator(g, modulator)
    if variant is Variant.OPEN and g.isolated_vertices():
        raise InfeasibleError(f"vertex {g.isolated_vertices()[0]} is isolated, no CF-ON coloring exists")

    d = modulator.d
    components = _residual_components(g, modulator)
    in_x = set(modulator.deleted)
    pinned = [c[0] for c in components if len(c) == 1 and any(w in in_x for w in g.neighbors(c[0]))]

    if d == 0:
        partial, colors = 0, {}
    else:
        limit = d + 1 if variant is Variant.CLOSED else 2 * d + 1
        partial, colors = _partial_search(g, modulator, variant, pinned, limit)

    colors = {v: colors.get(v, 0) for v in g.vertices}
    fresh = max(partial, 1)
    spent = 0
    notes = [f"d={d}", f"partial optimum {partial}"]
    for component in components:
        if len(component) < 2:
            continue
        universal = next(v for v in component if all(w == v or g.has_edge(v, w) for w in component))
        colors[universal] = fresh + spent
        spent += 1
        if variant is Variant.OPEN:
            other = next(v for v in component if v != universal)
            colors[other] = fresh + spent
            spent += 1

    per_component = 1 if variant is Variant.CLOSED else 2
    guaranteed = spent <= per_component
    if not guaranteed:
        logger.warning(f"G minus X has {spent // per_component} non-trivial components; additive bound not guaranteed")
        notes.append("additive bound not guaranteed: several non-trivial residual components")

    coloring = Coloring.from_mapping(g, colors)
    outcome = certify(coloring, variant, Optimality.UPPER_BOUND, 'threshold', notes)
    return ThresholdApproximation(
        outcome=outcome,
        partial_optimum=partial,
        fresh_colors=spent,
        bound_guaranteed=guaranteed,
        notes=tuple(notes),
    )


def approx_cfcn_threshold(g: Graph, modulator: Modulator) -> ThresholdApproximation:
    return approx_threshold(g, modulator, Variant.CLOSED)


def approx_cfon_threshold(g: Graph, modulator: Modulator) -> ThresholdApproximation:
    return approx_threshold(g, modulator, Variant.OPEN)
