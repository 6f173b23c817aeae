"""Reduction from graph k-coloring to CF-ON (k+2)-coloring of split graphs."""

import logging
from typing import List, Optional, Tuple

from django.conf import settings

from apps.coloring.models import Coloring, Variant
from apps.coloring.services import verify_cfon
from apps.core.exceptions import PreconditionError, SizeGuardError, SolverDefectError
from apps.graphs.models import Graph
from apps.oracle.services import decide_cf

from .models import CrossValidation, GadgetInstance

logger = logging.getLogger(__name__)


def hardness_limit() -> int:
    return settings.CFCOLOR['HARDNESS_LIMIT']


def encode(g: Graph, k: int) -> GadgetInstance:
    if k < 3:
        raise PreconditionError(f"the reduction needs k ≥ 3, got {k}")
    n = g.n
    x, y = n, n + 1
    augmented = Graph.from_edges(
        n + 2,
        list(g.edges) + [(v, x) for v in g.vertices] + [(v, y) for v in g.vertices] + [(x, y)],
    )

    edges = [(u, v) for u in range(n + 2) for v in range(u + 1, n + 2)]
    edge_vertices = []
    for offset, edge in enumerate(augmented.edges):
        w = n + 2 + offset
        edge_vertices.append((edge, w))
        edges.extend([(edge[0], w), (edge[1], w)])

    h = Graph.from_edges(n + 2 + augmented.m, edges)
    logger.debug(f"gadget for {g}, k={k}: H has {h.n} vertices and {h.m} edges")
    return GadgetInstance(source=g, k=k, augmented=augmented, graph=h, edge_vertices=tuple(edge_vertices))


def forward_coloring(inst: GadgetInstance, proper: Coloring) -> Coloring:
    """G keeps its colors, x gets k, y gets k+1, independent vertices k-1"""
    if not is_proper(proper) or proper.size > inst.k or any(c >= inst.k for c in proper.assignment):
        raise PreconditionError(f"expected a proper coloring of G with colors 0..{inst.k - 1}")
    colors = list(proper.assignment) + [inst.k, inst.k + 1]
    colors += [inst.k - 1] * inst.augmented.m
    return Coloring(inst.graph, tuple(colors))


def decode(inst: GadgetInstance, coloring: Coloring) -> Coloring:
    """Restrict a CF-ON (k+2)-coloring of H to the vertices of G"""
    verdict = verify_cfon(coloring)
    if not verdict:
        raise PreconditionError(f"not a CF-ON coloring of H: {verdict}")
    if coloring.size > inst.k + 2:
        raise PreconditionError(f"coloring of H uses {coloring.size} colors, more than k+2 = {inst.k + 2}")
    restricted = Coloring(inst.source, coloring.assignment[:inst.source.n])
    if not is_proper(restricted):
        raise SolverDefectError("decoded coloring of G is not proper")
    return restricted


def is_proper(c: Coloring) -> bool:
    return all(c[u] != c[v] for u, v in c.host.edges)


def decide_proper(g: Graph, k: int) -> Tuple[bool, Optional[Coloring]]:
    """Backtracking proper k-coloring, vertices in id order, new colors opened in order"""
    colors: List[int] = [-1] * g.n

    def extend(v: int, highest: int) -> bool:
        if v == g.n:
            return True
        taken = {colors[w] for w in g.neighbors(v) if w < v}
        for color in range(min(highest + 2, k)):
            if color in taken:
                continue
            colors[v] = color
            if extend(v + 1, max(highest, color)):
                return True
        colors[v] = -1
        return False

    if extend(0, -1):
        return True, Coloring(g, tuple(colors))
    return False, None


def cross_validate(g: Graph, k: int, limit: Optional[int] = None) -> CrossValidation:
    inst = encode(g, k)
    limit = hardness_limit() if limit is None else limit
    if inst.graph.n > limit:
        raise SizeGuardError(inst.graph.n, limit, what='gadget graph H')

    source_colorable, proper = decide_proper(g, k)
    gadget_colorable, witness = decide_cf(inst.graph, Variant.OPEN, k + 2, limit=limit)
    decoded = decode(inst, witness) if witness is not None else None

    report = CrossValidation(
        instance=inst,
        source_colorable=source_colorable,
        gadget_colorable=gadget_colorable,
        proper_witness=proper,
        gadget_witness=witness,
        decoded=decoded,
    )
    if report.agree:
        logger.info(f"{g}, k={k}: both sides {'YES' if source_colorable else 'NO'}")
    else:
        logger.error(f"{g}, k={k}: G colorable={source_colorable} but H colorable={gadget_colorable}")
    return report
