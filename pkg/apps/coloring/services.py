import logging
from collections import Counter
from typing import Iterable, Optional

from apps.core.exceptions import SolverDefectError
from apps.graphs.models import Graph

from .models import Coloring, Optimality, SolveOutcome, Variant, Verdict

logger = logging.getLogger(__name__)


def has_unique_color(c: Coloring, s: Iterable[int]) -> Optional[int]:
    """Smallest color appearing exactly once among the vertices of s, or None"""
    counts = Counter(c[v] for v in s)
    singles = [color for color, count in counts.items() if count == 1]
    return min(singles) if singles else None


def neighborhood(g: Graph, v: int, variant: Variant):
    if variant is Variant.CLOSED:
        return g.neighbors(v) + (v,)
    return g.neighbors(v)


def verify(c: Coloring, variant: Variant) -> Verdict:
    """Check every vertex neighborhood; report the smallest failing vertex"""
    variant = Variant.parse(variant)
    for v in c.host.vertices:
        if has_unique_color(c, neighborhood(c.host, v, variant)) is None:
            return Verdict(valid=False, variant=variant, failing_vertex=v)
    return Verdict(valid=True, variant=variant)


def verify_cfcn(c: Coloring) -> Verdict:
    return verify(c, Variant.CLOSED)


def verify_cfon(c: Coloring) -> Verdict:
    return verify(c, Variant.OPEN)


def certify(coloring: Coloring, variant: Variant, optimality: Optimality,
            strategy: str, notes=()) -> SolveOutcome:
    """Wrap a solver's coloring after re-running the verifier on it"""
    verdict = verify(coloring, variant)
    if not verdict:
        logger.error(f"{strategy} produced an invalid coloring: {verdict}")
        raise SolverDefectError(f"{strategy} produced an invalid coloring ({verdict})")
    logger.debug(f"{strategy}: {coloring.size} colors, {optimality.value}")
    return SolveOutcome(
        coloring=coloring,
        variant=variant,
        optimality=optimality,
        strategy=strategy,
        notes=tuple(notes),
    )
