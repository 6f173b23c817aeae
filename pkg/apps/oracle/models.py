from dataclasses import dataclass
from typing import Optional

from apps.coloring.models import Coloring, Variant


@dataclass(frozen=True)
class OracleResult:
    """Exact conflict-free chromatic number with a witness.

    ``chromatic`` is None when the search was capped below the optimum
    or the instance is infeasible (CF-ON with an isolated vertex).
    """
    variant: Variant
    chromatic: Optional[int]
    witness: Optional[Coloring]
    infeasible: bool = False
    nodes_explored: int = 0
