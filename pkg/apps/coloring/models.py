"""Coloring records shared by all solvers and the verifier."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

from apps.core.exceptions import PreconditionError
from apps.graphs.models import Graph


class Variant(Enum):
    """Which neighborhood must carry a unique color"""
    CLOSED = 'cn'
    OPEN = 'on'

    @classmethod
    def parse(cls, value) -> 'Variant':
        if isinstance(value, cls):
            return value
        lookup = {'cn': cls.CLOSED, 'closed': cls.CLOSED, 'on': cls.OPEN, 'open': cls.OPEN}
        try:
            return lookup[str(value).lower()]
        except KeyError:
            raise PreconditionError(f"unknown variant {value!r}; use 'cn' or 'on'")


class Optimality(Enum):
    EXACT = 'exact'
    UPPER_BOUND = 'upper-bound-only'


@dataclass(frozen=True)
class Coloring:
    """Total map vertex -> non-negative integer color on a host graph"""
    host: Graph
    assignment: Tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.host.n:
            raise PreconditionError(
                f"coloring covers {len(self.assignment)} vertices, graph has {self.host.n}"
            )
        if any(color < 0 for color in self.assignment):
            raise PreconditionError("colors must be non-negative integers")

    @classmethod
    def from_mapping(cls, host: Graph, mapping: Mapping[int, int]) -> 'Coloring':
        missing = [v for v in host.vertices if v not in mapping]
        if missing:
            raise PreconditionError(f"vertex {missing[0]} has no color")
        return cls(host=host, assignment=tuple(int(mapping[v]) for v in host.vertices))

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    @property
    def colors_used(self) -> FrozenSet[int]:
        return frozenset(self.assignment)

    @property
    def size(self) -> int:
        """Number of distinct colors, not the largest color plus one"""
        return len(self.colors_used)

    def as_dict(self) -> Dict[int, int]:
        return dict(enumerate(self.assignment))

    def recolored(self, palette: Mapping[int, int]) -> 'Coloring':
        """Apply a color relabeling; colors missing from the map stay put"""
        return Coloring(self.host, tuple(palette.get(c, c) for c in self.assignment))


@dataclass(frozen=True)
class Verdict:
    valid: bool
    variant: Variant
    failing_vertex: Optional[int] = None

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return f"valid CF-{self.variant.value.upper()} coloring"
        return f"invalid: N{'[v]' if self.variant is Variant.CLOSED else '(v)'} has no unique color at vertex {self.failing_vertex}"


@dataclass(frozen=True)
class SolveOutcome:
    """A verified coloring plus what is known about its optimality"""
    coloring: Coloring
    variant: Variant
    optimality: Optimality
    strategy: str
    notes: Tuple[str, ...] = field(default=())

    @property
    def colors_used(self) -> int:
        return self.coloring.size

    @property
    def is_exact(self) -> bool:
        return self.optimality is Optimality.EXACT
