from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from apps.core.exceptions import PreconditionError


@dataclass(frozen=True)
class Interval:
    """Closed interval [left, right] with exact rational endpoints"""
    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'left', Fraction(self.left))
        object.__setattr__(self, 'right', Fraction(self.right))
        if not self.left < self.right:
            raise PreconditionError(f"interval [{self.left}, {self.right}] needs left < right")

    def intersects(self, other: 'Interval') -> bool:
        return not (other.left > self.right or self.left > other.right)

    def __str__(self):
        return f"[{self.left}, {self.right}]"


@dataclass(frozen=True)
class IntervalRepresentation:
    """One interval per vertex, indexed by vertex id"""
    intervals: Tuple[Interval, ...]

    @classmethod
    def from_pairs(cls, pairs) -> 'IntervalRepresentation':
        return cls(tuple(Interval(Fraction(left), Fraction(right)) for left, right in pairs))

    @property
    def n(self) -> int:
        return len(self.intervals)

    def __getitem__(self, v: int) -> Interval:
        return self.intervals[v]

    def left(self, v: int) -> Fraction:
        return self.intervals[v].left

    def right(self, v: int) -> Fraction:
        return self.intervals[v].right

    def sweep_order(self) -> Tuple[int, ...]:
        """Vertices by increasing left endpoint"""
        return tuple(sorted(range(self.n), key=lambda v: self.intervals[v].left))

    def rightmost(self) -> Optional[int]:
        if not self.intervals:
            return None
        return max(range(self.n), key=lambda v: self.intervals[v].right)


@dataclass(frozen=True)
class RepresentationVerdict:
    valid: bool
    reason: str = ''
    pair: Optional[Tuple[int, int]] = None

    def __bool__(self):
        return self.valid

    def __str__(self):
        return 'valid representation' if self.valid else f"invalid representation: {self.reason}"
