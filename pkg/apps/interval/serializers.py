"""Interval files: ``i <vertex> <left> <right>`` with integer, decimal or ``p/q`` endpoints."""

from fractions import Fraction

from apps.core.exceptions import FormatError, PreconditionError

from .models import Interval, IntervalRepresentation


def _rational(token: str, line_no: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"{token!r} is not a rational number", line=line_no)


def parse_intervals(text: str, n: int) -> IntervalRepresentation:
    intervals = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == 'c':
            continue
        if tokens[0] != 'i' or len(tokens) != 4:
            raise FormatError("interval line must read 'i <vertex> <left> <right>'", line=line_no)
        try:
            vertex = int(tokens[1])
        except ValueError:
            raise FormatError(f"vertex {tokens[1]!r} is not an integer", line=line_no)
        if not 0 <= vertex < n:
            raise FormatError(f"vertex {vertex} out of range 0..{n - 1}", line=line_no)
        if vertex in intervals:
            raise FormatError(f"duplicate interval for vertex {vertex}", line=line_no)
        try:
            intervals[vertex] = Interval(_rational(tokens[2], line_no), _rational(tokens[3], line_no))
        except PreconditionError as e:
            raise FormatError(str(e), line=line_no)

    missing = [v for v in range(n) if v not in intervals]
    if missing:
        raise FormatError(f"missing interval for vertex {missing[0]}")
    return IntervalRepresentation(tuple(intervals[v] for v in range(n)))


def write_intervals(rep: IntervalRepresentation) -> str:
    return "".join(f"i {v} {iv.left} {iv.right}\n" for v, iv in enumerate(rep.intervals))
