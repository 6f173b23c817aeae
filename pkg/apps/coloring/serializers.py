"""Text codec for coloring files: one ``v <vertex> <color>`` line per vertex."""

from apps.core.exceptions import FormatError
from apps.graphs.models import Graph

from .models import Coloring


def parse_coloring(text: str, host: Graph) -> Coloring:
    assignment = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == 'c':
            continue
        if tokens[0] != 'v' or len(tokens) != 3:
            raise FormatError("coloring line must read 'v <vertex> <color>'", line=line_no)
        try:
            vertex, color = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise FormatError("vertex and color must be integers", line=line_no)
        if not 0 <= vertex < host.n:
            raise FormatError(f"vertex {vertex} out of range 0..{host.n - 1}", line=line_no)
        if color < 0:
            raise FormatError(f"color {color} is negative", line=line_no)
        if vertex in assignment:
            raise FormatError(f"duplicate line for vertex {vertex}", line=line_no)
        assignment[vertex] = color

    missing = [v for v in host.vertices if v not in assignment]
    if missing:
        raise FormatError(f"missing color for vertex {missing[0]}")
    return Coloring.from_mapping(host, assignment)


def write_coloring(c: Coloring) -> str:
    return "".join(f"v {v} {color}\n" for v, color in enumerate(c.assignment))
