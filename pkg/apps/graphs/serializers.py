"""Text codec for the line-oriented graph file.

    c <comment>
    p cf <n> <m>
    e <u> <v>          (0 <= u < v < n, one line per edge)
"""

import logging

from apps.core.exceptions import FormatError

from .models import Graph

logger = logging.getLogger(__name__)


def _int_field(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {token!r}", line=line_no)


def parse_graph(text: str) -> Graph:
    """Parse graph-file content into a Graph"""
    n = None
    declared_edges = 0
    edge_lines = 0
    edges = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == 'c':
            continue

        if tokens[0] == 'p':
            if n is not None:
                raise FormatError("duplicate header", line=line_no)
            if len(tokens) != 4 or tokens[1] != 'cf':
                raise FormatError("header must read 'p cf <n> <m>'", line=line_no)
            n = _int_field(tokens[2], line_no, 'vertex count')
            declared_edges = _int_field(tokens[3], line_no, 'edge count')
            if n < 0 or declared_edges < 0:
                raise FormatError("header counts must be non-negative", line=line_no)

        elif tokens[0] == 'e':
            if n is None:
                raise FormatError("edge line before header", line=line_no)
            if len(tokens) != 3:
                raise FormatError("edge line must read 'e <u> <v>'", line=line_no)
            u = _int_field(tokens[1], line_no, 'vertex')
            v = _int_field(tokens[2], line_no, 'vertex')
            for w in (u, v):
                if not 0 <= w < n:
                    raise FormatError(f"vertex {w} out of range 0..{n - 1}", line=line_no)
            if u == v:
                raise FormatError(f"self-loop at vertex {u}", line=line_no)
            edges.add((min(u, v), max(u, v)))
            edge_lines += 1

        else:
            raise FormatError(f"unknown line type {tokens[0]!r}", line=line_no)

    if n is None:
        raise FormatError("missing 'p cf <n> <m>' header")
    if edge_lines != declared_edges:
        logger.warning(f"Header declares {declared_edges} edges but {edge_lines} edge lines were read")

    return Graph.from_edges(n, edges)


def write_graph(g: Graph, comments=()) -> str:
    """Canonical serialization: header, then edges sorted lexicographically"""
    lines = [f"c {comment}" for comment in comments]
    lines.append(f"p cf {g.n} {g.m}")
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
