"""Modulator files and command-line vertex lists.

    c <comment>
    class cluster|threshold
    x <vertex>

On the command line a modulator is a comma-separated list such as ``3,7``.
"""

from typing import Optional, Set

from apps.core.exceptions import FormatError, InvalidVertexError
from apps.graphs.models import Graph

from .models import Modulator, ResidualClass


def parse_modulator(text: str, host: Graph, residual_class: Optional[ResidualClass] = None) -> Modulator:
    """Read a modulator; ``residual_class`` fills in a missing ``class`` line"""
    found_class = None
    deleted: Set[int] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == 'c':
            continue
        if tokens[0] == 'class' and len(tokens) == 2:
            try:
                found_class = ResidualClass(tokens[1])
            except ValueError:
                raise FormatError(f"unknown residual class {tokens[1]!r}", line=line_no)
        elif tokens[0] == 'x' and len(tokens) == 2:
            try:
                v = int(tokens[1])
            except ValueError:
                raise FormatError(f"vertex id {tokens[1]!r} is not an integer", line=line_no)
            if not 0 <= v < host.n:
                raise FormatError(str(InvalidVertexError(v, host.n)), line=line_no)
            if v in deleted:
                raise FormatError(f"vertex {v} listed twice", line=line_no)
            deleted.add(v)
        else:
            raise FormatError(f"expected 'class <name>' or 'x <vertex>', got {raw.strip()!r}", line=line_no)

    if residual_class is not None and found_class is not None and found_class is not residual_class:
        raise FormatError(f"file declares a {found_class.value} modulator, {residual_class.value} was requested")
    chosen = found_class or residual_class
    if chosen is None:
        raise FormatError("modulator file has no 'class' line")
    return Modulator(frozenset(deleted), chosen)


def write_modulator(modulator: Modulator) -> str:
    lines = [f"c d={modulator.d}", f"class {modulator.residual_class.value}"]
    lines.extend(f"x {v}" for v in modulator.ordered)
    return "\n".join(lines) + "\n"


def parse_vertex_list(value: str, host: Graph, residual_class: ResidualClass) -> Modulator:
    """``3,7`` -> X = {3, 7}; an empty string is the empty modulator"""
    deleted: Set[int] = set()
    for token in filter(None, (t.strip() for t in value.split(','))):
        try:
            v = int(token)
        except ValueError:
            raise FormatError(f"modulator vertex {token!r} is not an integer")
        if not 0 <= v < host.n:
            raise InvalidVertexError(v, host.n)
        if v in deleted:
            raise FormatError(f"modulator vertex {v} listed twice")
        deleted.add(v)
    return Modulator(frozenset(deleted), residual_class)
