"""Small named graphs and hypothesis strategies shared by the app tests."""

import itertools

from hypothesis import strategies as st

from apps.coloring.models import Coloring
from apps.graphs.models import Graph


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def empty(n: int) -> Graph:
    return Graph.from_edges(n, [])


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def colored_graphs(draw, max_n: int = 8, max_colors: int = 4):
    g = draw(graphs(max_n=max_n))
    colors = draw(st.lists(st.integers(0, max_colors - 1), min_size=g.n, max_size=g.n))
    return Coloring(g, tuple(colors))


@st.composite
def permutations_of(draw, n: int):
    return draw(st.permutations(list(range(n))))
