import networkx as nx
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.core.exceptions import FormatError, InvalidVertexError, PreconditionError
from apps.core.testing import complete, empty, graphs, path

from .models import Graph
from .serializers import parse_graph, write_graph
from .services import (
    closed_neighborhood,
    connected_components,
    delete_vertices,
    induced_subgraph,
    is_connected,
    open_neighborhood,
)


class GraphModelTestCase(SimpleTestCase):
    """Test cases for the Graph record"""

    def test_from_edges_canonicalizes(self):
        """Test duplicate and reversed edges collapse to one sorted pair"""
        g = Graph.from_edges(3, [(1, 0), (0, 1), (2, 1)])
        self.assertEqual(g.edges, ((0, 1), (1, 2)))
        self.assertEqual(g.m, 2)

    def test_self_loop_rejected(self):
        """Test a self-loop raises"""
        with self.assertRaises(PreconditionError):
            Graph.from_edges(2, [(1, 1)])

    def test_out_of_range_endpoint(self):
        """Test edge endpoints must be vertex ids"""
        with self.assertRaises(InvalidVertexError):
            Graph.from_edges(2, [(0, 2)])

    def test_adjacency_is_symmetric_and_read_only(self):
        """Test the adjacency matrix mirrors every edge and cannot be written"""
        g = path(4)
        self.assertTrue((g.adjacency == g.adjacency.T).all())
        with self.assertRaises(ValueError):
            g.adjacency[0, 3] = True

    def test_complement_of_path(self):
        """Test the complement of P4 is again a P4"""
        self.assertTrue(nx.is_isomorphic(path(4).complement().to_networkx(), path(4).to_networkx()))

    def test_networkx_round_trip_relabels_sorted(self):
        """Test networkx nodes are relabeled in sorted order"""
        nx_graph = nx.Graph([('b', 'c'), ('a', 'b')])
        g = Graph.from_networkx(nx_graph)
        self.assertEqual(g.edges, ((0, 1), (1, 2)))

    @given(graphs())
    @settings(max_examples=60, deadline=None)
    def test_degree_sum(self, g):
        """Test the handshake identity"""
        self.assertEqual(sum(g.degree(v) for v in g.vertices), 2 * g.m)


class NeighborhoodTestCase(SimpleTestCase):
    """Test cases for open and closed neighborhoods"""

    def test_open_neighborhoods(self):
        """Test N(v) on a path center, a clique and an isolated vertex"""
        self.assertEqual(open_neighborhood(path(3), 1), {0, 2})
        self.assertEqual(open_neighborhood(complete(3), 0), {1, 2})
        self.assertEqual(open_neighborhood(empty(1), 0), frozenset())

    def test_closed_neighborhoods(self):
        """Test N[v] adds v itself"""
        self.assertEqual(closed_neighborhood(path(3), 1), {0, 1, 2})
        self.assertEqual(closed_neighborhood(complete(2), 0), {0, 1})
        self.assertEqual(closed_neighborhood(empty(2), 1), {1})

    def test_invalid_vertex(self):
        """Test an unknown vertex id raises"""
        with self.assertRaises(InvalidVertexError):
            open_neighborhood(path(3), 3)

    @given(graphs(), st.data())
    @settings(max_examples=60, deadline=None)
    def test_closed_is_open_plus_self(self, g, data):
        """Test N[v] = N(v) ∪ {v}"""
        v = data.draw(st.integers(0, g.n - 1))
        self.assertEqual(closed_neighborhood(g, v), open_neighborhood(g, v) | {v})


class ComponentsTestCase(SimpleTestCase):
    """Test cases for components and subgraphs"""

    def test_components(self):
        """Test components come out ordered by smallest member"""
        self.assertEqual(connected_components(complete(2)), [{0, 1}])
        two_edges = Graph.from_edges(4, [(2, 3), (0, 1)])
        self.assertEqual(connected_components(two_edges), [{0, 1}, {2, 3}])
        self.assertEqual(connected_components(empty(3)), [{0}, {1}, {2}])

    def test_is_connected(self):
        """Test the empty graph is not connected"""
        self.assertTrue(is_connected(path(5)))
        self.assertFalse(is_connected(empty(0)))
        self.assertFalse(is_connected(empty(2)))

    def test_induced_subgraph(self):
        """Test induced subgraphs and the relabeling map"""
        sub, relabel = induced_subgraph(complete(3), {0, 1})
        self.assertEqual(sub.edges, ((0, 1),))
        sub, relabel = induced_subgraph(path(3), {0, 2})
        self.assertEqual((sub.n, sub.m), (2, 0))
        self.assertEqual(relabel, {0: 0, 2: 1})

    def test_induced_subgraph_invalid_member(self):
        """Test subgraphs reject unknown vertices"""
        with self.assertRaises(InvalidVertexError):
            induced_subgraph(path(3), {5})

    @given(graphs())
    @settings(max_examples=40, deadline=None)
    def test_induced_on_everything_is_identity(self, g):
        """Test G[V(G)] = G"""
        sub, _ = induced_subgraph(g, g.vertices)
        self.assertEqual(sub, g)

    def test_delete_vertices(self):
        """Test vertex deletion relabels the survivors in order"""
        remaining, relabel = delete_vertices(path(4), {1})
        self.assertEqual(remaining.edges, ((1, 2),))
        self.assertEqual(relabel, {0: 0, 2: 1, 3: 2})


class GraphSerializerTestCase(SimpleTestCase):
    """Test cases for the graph file codec"""

    def test_parse_examples(self):
        """Test K2, P3 and K3 parse"""
        self.assertEqual(parse_graph("p cf 2 1\ne 0 1\n"), complete(2))
        self.assertEqual(parse_graph("c a path\np cf 3 2\ne 0 1\ne 1 2\n"), path(3))
        self.assertEqual(parse_graph("p cf 3 3\ne 0 1\ne 1 2\ne 0 2\n"), complete(3))

    def test_write_is_canonical(self):
        """Test output re-parses to the same graph with sorted edge lines"""
        text = write_graph(Graph.from_edges(3, [(2, 1), (1, 0)]), comments=['x'])
        self.assertEqual(text, "c x\np cf 3 2\ne 0 1\ne 1 2\n")
        self.assertEqual(parse_graph(text).edges, ((0, 1), (1, 2)))

    def test_errors_name_the_line(self):
        """Test malformed header, range and self-loop errors carry line numbers"""
        cases = [
            ("p graph 2 1\n", 1),
            ("p cf 2 1\ne 0 2\n", 2),
            ("p cf 2 1\n\ne 1 1\n", 3),
            ("e 0 1\n", 1),
            ("p cf 2 1\nq 0 1\n", 2),
        ]
        for text, line in cases:
            with self.subTest(text=text):
                with self.assertRaises(FormatError) as ctx:
                    parse_graph(text)
                self.assertEqual(ctx.exception.line, line)

    def test_missing_header(self):
        """Test a file without a header is rejected"""
        with self.assertRaises(FormatError):
            parse_graph("c nothing here\n")
