import itertools

from django.test import SimpleTestCase
from hypothesis import given, settings

from apps.core.exceptions import FormatError, PreconditionError
from apps.core.testing import complete, cycle, empty, graphs, path, star
from apps.graphs.models import Graph

from .models import GraphClass, Modulator, NodeKind, ResidualClass, SplitPartition
from .serializers import parse_modulator, write_modulator
from .services import (
    alternative_split_partitions,
    bipartition,
    check_modulator,
    cluster_cliques,
    cluster_modulator,
    find_induced_p3,
    find_threshold_obstruction,
    is_cograph,
    modular_decomposition,
    rebuild_from_elimination,
    recognize,
    split_partition,
    threshold_elimination,
    threshold_modulator,
)


def has_induced_p4(g: Graph) -> bool:
    for quad in itertools.combinations(g.vertices, 4):
        degrees = sorted(sum(1 for w in quad if g.has_edge(v, w)) for v in quad)
        if degrees == [1, 1, 2, 2]:
            return True
    return False


def two_k2() -> Graph:
    return Graph.from_edges(4, [(0, 1), (2, 3)])


class RecognizeTestCase(SimpleTestCase):
    """Test cases for class recognition"""

    def test_labels(self):
        """Test the labels of P4, K3 and C4"""
        self.assertEqual(recognize(path(4)).labels, {GraphClass.BIPARTITE, GraphClass.SPLIT})
        self.assertEqual(
            recognize(complete(3)).labels,
            {GraphClass.CLUSTER, GraphClass.SPLIT, GraphClass.THRESHOLD, GraphClass.COGRAPH},
        )
        self.assertEqual(recognize(cycle(4)).labels, {GraphClass.BIPARTITE, GraphClass.COGRAPH})

    def test_general_only_when_nothing_else(self):
        """Test C5 is labeled general"""
        recognition = recognize(cycle(5))
        self.assertEqual(recognition.labels, {GraphClass.GENERAL})
        self.assertIsNone(recognition.decomposition)

    def test_certificates_validate(self):
        """Test the attached certificates hold on the input"""
        recognition = recognize(path(4))
        self.assertTrue(recognition.split.is_valid_for(path(4)))
        side_a, side_b = recognition.bipartition
        self.assertEqual(side_a, {0, 2})
        self.assertEqual(side_b, {1, 3})

    def test_bipartition_normalized_per_component(self):
        """Test every component's smallest vertex lands on side A"""
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        self.assertEqual(bipartition(g), (frozenset({0, 2}), frozenset({1, 3})))
        self.assertIsNone(bipartition(complete(3)))

    def test_cluster_cliques(self):
        """Test cliques of a cluster graph and rejection of P3"""
        g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 4)])
        self.assertEqual(cluster_cliques(g), (frozenset({0, 1, 2}), frozenset({3, 4})))
        self.assertIsNone(cluster_cliques(path(3)))


class SplitRecognitionTestCase(SimpleTestCase):
    """Test cases for split partitions"""

    def test_path_partition(self):
        """Test P4 splits into its middle edge and its ends"""
        p = split_partition(path(4))
        self.assertEqual(p, SplitPartition(frozenset({1, 2}), frozenset({0, 3})))

    def test_non_split(self):
        """Test C4 and 2K2 are not split"""
        self.assertIsNone(split_partition(cycle(4)))
        self.assertIsNone(split_partition(two_k2()))

    def test_clique_is_maximum(self):
        """Test a vertex seeing the whole clique is moved into it"""
        p = split_partition(complete(3))
        self.assertEqual(p.clique, {0, 1, 2})

    def test_alternatives_are_valid_and_distinct(self):
        """Test alternative partitions of a star"""
        g = star(3)
        p = split_partition(g)
        alternatives = alternative_split_partitions(g, p)
        self.assertEqual(alternatives[0], p)
        self.assertEqual(len(set(alternatives)), len(alternatives))
        self.assertTrue(all(q.is_valid_for(g) for q in alternatives))
        self.assertIn(SplitPartition(frozenset({0, 1}), frozenset({2, 3})), alternatives)

    @given(graphs(max_n=7))
    @settings(max_examples=80, deadline=None)
    def test_partition_valid_whenever_returned(self, g):
        """Test every returned partition is a split partition"""
        p = split_partition(g)
        if p is not None:
            self.assertTrue(p.is_valid_for(g))


class ThresholdRecognitionTestCase(SimpleTestCase):
    """Test cases for threshold elimination"""

    def test_star_is_threshold(self):
        """Test a star strips its center first"""
        order = threshold_elimination(star(3))
        self.assertEqual(order[0], (0, 'universal'))

    def test_obstructions(self):
        """Test P4, C4 and 2K2 are not threshold"""
        for g in (path(4), cycle(4), two_k2()):
            with self.subTest(g=str(g)):
                self.assertIsNone(threshold_elimination(g))

    @given(graphs(max_n=7))
    @settings(max_examples=80, deadline=None)
    def test_elimination_rebuilds_graph(self, g):
        """Test replaying an elimination order gives back the graph"""
        order = threshold_elimination(g)
        if order is not None:
            self.assertEqual(rebuild_from_elimination(g.n, order), g)
        else:
            self.assertIsNotNone(find_threshold_obstruction(g, frozenset(g.vertices)))


class ModularDecompositionTestCase(SimpleTestCase):
    """Test cases for the modular decomposition tree"""

    def test_path_three(self):
        """Test P3 is a series join of the center with a parallel pair"""
        tree = modular_decomposition(path(3))
        self.assertIs(tree.kind, NodeKind.SERIES)
        self.assertEqual([child.members for child in tree.children], [{0, 2}, {1}])
        self.assertIs(tree.children[0].kind, NodeKind.PARALLEL)
        self.assertIs(tree.children[1].kind, NodeKind.LEAF)

    def test_triangle(self):
        """Test K3 is a series node over three leaves"""
        tree = modular_decomposition(complete(3))
        self.assertIs(tree.kind, NodeKind.SERIES)
        self.assertEqual(len(tree.children), 3)

    def test_path_four_is_prime(self):
        """Test P4 has a prime root"""
        tree = modular_decomposition(path(4))
        self.assertIs(tree.kind, NodeKind.PRIME)
        self.assertFalse(is_cograph(path(4)))

    def test_empty_graph(self):
        """Test there is no tree for the empty graph"""
        self.assertIsNone(modular_decomposition(empty(0)))

    def test_representative_graph(self):
        """Test the quotient of P3's root is an edge and shows in the rendered tree"""
        tree = modular_decomposition(path(3))
        self.assertEqual(tree.representative_graph(path(3)).edges, ((0, 1),))
        lines = tree.render(path(3)).splitlines()
        self.assertEqual(lines[:2], ['series {0,1,2} quotient 0-1', '  parallel {0,2} quotient none'])

    @given(graphs(max_n=7))
    @settings(max_examples=80, deadline=None)
    def test_tree_properties(self, g):
        """Test leaves cover modules, series joins, parallel separation, and the P4 test"""
        tree = modular_decomposition(g)
        for node in tree.walk():
            if node.children:
                self.assertEqual(frozenset().union(*(c.members for c in node.children)), node.members)
            for left, right in itertools.combinations(node.children, 2):
                pairs = [(u, v) for u in left.members for v in right.members]
                if node.kind is NodeKind.SERIES:
                    self.assertTrue(all(g.has_edge(u, v) for u, v in pairs))
                if node.kind is NodeKind.PARALLEL:
                    self.assertFalse(any(g.has_edge(u, v) for u, v in pairs))
        self.assertEqual(tree.members, frozenset(g.vertices))
        self.assertEqual(is_cograph(g), not has_induced_p4(g))


class ModulatorTestCase(SimpleTestCase):
    """Test cases for modulator search"""

    def test_cluster_modulator(self):
        """Test cluster modulators of a cluster graph, P3 and C5"""
        self.assertEqual(cluster_modulator(complete(3), 0).deleted, frozenset())
        self.assertEqual(cluster_modulator(path(3), 1).deleted, {0})
        self.assertIsNone(cluster_modulator(cycle(5), 1))
        self.assertEqual(cluster_modulator(cycle(5), 2).d, 2)

    def test_threshold_modulator(self):
        """Test threshold modulators of a star, C4 and 2K2"""
        self.assertEqual(threshold_modulator(star(3), 0).deleted, frozenset())
        self.assertEqual(threshold_modulator(cycle(4), 1).deleted, {0})
        self.assertEqual(threshold_modulator(two_k2(), 1).deleted, {0})

    def test_negative_budget(self):
        """Test a negative budget is rejected"""
        with self.assertRaises(PreconditionError):
            cluster_modulator(path(3), -1)

    def test_induced_p3(self):
        """Test the first induced P3 is found in lexicographic order"""
        self.assertEqual(find_induced_p3(path(4), frozenset(range(4))), (0, 1, 2))
        self.assertIsNone(find_induced_p3(complete(4), frozenset(range(4))))

    def test_check_modulator(self):
        """Test a wrong modulator is refused"""
        check_modulator(path(3), Modulator(frozenset({1}), ResidualClass.CLUSTER))
        with self.assertRaises(PreconditionError):
            check_modulator(path(4), Modulator(frozenset(), ResidualClass.CLUSTER))

    @given(graphs(max_n=7))
    @settings(max_examples=40, deadline=None)
    def test_modulator_is_minimum(self, g):
        """Test no smaller cluster modulator exists than the one returned"""
        found = cluster_modulator(g, g.n)
        check_modulator(g, found)
        if found.d > 0:
            self.assertIsNone(cluster_modulator(g, found.d - 1))


class ModulatorSerializerTestCase(SimpleTestCase):
    """Test cases for modulator files"""

    def test_round_trip(self):
        """Test a written modulator reads back"""
        m = Modulator(frozenset({3, 1}), ResidualClass.THRESHOLD)
        self.assertEqual(parse_modulator(write_modulator(m), path(5)), m)

    def test_class_from_caller(self):
        """Test the class line may be supplied by the caller"""
        m = parse_modulator("x 2\n", path(5), ResidualClass.CLUSTER)
        self.assertEqual(m.deleted, {2})

    def test_errors(self):
        """Test bad lines, out-of-range vertices and a class mismatch"""
        for text, cls in [("x 9\nclass cluster\n", None), ("y 1\n", ResidualClass.CLUSTER),
                          ("class threshold\n", ResidualClass.CLUSTER), ("x 1\n", None)]:
            with self.subTest(text=text):
                with self.assertRaises(FormatError):
                    parse_modulator(text, path(5), cls)
