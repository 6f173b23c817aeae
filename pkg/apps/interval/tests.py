from fractions import Fraction

import pytest
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.coloring.models import Optimality, Variant
from apps.coloring.services import verify
from apps.core.exceptions import FormatError, PreconditionError
from apps.core.testing import complete, path
from apps.generators.models import GenClass, GenSpec
from apps.generators.services import gen
from apps.graphs.models import Graph
from apps.oracle.services import decide_cf

from .models import Interval, IntervalRepresentation
from .serializers import parse_intervals, write_intervals
from .services import cfcn_interval, cfon_interval, intersection_graph, solve_interval, validate_representation

P4_REP = IntervalRepresentation.from_pairs([(0, 2), (1, 4), (3, 6), (5, 7)])


def staircase(n: int) -> IntervalRepresentation:
    return IntervalRepresentation.from_pairs([(2 * i, 2 * i + 3) for i in range(n)])


class RepresentationTestCase(SimpleTestCase):
    """Test cases for interval representations"""

    def test_interval_needs_left_below_right(self):
        """Test a degenerate interval is rejected"""
        with self.assertRaises(PreconditionError):
            Interval(Fraction(2), Fraction(2))

    def test_validate_examples(self):
        """Test the P4 staircase, disjoint K2 intervals and a shared endpoint"""
        self.assertTrue(validate_representation(path(4), P4_REP))
        verdict = validate_representation(complete(2), IntervalRepresentation.from_pairs([(0, 1), (2, 3)]))
        self.assertFalse(verdict)
        self.assertEqual(verdict.pair, (0, 1))
        shared = validate_representation(complete(2), IntervalRepresentation.from_pairs([(0, 2), (2, 3)]))
        self.assertFalse(shared)
        self.assertIn('shared', shared.reason)

    def test_wrong_count(self):
        """Test a representation must cover every vertex"""
        self.assertFalse(validate_representation(path(5), P4_REP))

    def test_intersection_graph(self):
        """Test the intersection graph of the P4 staircase"""
        self.assertEqual(intersection_graph(P4_REP), path(4))
        self.assertEqual(intersection_graph(staircase(6)), path(6))


class ClosedSweepTestCase(SimpleTestCase):
    """Test cases for the CF-CN interval sweep"""

    def test_single_edge(self):
        """Test K2 gets colors 1 and 2"""
        rep = IntervalRepresentation.from_pairs([(0, 2), (1, 3)])
        outcome = cfcn_interval(complete(2), rep)
        self.assertEqual(outcome.coloring.assignment, (1, 2))
        self.assertEqual(outcome.optimality, Optimality.EXACT)

    def test_path_four(self):
        """Test P4 gets 1, 2, 3, 1"""
        outcome = cfcn_interval(path(4), P4_REP)
        self.assertEqual(outcome.coloring.assignment, (1, 2, 3, 1))
        self.assertEqual(outcome.optimality, Optimality.UPPER_BOUND)

    def test_nested_triangle(self):
        """Test K3 as nested intervals starts from the rightmost interval"""
        rep = IntervalRepresentation.from_pairs([(0, 5), (1, 4), (2, 3)])
        outcome = cfcn_interval(complete(3), rep)
        self.assertEqual(outcome.coloring.assignment, (1, 0, 0))

    def test_errors(self):
        """Test a bad representation, a disconnected graph and an edgeless graph"""
        with self.assertRaises(PreconditionError):
            cfcn_interval(complete(2), IntervalRepresentation.from_pairs([(0, 1), (2, 3)]))
        two_edges = Graph.from_edges(4, [(0, 1), (2, 3)])
        rep = IntervalRepresentation.from_pairs([(0, 2), (1, 3), (4, 6), (5, 7)])
        with self.assertRaises(PreconditionError):
            cfcn_interval(two_edges, rep)
        with self.assertRaises(PreconditionError):
            cfcn_interval(Graph.from_edges(1, []), IntervalRepresentation.from_pairs([(0, 1)]))


class OpenSweepTestCase(SimpleTestCase):
    """Test cases for the CF-ON interval sweep"""

    def test_contained_interval(self):
        """Test P3 whose center contains its right end"""
        rep = IntervalRepresentation.from_pairs([(0, 2), (1, 5), (3, 4)])
        outcome = cfon_interval(path(3), rep)
        self.assertEqual(outcome.coloring.assignment, (1, 2, 0))

    def test_nested_triangle(self):
        """Test the rightmost interval colors its first contained neighbor 2"""
        rep = IntervalRepresentation.from_pairs([(0, 5), (1, 4), (2, 3)])
        self.assertEqual(cfon_interval(complete(3), rep).coloring.assignment, (1, 2, 0))

    def test_contained_neighbor_already_colored(self):
        """Test the rightmost interval keeps a zero already given to its contained neighbor"""
        rep = IntervalRepresentation.from_pairs([(0, 2), (1, 4), (3, 8), (6, 10), (7, Fraction(15, 2))])
        outcome = cfon_interval(intersection_graph(rep), rep)
        self.assertEqual(outcome.coloring.assignment, (1, 2, 3, 1, 0))
        self.assertTrue(verify(outcome.coloring, Variant.OPEN))

    def test_path_four(self):
        """Test P4 under open neighborhoods"""
        outcome = cfon_interval(path(4), P4_REP)
        self.assertTrue(verify(outcome.coloring, Variant.OPEN))
        self.assertLessEqual(outcome.colors_used, 4)

    def test_needs_two_edges(self):
        """Test a single edge is refused"""
        with self.assertRaises(PreconditionError):
            cfon_interval(complete(2), IntervalRepresentation.from_pairs([(0, 2), (1, 3)]))

    @given(st.integers(3, 50))
    @settings(max_examples=48, deadline=None)
    def test_staircase_paths(self, n):
        """Test both sweeps on staircase paths stay within four colors"""
        for variant in Variant:
            outcome = solve_interval(path(n), staircase(n), variant)
            self.assertLessEqual(outcome.colors_used, 4)

    def check_instance(self, n, seed):
        instance = gen(GenSpec(GenClass.INTERVAL, n, seed=seed))
        for variant in Variant:
            outcome = solve_interval(instance.graph, instance.representation, variant)
            self.assertTrue(verify(outcome.coloring, variant))
            self.assertLessEqual(outcome.colors_used, 4)
            if n <= 10:
                self.assertFalse(decide_cf(instance.graph, variant, 1)[0])

    @given(st.integers(3, 50), st.integers(0, 10_000))
    @settings(max_examples=100, deadline=None)
    def test_random_interval_graphs(self, n, seed):
        """Test both sweeps on generated connected interval graphs"""
        self.check_instance(n, seed)

    @pytest.mark.slow
    def test_thousand_seeded_instances(self):
        """Test a thousand seeded instances with 3 to 50 vertices, one color never enough up to 10"""
        for seed in range(1000):
            n = 3 + seed % 48
            with self.subTest(n=n, seed=seed):
                self.check_instance(n, seed)


class IntervalSerializerTestCase(SimpleTestCase):
    """Test cases for interval files"""

    def test_parse_rationals(self):
        """Test integer, decimal and fraction endpoints"""
        rep = parse_intervals("c stairs\ni 0 0 1/2\ni 1 0.25 3\n", 2)
        self.assertEqual(rep[0].right, Fraction(1, 2))
        self.assertEqual(rep[1].left, Fraction(1, 4))

    def test_write_then_parse(self):
        """Test written intervals read back unchanged"""
        self.assertEqual(parse_intervals(write_intervals(P4_REP), 4), P4_REP)

    def test_errors(self):
        """Test malformed, duplicate, out-of-range, missing and degenerate lines"""
        for text in ("i 0 1\n", "i 0 0 1\ni 0 2 3\n", "i 5 0 1\n", "i 0 0 1\n", "i 0 x 1\ni 1 2 3\n",
                     "i 0 3 1\ni 1 4 5\n"):
            with self.subTest(text=text):
                with self.assertRaises(FormatError):
                    parse_intervals(text, 2)
