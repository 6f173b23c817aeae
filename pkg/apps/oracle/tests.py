import itertools

from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.coloring.models import Coloring, Variant
from apps.coloring.services import verify
from apps.core.exceptions import PreconditionError, SizeGuardError
from apps.core.testing import complete, cycle, empty, graphs, path
from apps.graphs.models import Graph

from .services import ConstraintSearch, decide_cf, exact_cf


def brute_force(g: Graph, variant: Variant):
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if verify(Coloring(g, colors), variant):
                return k
    return None


class ExactOracleTestCase(SimpleTestCase):
    """Test cases for exact_cf"""

    def test_small_named_graphs(self):
        """Test the conflict-free chromatic numbers of K2, P3, K3 and C4"""
        expected = [
            (complete(2), Variant.CLOSED, 2),
            (complete(2), Variant.OPEN, 1),
            (path(3), Variant.CLOSED, 2),
            (path(3), Variant.OPEN, 2),
            (complete(3), Variant.CLOSED, 2),
            (complete(3), Variant.OPEN, 3),
            (cycle(4), Variant.CLOSED, 2),
            (cycle(4), Variant.OPEN, 2),
        ]
        for g, variant, chromatic in expected:
            with self.subTest(g=str(g), variant=variant.value):
                result = exact_cf(g, variant)
                self.assertEqual(result.chromatic, chromatic)
                self.assertTrue(verify(result.witness, variant))
                self.assertEqual(result.witness.size, chromatic)

    def test_open_with_isolated_vertex_is_infeasible(self):
        """Test CF-ON on an isolated vertex reports infeasibility"""
        result = exact_cf(empty(1), Variant.OPEN)
        self.assertTrue(result.infeasible)
        self.assertIsNone(result.chromatic)
        self.assertEqual(exact_cf(empty(1), Variant.CLOSED).chromatic, 1)

    def test_empty_graph(self):
        """Test zero vertices need zero colors"""
        self.assertEqual(exact_cf(empty(0), Variant.CLOSED).chromatic, 0)

    def test_size_guard(self):
        """Test graphs above the limit are refused"""
        with self.assertRaises(SizeGuardError):
            exact_cf(path(17), Variant.CLOSED)
        self.assertEqual(exact_cf(path(5), Variant.CLOSED, limit=5).chromatic, 2)

    @override_settings(CFCOLOR={'ORACLE_LIMIT': 4})
    def test_limit_read_from_settings(self):
        """Test the default limit follows settings"""
        with self.assertRaises(SizeGuardError):
            exact_cf(path(5), Variant.CLOSED)

    def test_max_k_caps_search(self):
        """Test a cap below the optimum leaves the answer open"""
        result = exact_cf(complete(3), Variant.OPEN, max_k=2)
        self.assertIsNone(result.chromatic)
        self.assertFalse(result.infeasible)

    @given(graphs(max_n=5), st.sampled_from(list(Variant)))
    @settings(max_examples=60, deadline=None)
    def test_matches_brute_force(self, g, variant):
        """Test pruned search agrees with plain enumeration"""
        result = exact_cf(g, variant)
        if variant is Variant.OPEN and g.isolated_vertices():
            self.assertTrue(result.infeasible)
        else:
            self.assertEqual(result.chromatic, brute_force(g, variant))


class DecisionTestCase(SimpleTestCase):
    """Test cases for decide_cf and the constraint search"""

    def test_examples(self):
        """Test K3 open with 2 colors, C4 closed with 2 colors, any edge with 1 color"""
        self.assertEqual(decide_cf(complete(3), Variant.OPEN, 2), (False, None))
        feasible, witness = decide_cf(cycle(4), Variant.CLOSED, 2)
        self.assertTrue(feasible)
        self.assertTrue(verify(witness, Variant.CLOSED))
        self.assertFalse(decide_cf(Graph.from_edges(3, [(0, 1)]), Variant.CLOSED, 1)[0])

    def test_k_must_be_positive(self):
        """Test k = 0 is a precondition error"""
        with self.assertRaises(PreconditionError):
            decide_cf(path(2), Variant.CLOSED, 0)

    def test_empty_constraint_is_unsatisfiable(self):
        """Test a constraint over no vertices can never hold"""
        self.assertIsNone(ConstraintSearch(2, [[0, 1], []], 3).run())

    def test_search_counts_nodes(self):
        """Test the search records how much it explored"""
        search = ConstraintSearch(3, [[0, 1, 2]], 2)
        self.assertIsNotNone(search.run())
        self.assertGreater(search.nodes, 0)
