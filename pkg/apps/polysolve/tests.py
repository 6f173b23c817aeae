import pytest
from django.test import SimpleTestCase
from hypothesis import given, settings

from apps.classes.models import Modulator, ResidualClass, SplitPartition
from apps.classes.services import bipartition, cluster_modulator, modular_decomposition, recognize, split_partition
from apps.coloring.models import Optimality, Variant
from apps.coloring.services import verify
from apps.core.exceptions import InfeasibleError, PreconditionError
from apps.core.testing import complete, cycle, empty, graphs, path, star
from apps.generators.services import enumerate_small, enumerate_split
from apps.graphs.models import Graph
from apps.oracle.services import exact_cf

from .services import (
    color_by_components,
    lemma1_cfcn,
    lemma1_cfon,
    solve_auto,
    solve_bipartite_cfcn,
    solve_cograph,
    solve_split_cfcn,
    solve_with_tree,
    split_three_coloring,
)


def cluster_x(*vertices) -> Modulator:
    return Modulator(frozenset(vertices), ResidualClass.CLUSTER)


class BipartiteSolverTestCase(SimpleTestCase):
    """Test cases for the bipartite CF-CN 2-coloring"""

    def test_examples(self):
        """Test K2, P3 and C4 get side colors"""
        for g, expected in [(complete(2), (0, 1)), (path(3), (0, 1, 0)), (cycle(4), (0, 1, 0, 1))]:
            with self.subTest(g=str(g)):
                outcome = solve_bipartite_cfcn(g, bipartition(g))
                self.assertEqual(outcome.coloring.assignment, expected)
                self.assertEqual(outcome.optimality, Optimality.EXACT)

    def test_invalid_bipartition(self):
        """Test sides that split an edge are rejected"""
        with self.assertRaises(PreconditionError):
            solve_bipartite_cfcn(path(3), (frozenset({0, 1}), frozenset({2})))


class SplitSolverTestCase(SimpleTestCase):
    """Test cases for split graphs"""

    def test_universal_vertex(self):
        """Test a star colors its center 1 and its leaves 0"""
        outcome = solve_split_cfcn(star(3), split_partition(star(3)))
        self.assertEqual(outcome.coloring.assignment, (1, 0, 0, 0))

    def test_one_private_neighbor(self):
        """Test P4 colors its clique 0 and its ends 1"""
        p = SplitPartition(frozenset({1, 2}), frozenset({0, 3}))
        outcome = solve_split_cfcn(path(4), p)
        self.assertEqual(outcome.coloring.assignment, (1, 0, 0, 1))
        self.assertTrue(outcome.is_exact)

    def test_double_star_needs_two_colors(self):
        """Test an edge clique with two leaves on one end and one on the other takes two colors"""
        g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 4)])
        outcome = solve_split_cfcn(g, split_partition(g))
        self.assertEqual(outcome.coloring.assignment, (1, 0, 0, 0, 1))
        self.assertEqual(outcome.colors_used, 2)
        self.assertEqual(exact_cf(g, Variant.CLOSED).chromatic, 2)

    def test_three_colors(self):
        """Test a triangle with a pendant on each corner needs three colors"""
        g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (1, 5)])
        outcome = solve_split_cfcn(g, split_partition(g))
        self.assertEqual(outcome.colors_used, 3)
        self.assertEqual(exact_cf(g, Variant.CLOSED).chromatic, 3)

    def test_alternative_partition_with_isolated_vertex(self):
        """Test K2 plus an isolated vertex is found two-colorable through another partition"""
        g = Graph.from_edges(3, [(0, 1)])
        outcome = solve_split_cfcn(g, split_partition(g))
        self.assertEqual(outcome.colors_used, 2)

    def test_three_coloring_layout(self):
        """Test the three-coloring puts the smallest clique vertex alone"""
        p = SplitPartition(frozenset({1, 2}), frozenset({0, 3}))
        self.assertEqual(split_three_coloring(path(4), p).assignment, (2, 0, 1, 2))

    def test_errors(self):
        """Test an invalid partition and an edgeless graph"""
        with self.assertRaises(PreconditionError):
            solve_split_cfcn(path(4), SplitPartition(frozenset({0, 1}), frozenset({2, 3})))
        with self.assertRaises(PreconditionError):
            solve_split_cfcn(empty(2), SplitPartition(frozenset({0}), frozenset({1})))

    @pytest.mark.slow
    def test_exact_on_all_small_split_graphs(self):
        """Test the solver matches the oracle on every connected split graph up to eight vertices"""
        cases = [(g, split_partition(g)) for g in enumerate_small(7, 'split', smallest=2)]
        cases += list(enumerate_split(8))
        for g, p in cases:
            outcome = solve_split_cfcn(g, p)
            optimum = exact_cf(g, Variant.CLOSED).chromatic
            self.assertEqual(outcome.colors_used, optimum, msg=f"{g.edges}")
            self.assertIn(optimum, (2, 3))


class CographSolverTestCase(SimpleTestCase):
    """Test cases for cographs"""

    def test_universal_vertex_closed(self):
        """Test P3 under closed neighborhoods uses the universal rule"""
        outcome = solve_cograph(path(3), modular_decomposition(path(3)), Variant.CLOSED)
        self.assertEqual(outcome.coloring.assignment, (0, 1, 0))
        self.assertTrue(outcome.is_exact)

    def test_cycle_closed_is_upper_bound(self):
        """Test C4 gets three colors flagged as an upper bound"""
        outcome = solve_cograph(cycle(4), modular_decomposition(cycle(4)), Variant.CLOSED)
        self.assertEqual(outcome.coloring.assignment, (0, 1, 2, 2))
        self.assertEqual(outcome.optimality, Optimality.UPPER_BOUND)

    def test_path_open(self):
        """Test P3 under open neighborhoods gets 0, 1, 2"""
        outcome = solve_cograph(path(3), modular_decomposition(path(3)), Variant.OPEN)
        self.assertEqual(outcome.coloring.assignment, (0, 1, 2))

    def test_errors(self):
        """Test a prime node, a disconnected root and an open single vertex"""
        with self.assertRaises(PreconditionError):
            solve_cograph(path(4), modular_decomposition(path(4)), Variant.CLOSED)
        with self.assertRaises(PreconditionError):
            solve_cograph(empty(2), modular_decomposition(empty(2)), Variant.CLOSED)
        with self.assertRaises(InfeasibleError):
            solve_cograph(empty(1), modular_decomposition(empty(1)), Variant.OPEN)

    def test_components_merge(self):
        """Test disconnected cographs are colored per component"""
        g = Graph.from_edges(5, [(0, 1), (2, 3), (3, 4)])
        outcome = color_by_components(g, lambda sub: solve_with_tree(sub, Variant.CLOSED))
        self.assertTrue(verify(outcome.coloring, Variant.CLOSED))
        self.assertEqual(outcome.colors_used, 2)

    @pytest.mark.slow
    def test_all_small_cographs(self):
        """Test validity and the three-color bound on every connected cograph up to seven vertices"""
        for g in enumerate_small(7, 'cograph', smallest=2):
            tree = modular_decomposition(g)
            for variant in Variant:
                outcome = solve_cograph(g, tree, variant)
                self.assertLessEqual(outcome.colors_used, 3)
            if any(g.is_universal(v) for v in g.vertices):
                self.assertEqual(solve_cograph(g, tree, Variant.CLOSED).colors_used, 2)


class ClusterModulatorConstructionTestCase(SimpleTestCase):
    """Test cases for the cluster-modulator constructions"""

    def test_closed_examples(self):
        """Test K3 without a modulator and a star around its center"""
        self.assertEqual(lemma1_cfcn(complete(3), cluster_x()).coloring.assignment, (0, 1, 1))
        outcome = lemma1_cfcn(star(3), cluster_x(0))
        self.assertEqual(outcome.coloring.assignment, (2, 0, 0, 0))

    def test_open_triangle_corner(self):
        """Test K3 without a modulator takes three colors and is flagged"""
        outcome = lemma1_cfon(complete(3), cluster_x())
        self.assertEqual(outcome.coloring.assignment, (1, 2, 0))
        self.assertEqual(outcome.optimality, Optimality.UPPER_BOUND)
        self.assertTrue(any('exceeds' in note for note in outcome.notes))

    def test_open_examples(self):
        """Test the recoloring of a monochromatic modulator neighborhood"""
        outcome = lemma1_cfon(complete(3), cluster_x(0))
        self.assertEqual(outcome.coloring.assignment, (1, 2, 0))
        outcome = lemma1_cfon(star(3), cluster_x(0))
        self.assertEqual(outcome.coloring.assignment, (1, 2, 0, 0))

    def test_open_rejects_isolated_vertex(self):
        """Test CF-ON with an isolated vertex is infeasible"""
        with self.assertRaises(InfeasibleError):
            lemma1_cfon(Graph.from_edges(3, [(0, 1)]), cluster_x())

    def test_invalid_modulator(self):
        """Test a modulator that leaves a P3 is refused"""
        with self.assertRaises(PreconditionError):
            lemma1_cfcn(path(4), cluster_x())

    @given(graphs(min_n=2, max_n=7))
    @settings(max_examples=60, deadline=None)
    def test_bounds(self, g):
        """Test d+2 and 2d+2 colors around a minimum cluster modulator"""
        modulator = cluster_modulator(g, g.n)
        self.assertLessEqual(lemma1_cfcn(g, modulator).colors_used, modulator.d + 2)
        if not g.isolated_vertices():
            self.assertLessEqual(lemma1_cfon(g, modulator).colors_used, max(2 * modulator.d + 2, 3))


class AutoDispatchTestCase(SimpleTestCase):
    """Test cases for solve_auto"""

    def test_path_goes_through_split(self):
        """Test P4 is two-colored by the split solver"""
        outcome = solve_auto(path(4), Variant.CLOSED)
        self.assertEqual(outcome.strategy, 'split')
        self.assertEqual(outcome.colors_used, 2)

    def test_open_triangle_goes_through_cograph(self):
        """Test K3 under open neighborhoods uses the cograph construction"""
        outcome = solve_auto(complete(3), Variant.OPEN)
        self.assertEqual(outcome.strategy, 'cograph')
        self.assertEqual(outcome.colors_used, 3)

    def test_cycle_five_uses_modulator(self):
        """Test C5 falls through to the cluster modulator construction"""
        outcome = solve_auto(cycle(5), Variant.CLOSED)
        self.assertEqual(outcome.strategy, 'lemma1')
        self.assertLessEqual(outcome.colors_used, 4)

    def test_disconnected(self):
        """Test two disjoint edges are colored per component"""
        outcome = solve_auto(Graph.from_edges(4, [(0, 1), (2, 3)]), Variant.CLOSED)
        self.assertEqual(outcome.coloring.assignment, (0, 1, 0, 1))
        self.assertTrue(outcome.strategy.startswith('components('))

    def test_open_isolated(self):
        """Test an isolated vertex makes CF-ON infeasible"""
        with self.assertRaises(InfeasibleError):
            solve_auto(empty(2), Variant.OPEN)

    def test_no_strategy_applies(self):
        """Test a graph beyond every strategy is refused"""
        with self.assertRaises(PreconditionError):
            solve_auto(cycle(5), Variant.CLOSED, budget=1, limit=4)

    @given(graphs(max_n=7))
    @settings(max_examples=60, deadline=None)
    def test_exact_claims_hold(self, g):
        """Test any outcome flagged exact matches the oracle"""
        for variant in Variant:
            if variant is Variant.OPEN and g.isolated_vertices():
                continue
            outcome = solve_auto(g, variant)
            self.assertTrue(verify(outcome.coloring, variant))
            if outcome.is_exact:
                self.assertEqual(outcome.colors_used, exact_cf(g, variant).chromatic)

    @pytest.mark.slow
    def test_bipartite_matches_oracle(self):
        """Test every connected bipartite graph up to seven vertices gets exactly two colors"""
        for g in enumerate_small(7, 'bipartite', smallest=2):
            outcome = solve_bipartite_cfcn(g, recognize(g).bipartition)
            self.assertEqual(outcome.colors_used, 2)
            self.assertEqual(exact_cf(g, Variant.CLOSED).chromatic, 2)
