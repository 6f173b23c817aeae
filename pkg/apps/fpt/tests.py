import pytest
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.classes.models import Modulator, ResidualClass
from apps.coloring.models import Variant
from apps.coloring.services import verify
from apps.core.exceptions import InfeasibleError, PreconditionError, SizeGuardError
from apps.core.testing import complete, star
from apps.generators.models import GenClass, GenSpec
from apps.generators.services import gen
from apps.graphs.models import Graph
from apps.oracle.services import decide_cf, exact_cf
from apps.polysolve.services import lemma1_cfcn, lemma1_cfon

from .approx import approx_cfcn_threshold, approx_cfon_threshold, approx_threshold
from .serializers import write_provenance
from .services import (
    compute_types,
    kernel_size_bound,
    minimize_via_kernel,
    reduce_cfcn,
    reduce_cfon,
    solve_via_kernel,
)


def cluster_x(*vertices) -> Modulator:
    return Modulator(frozenset(vertices), ResidualClass.CLUSTER)


def threshold_x(*vertices) -> Modulator:
    return Modulator(frozenset(vertices), ResidualClass.THRESHOLD)


def records(text: str, tag: str):
    return [tuple(int(t) for t in line.split()[1:]) for line in text.splitlines() if line.split()[0] == tag]


class TypesTestCase(SimpleTestCase):
    """Test cases for compute_types"""

    def test_one_modulator_vertex(self):
        """Test a clique {a, b} with only a adjacent to x"""
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        (profile,) = compute_types(g, cluster_x(0))
        self.assertEqual(profile.members, (1, 2))
        self.assertEqual(profile.type_for(0).members, (2,))
        self.assertEqual(profile.type_for(1).members, (1,))

    def test_empty_modulator(self):
        """Test d = 0 leaves every clique as one type"""
        profiles = compute_types(complete(3), cluster_x())
        self.assertEqual([[t.mask for t in p.types] for p in profiles], [[0]])

    def test_two_modulator_vertices(self):
        """Test a singleton clique seeing both modulator vertices"""
        g = Graph.from_edges(3, [(0, 2), (1, 2)])
        (profile,) = compute_types(g, cluster_x(0, 1))
        self.assertEqual(profile.type_for(3).members, (2,))

    def test_threshold_modulator_refused(self):
        """Test types need a cluster modulator"""
        with self.assertRaises(PreconditionError):
            compute_types(star(3), threshold_x())


class ReductionTestCase(SimpleTestCase):
    """Test cases for the two reduction rules"""

    def test_type_capping_closed(self):
        """Test K11 around one modulator vertex shrinks to K4 for k = 2"""
        kernel = reduce_cfcn(complete(11), cluster_x(0), 2)
        self.assertEqual(kernel.graph, complete(4))
        self.assertEqual(kernel.kept, (0, 1, 2, 3))
        self.assertEqual([dv.vertex for dv in kernel.deleted_vertices], list(range(4, 11)))
        self.assertEqual(exact_cf(kernel.graph, Variant.CLOSED).chromatic, 2)
        self.assertEqual(exact_cf(complete(11), Variant.CLOSED, limit=11).chromatic, 2)

    def test_type_capping_open(self):
        """Test the open cap is 2k + 1"""
        kernel = reduce_cfon(complete(11), cluster_x(0), 1)
        self.assertEqual(kernel.cap, 3)
        self.assertEqual(kernel.graph.n, 4)

    def test_mega_type_rule(self):
        """Test five identical leaves of a star keep d + 1 = 2 cliques"""
        for variant in Variant:
            with self.subTest(variant=variant.value):
                kernel = reduce_cfcn(star(5), cluster_x(0), 2) if variant is Variant.CLOSED \
                    else reduce_cfon(star(5), cluster_x(0), 2)
                self.assertEqual(kernel.kept, (0, 1, 2))
                self.assertEqual([dc.clique_rep for dc in kernel.deleted_cliques], [3, 4, 5])
                self.assertTrue(all(dc.survivor_rep == 1 for dc in kernel.deleted_cliques))

    def test_fixpoint(self):
        """Test a small instance is left alone"""
        kernel = reduce_cfon(complete(3), cluster_x(), 2)
        self.assertTrue(kernel.is_fixpoint)
        self.assertEqual(kernel.graph, complete(3))

    def test_shortcut(self):
        """Test k = d + 2 is answered by the modulator construction"""
        kernel = reduce_cfcn(complete(11), cluster_x(0), 3)
        self.assertIsNotNone(kernel.shortcut)
        self.assertIs(kernel.graph, kernel.source)

    def test_errors(self):
        """Test k = 0 and an isolated vertex under open neighborhoods"""
        with self.assertRaises(PreconditionError):
            reduce_cfcn(complete(3), cluster_x(), 0)
        with self.assertRaises(InfeasibleError):
            reduce_cfon(Graph.from_edges(3, [(0, 1)]), cluster_x(), 2)

    def test_size_bound(self):
        """Test the kernel bound formula"""
        self.assertEqual(kernel_size_bound(0, 2, Variant.CLOSED), 4 * 1 * 1 * 3)
        self.assertEqual(kernel_size_bound(1, 1, 'on'), 1 + 9 * 2 * 2 * 3)


class KernelDecisionTestCase(SimpleTestCase):
    """Test cases for deciding through the kernel and lifting"""

    def test_clique_lifts(self):
        """Test the K11 kernel answers YES and lifts to a two-coloring"""
        decision = solve_via_kernel(complete(11), cluster_x(0), Variant.CLOSED, 2)
        self.assertTrue(decision.feasible)
        self.assertTrue(verify(decision.coloring, Variant.CLOSED))
        self.assertEqual(decision.coloring.size, 2)

    def test_star_lifts(self):
        """Test the star kernel lifts through copied cliques"""
        for variant in Variant:
            with self.subTest(variant=variant.value):
                decision = solve_via_kernel(star(5), cluster_x(0), variant, 2)
                self.assertTrue(decision.feasible)
                self.assertTrue(verify(decision.coloring, variant))
                self.assertLessEqual(decision.coloring.size, 2)

    def test_open_triangle_no(self):
        """Test K3 with no modulator has no open two-coloring"""
        decision = solve_via_kernel(complete(3), cluster_x(), Variant.OPEN, 2)
        self.assertFalse(decision.feasible)
        self.assertIsNone(decision.coloring)
        self.assertEqual(decision.kernel.graph, complete(3))

    def test_size_guard(self):
        """Test kernels above the limit are refused"""
        with self.assertRaises(SizeGuardError):
            solve_via_kernel(complete(11), cluster_x(0), Variant.CLOSED, 2, limit=3)

    def test_minimize(self):
        """Test the smallest feasible k of a star"""
        outcome = minimize_via_kernel(star(5), cluster_x(0), Variant.CLOSED)
        self.assertEqual(outcome.colors_used, 2)
        self.assertTrue(outcome.is_exact)

    @pytest.mark.slow
    @given(st.integers(2, 12), st.integers(1, 3), st.integers(0, 10_000), st.sampled_from(list(Variant)))
    @settings(max_examples=200, deadline=None)
    def test_equi_satisfiable(self, n, d, seed, variant):
        """Test the kernel and the input agree for every k up to the construction bound, which holds"""
        instance = gen(GenSpec(GenClass.CLUSTER_MODULATOR, n, seed=seed, d=min(d, n - 1), connected=True))
        g, modulator = instance.graph, instance.modulator
        top = modulator.d + 2 if variant is Variant.CLOSED else 2 * modulator.d + 2
        for k in range(1, top + 1):
            decision = solve_via_kernel(g, modulator, variant, k)
            self.assertEqual(decision.feasible, decide_cf(g, variant, k)[0])
            self.assertLessEqual(decision.kernel.graph.n, decision.kernel.size_bound)
            if decision.feasible:
                self.assertTrue(verify(decision.coloring, variant))
                self.assertLessEqual(decision.coloring.size, k)
        outcome = lemma1_cfcn(g, modulator) if variant is Variant.CLOSED else lemma1_cfon(g, modulator)
        self.assertTrue(verify(outcome.coloring, variant))
        self.assertLessEqual(outcome.colors_used, top)


class ProvenanceTestCase(SimpleTestCase):
    """Test cases for the provenance sidecar"""

    def test_star_records(self):
        """Test the star kernel writes its deleted cliques"""
        text = write_provenance(reduce_cfcn(star(5), cluster_x(0), 2))
        self.assertTrue(text.startswith('c kernel cn k=2'))
        self.assertEqual(records(text, 'x'), [(0,)])
        self.assertEqual(records(text, 'k'), [(0, 0), (1, 1), (2, 2)])
        self.assertEqual(records(text, 'dc'), [(3, 1), (4, 1), (5, 1)])

    def test_capped_vertices(self):
        """Test type-capped vertices carry their clique and mask"""
        text = write_provenance(reduce_cfcn(complete(6), cluster_x(0), 2))
        self.assertEqual(records(text, 'dv'), [(4, 1, 1), (5, 1, 1)])


class ThresholdApproximationTestCase(SimpleTestCase):
    """Test cases for the threshold-modulator approximation"""

    def test_empty_modulator(self):
        """Test d = 0 colors everything 0 and the universal vertex 1"""
        result = approx_cfcn_threshold(star(3), threshold_x())
        self.assertEqual(result.outcome.coloring.assignment, (1, 0, 0, 0))
        self.assertEqual(result.partial_optimum, 0)
        self.assertTrue(result.bound_guaranteed)

    def test_star_residual(self):
        """Test one modulator vertex over a star stays within one of the optimum"""
        g = Graph.from_edges(5, [(1, 2), (1, 3), (1, 4), (0, 2), (0, 3)])
        result = approx_cfcn_threshold(g, threshold_x(0))
        optimum = exact_cf(g, Variant.CLOSED).chromatic
        self.assertLessEqual(result.partial_optimum, optimum)
        self.assertLessEqual(result.colors_used, optimum + 1)

    def test_open_infeasible(self):
        """Test an isolated vertex is reported"""
        with self.assertRaises(InfeasibleError):
            approx_cfon_threshold(Graph.from_edges(3, [(0, 1)]), threshold_x())

    def test_cluster_modulator_refused(self):
        """Test the approximation needs a threshold modulator"""
        with self.assertRaises(PreconditionError):
            approx_threshold(star(3), cluster_x(), Variant.CLOSED)

    @pytest.mark.slow
    @given(st.integers(2, 12), st.integers(0, 2), st.integers(0, 10_000), st.sampled_from(list(Variant)))
    @settings(max_examples=200, deadline=None)
    def test_additive_bound(self, n, d, seed, variant):
        """Test +1 for closed and +2 for open neighborhoods against the oracle"""
        instance = gen(GenSpec(GenClass.THRESHOLD_MODULATOR, n, seed=seed, d=min(d, n - 1), connected=True))
        result = approx_threshold(instance.graph, instance.modulator, variant)
        optimum = exact_cf(instance.graph, variant).chromatic
        self.assertLessEqual(result.partial_optimum, optimum)
        if result.bound_guaranteed:
            slack = 1 if variant is Variant.CLOSED else 2
            self.assertLessEqual(result.colors_used, optimum + slack)
