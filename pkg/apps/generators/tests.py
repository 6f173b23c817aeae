import pytest
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.classes.services import check_modulator, split_partition, threshold_elimination
from apps.coloring.models import Variant
from apps.core.exceptions import PreconditionError
from apps.core.testing import complete, empty
from apps.graphs.services import is_connected
from apps.interval.services import validate_representation

from .models import GenClass, GenSpec
from .services import enumerate_small, enumerate_split, gen, gen_many
from .sweeps import SweepCase, SweepConfig, build_cases, evaluate_case, run_sweep, summarize


class GenTestCase(SimpleTestCase):
    """Test cases for seeded instance generation"""

    def test_same_seed_same_instance(self):
        """Test a spec reproduces its graph"""
        spec = GenSpec(GenClass.COGRAPH, 9, seed=42)
        self.assertEqual(gen(spec).graph, gen(spec).graph)

    def test_cluster_sizes(self):
        """Test fixed clique sizes come out in order"""
        instance = gen(GenSpec(GenClass.CLUSTER, 5, clique_sizes=(2, 3)))
        self.assertEqual(instance.cliques, (frozenset({0, 1}), frozenset({2, 3, 4})))
        self.assertEqual(instance.graph.m, 4)

    def test_connected_cluster_is_one_clique(self):
        """Test a connected cluster graph is complete"""
        self.assertEqual(gen(GenSpec(GenClass.CLUSTER, 4, connected=True)).graph, complete(4))

    def test_modulator_classes(self):
        """Test the modulator is the last d vertices and holds"""
        for cls in (GenClass.CLUSTER_MODULATOR, GenClass.THRESHOLD_MODULATOR):
            with self.subTest(cls=cls.value):
                instance = gen(GenSpec(cls, 8, seed=3, d=2))
                self.assertEqual(instance.modulator.deleted, {6, 7})
                check_modulator(instance.graph, instance.modulator)

    def test_split_partition(self):
        """Test a fixed clique size sets the clique side"""
        instance = gen(GenSpec(GenClass.SPLIT, 6, seed=1, clique_sizes=(3,)))
        self.assertEqual(instance.partition.clique, {0, 1, 2})
        self.assertTrue(instance.partition.is_valid_for(instance.graph))

    def test_interval_is_connected(self):
        """Test interval instances are redrawn until connected"""
        instance = gen(GenSpec(GenClass.INTERVAL, 6, seed=7))
        self.assertTrue(is_connected(instance.graph))
        self.assertTrue(validate_representation(instance.graph, instance.representation))

    def test_gen_many_steps_seeds(self):
        """Test consecutive seeds"""
        spec = GenSpec(GenClass.THRESHOLD, 5, seed=5)
        self.assertEqual([i.spec.seed for i in gen_many(spec, 3)], [5, 6, 7])

    def test_contradictory_knobs(self):
        """Test inconsistent specs are refused before drawing"""
        specs = [
            GenSpec(GenClass.CLUSTER, 0),
            GenSpec(GenClass.CLUSTER, 4, p=1.5),
            GenSpec(GenClass.CLUSTER_MODULATOR, 4, d=5),
            GenSpec(GenClass.CLUSTER, 4, clique_sizes=(2, 3)),
            GenSpec(GenClass.CLUSTER, 4, clique_sizes=(2, 2), connected=True),
            GenSpec(GenClass.SPLIT, 6, clique_sizes=(2, 2)),
            GenSpec(GenClass.BIPARTITE, 4, p=0.0, connected=True),
        ]
        for spec in specs:
            with self.subTest(spec=spec):
                with self.assertRaises(PreconditionError):
                    gen(spec)

    def test_class_names(self):
        """Test class names parse"""
        self.assertIs(GenClass.parse('threshold+modulator'), GenClass.THRESHOLD_MODULATOR)
        with self.assertRaises(ValueError):
            GenClass.parse('planar')

    @given(st.sampled_from([c for c in GenClass if c is not GenClass.INTERVAL]),
           st.integers(1, 12), st.integers(0, 10_000))
    @settings(max_examples=80, deadline=None)
    def test_every_class_certifies(self, cls, n, seed):
        """Test generated instances pass their recognizers"""
        instance = gen(GenSpec(cls, n, seed=seed, d=min(2, n)))
        self.assertEqual(instance.graph.n, n)
        if cls is GenClass.THRESHOLD:
            self.assertIsNotNone(threshold_elimination(instance.graph))
        if cls is GenClass.SPLIT:
            self.assertIsNotNone(split_partition(instance.graph))


class EnumerationTestCase(SimpleTestCase):
    """Test cases for exhaustive small-graph streams"""

    def test_connected_counts(self):
        """Test the number of connected graphs per order"""
        self.assertEqual(len(list(enumerate_small(3))), 2)
        self.assertEqual(len(list(enumerate_small(4))), 6)
        self.assertEqual(len(list(enumerate_small(5, smallest=1))), 31)

    def test_class_filters(self):
        """Test split, bipartite and cograph counts on four vertices"""
        self.assertEqual(len(list(enumerate_small(4, 'split'))), 5)
        self.assertEqual(len(list(enumerate_small(4, 'bipartite'))), 3)
        self.assertEqual(len(list(enumerate_small(4, 'cograph'))), 5)

    def test_atlas_limit(self):
        """Test enumeration stops at seven vertices"""
        with self.assertRaises(PreconditionError):
            list(enumerate_small(8))

    def test_split_enumeration(self):
        """Test split graphs are listed once per isomorphism class"""
        self.assertEqual(len(list(enumerate_split(3))), 2)
        self.assertEqual(len(list(enumerate_split(4))), 5)
        for g, partition in enumerate_split(5):
            self.assertTrue(partition.is_valid_for(g))
            self.assertTrue(is_connected(g))

    def test_split_enumeration_agrees_with_atlas(self):
        """Test both sources list the same number of connected split graphs"""
        for n in (5, 6):
            with self.subTest(n=n):
                self.assertEqual(len(list(enumerate_split(n))), len(list(enumerate_small(n, 'split'))))

    def test_split_with_repeats(self):
        """Test turning off deduplication lists more graphs"""
        self.assertGreater(len(list(enumerate_split(4, distinct=False))), 5)


class SweepTestCase(SimpleTestCase):
    """Test cases for oracle sweeps"""

    def test_split_sweep_has_no_gap(self):
        """Test the split solver is optimal on every connected split graph up to four vertices"""
        cases = list(build_cases('atlas', 'split', 'cn', 'split', min_n=2, max_n=4))
        self.assertEqual(len(cases), 8)
        summary = summarize(run_sweep(cases, SweepConfig()))
        self.assertEqual(summary['status.ok'], 8)
        self.assertEqual(summary['max_gap'], 0)
        self.assertEqual(summary['compared'], 8)

    def test_case_statuses(self):
        """Test skipped and infeasible rows"""
        config = SweepConfig()
        skipped = evaluate_case(SweepCase('k3', complete(3), Variant.CLOSED, 'bipartite'), config)
        self.assertEqual(skipped['status'], 'skipped')
        infeasible = evaluate_case(SweepCase('e2', empty(2), Variant.OPEN, 'auto'), config)
        self.assertEqual(infeasible['status'], 'infeasible')

    def test_refused_above_oracle(self):
        """Test the kernel limit refuses through the sweep"""
        case = SweepCase('k11', complete(11), Variant.CLOSED, 'fpt')
        row = evaluate_case(case, SweepConfig(oracle_limit=4, kernel_limit=1, budget=1))
        self.assertEqual(row['status'], 'refused')

    def test_random_family(self):
        """Test random cases carry their certificates"""
        cases = list(build_cases('random', 'interval', 'on', 'interval', min_n=3, max_n=6, count=4, seed=9))
        self.assertEqual([c.graph.n for c in cases], [3, 4, 5, 6])
        self.assertTrue(all(c.representation is not None for c in cases))
        frame = run_sweep(cases, SweepConfig())
        self.assertTrue((frame['status'] == 'ok').all())

    def test_bad_family(self):
        """Test unknown families and a random family without a class"""
        with self.assertRaises(PreconditionError):
            list(build_cases('planar', 'auto', 'cn'))
        with self.assertRaises(PreconditionError):
            list(build_cases('random', 'auto', 'cn'))

    def test_empty_summary(self):
        """Test an empty sweep summarizes to zeros"""
        summary = summarize(run_sweep([], SweepConfig()))
        self.assertEqual(summary['cases'], 0)
        self.assertEqual(summary['max_colors'], 0)

    @pytest.mark.slow
    def test_acceptance_sweeps(self):
        """Test auto, cograph and threshold strategies against the oracle on small families"""
        config = SweepConfig()
        families = [
            build_cases('atlas', 'auto', 'cn', min_n=2, max_n=6),
            build_cases('atlas', 'auto', 'on', min_n=2, max_n=6),
            build_cases('atlas', 'cograph', 'on', 'cograph', min_n=2, max_n=6),
            build_cases('random', 'threshold', 'cn', 'threshold+modulator', min_n=4, max_n=9, count=40, d=2),
            build_cases('random', 'lemma1', 'on', 'cluster+modulator', min_n=4, max_n=9, count=40, d=2),
        ]
        for cases in families:
            frame = run_sweep(list(cases), config, jobs=2)
            summary = summarize(frame)
            self.assertEqual(summary['status.defect'], 0, msg=frame[frame['status'] == 'defect'].to_string())
            self.assertEqual(summary['status.bound'], 0)
