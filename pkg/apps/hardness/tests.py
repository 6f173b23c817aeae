import pytest
from django.test import SimpleTestCase, override_settings

from apps.coloring.models import Coloring, Variant
from apps.coloring.services import verify
from apps.core.exceptions import PreconditionError, SizeGuardError
from apps.core.testing import complete, cycle, path
from apps.generators.services import enumerate_small
from apps.graphs.models import Graph
from apps.oracle.services import decide_cf

from .serializers import write_gadget_map
from .services import cross_validate, decide_proper, decode, encode, forward_coloring, is_proper


class EncodeTestCase(SimpleTestCase):
    """Test cases for the gadget construction"""

    def test_triangle(self):
        """Test K3 with k = 3 gives 15 vertices and 30 edges"""
        inst = encode(complete(3), 3)
        self.assertEqual(inst.graph.n, 15)
        self.assertEqual(inst.graph.n, inst.expected_order)
        self.assertEqual(inst.graph.m, 30)
        self.assertEqual((inst.x, inst.y), (3, 4))

    def test_shape(self):
        """Test the clique side is G' and each edge vertex sees exactly its edge"""
        inst = encode(path(3), 3)
        h = inst.graph
        for u in inst.clique_side:
            for v in inst.clique_side:
                if u < v:
                    self.assertTrue(h.has_edge(u, v))
        for (u, v), w in inst.edge_vertices:
            self.assertEqual(set(h.neighbors(w)), {u, v})
        self.assertEqual(len(inst.edge_vertex), inst.augmented.m)
        self.assertEqual(inst.graph.n, inst.expected_order)

    def test_k_below_three(self):
        """Test k < 3 is refused"""
        with self.assertRaises(PreconditionError):
            encode(complete(3), 2)


class ColoringTransferTestCase(SimpleTestCase):
    """Test cases for the forward and backward directions"""

    def test_forward_is_open_conflict_free(self):
        """Test a proper 3-coloring of K3 becomes a CF-ON 5-coloring of H"""
        inst = encode(complete(3), 3)
        colored = forward_coloring(inst, Coloring(complete(3), (0, 1, 2)))
        self.assertTrue(verify(colored, Variant.OPEN))
        self.assertEqual(colored.size, 5)
        self.assertEqual(decode(inst, colored).assignment, (0, 1, 2))

    def test_forward_needs_proper(self):
        """Test an improper coloring is refused"""
        inst = encode(complete(3), 3)
        with self.assertRaises(PreconditionError):
            forward_coloring(inst, Coloring(complete(3), (0, 0, 1)))

    def test_decode_checks_colors(self):
        """Test decode refuses invalid and oversized colorings"""
        inst = encode(complete(3), 3)
        with self.assertRaises(PreconditionError):
            decode(inst, Coloring(inst.graph, (0,) * inst.graph.n))
        with self.assertRaises(PreconditionError):
            decode(inst, Coloring(inst.graph, tuple(range(inst.graph.n))))

    def test_proper_coloring(self):
        """Test the proper-coloring search"""
        self.assertTrue(decide_proper(complete(3), 3)[0])
        self.assertFalse(decide_proper(cycle(5), 2)[0])
        self.assertFalse(decide_proper(complete(4), 3)[0])
        feasible, witness = decide_proper(cycle(5), 3)
        self.assertTrue(feasible)
        self.assertTrue(is_proper(witness))


class CrossValidationTestCase(SimpleTestCase):
    """Test cases for checking both sides with the oracles"""

    def test_triangle_yes(self):
        """Test K3 is YES on both sides and the witness decodes"""
        report = cross_validate(complete(3), 3)
        self.assertTrue(report.agree)
        self.assertTrue(report.gadget_colorable)
        self.assertTrue(is_proper(report.decoded))

    def test_odd_cycle_yes(self):
        """Test C5 is 3-colorable and so is its gadget"""
        report = cross_validate(cycle(5), 3, limit=23)
        self.assertTrue(report.agree)
        self.assertTrue(report.source_colorable)

    def test_four_clique_no(self):
        """Test K4 is NO on both sides"""
        report = cross_validate(complete(4), 3, limit=21)
        self.assertTrue(report.agree)
        self.assertFalse(report.gadget_colorable)
        self.assertIsNone(report.decoded)

    def test_size_guard(self):
        """Test the gadget of C5 is above the default limit"""
        with self.assertRaises(SizeGuardError):
            cross_validate(cycle(5), 3)

    @override_settings(CFCOLOR={'HARDNESS_LIMIT': 10})
    def test_limit_from_settings(self):
        """Test the limit follows settings"""
        with self.assertRaises(SizeGuardError):
            cross_validate(complete(3), 3)

    def test_empty_source(self):
        """Test an edgeless source graph"""
        report = cross_validate(Graph.from_edges(2, []), 3)
        self.assertTrue(report.agree)


class GadgetMapTestCase(SimpleTestCase):
    """Test cases for the gadget map sidecar"""

    def test_triangle_map(self):
        """Test the x, y and edge-vertex lines of the K3 gadget"""
        lines = write_gadget_map(encode(complete(3), 3)).splitlines()
        self.assertTrue(lines[0].startswith('c '))
        self.assertEqual(lines[1:3], ['x 3', 'y 4'])
        self.assertEqual(lines[3], 'ie 0 1 5')
        self.assertEqual(lines[-1], 'ie 3 4 14')
        self.assertEqual(len(lines), 3 + 10)


class SmallGraphEquivalenceTestCase(SimpleTestCase):
    """Test cases for the gadget on every small connected graph"""

    def assert_equivalent(self, g, limit):
        inst = encode(g, 3)
        source, _ = decide_proper(g, 3)
        gadget, witness = decide_cf(inst.graph, Variant.OPEN, 5, limit=limit)
        self.assertEqual(source, gadget, msg=str(g))
        if witness is not None:
            self.assertTrue(is_proper(decode(inst, witness)))

    def test_within_default_guard(self):
        """Test 3-colorability is preserved for every connected graph whose gadget fits the guard"""
        checked = 0
        for g in enumerate_small(5, smallest=1):
            if encode(g, 3).graph.n > 16:
                continue
            with self.subTest(graph=str(g)):
                self.assert_equivalent(g, 16)
                self.assertTrue(cross_validate(g, 3).agree)
            checked += 1
        self.assertEqual(checked, 4)

    @pytest.mark.slow
    def test_four_vertices(self):
        """Test every connected four-vertex graph, K4 being the only NO"""
        for g in enumerate_small(4):
            with self.subTest(graph=str(g)):
                self.assert_equivalent(g, 21)
