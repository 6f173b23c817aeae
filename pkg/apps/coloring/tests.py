from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.core.exceptions import FormatError, PreconditionError, SolverDefectError
from apps.core.testing import colored_graphs, complete, cycle, path
from apps.graphs.models import Graph

from .models import Coloring, Optimality, Variant
from .serializers import parse_coloring, write_coloring
from .services import certify, has_unique_color, verify, verify_cfcn, verify_cfon


class ColoringModelTestCase(SimpleTestCase):
    """Test cases for Coloring and Variant"""

    def test_size_counts_distinct_colors(self):
        """Test size is the number of distinct colors, not max + 1"""
        c = Coloring(path(3), (0, 5, 0))
        self.assertEqual(c.size, 2)
        self.assertEqual(c.colors_used, {0, 5})

    def test_must_cover_every_vertex(self):
        """Test a coloring of the wrong length is rejected"""
        with self.assertRaises(PreconditionError):
            Coloring(path(3), (0, 1))
        with self.assertRaises(PreconditionError):
            Coloring.from_mapping(path(3), {0: 0, 1: 1})

    def test_negative_colors_rejected(self):
        """Test colors are non-negative"""
        with self.assertRaises(PreconditionError):
            Coloring(path(2), (0, -1))

    def test_variant_parse(self):
        """Test variant names"""
        self.assertIs(Variant.parse('cn'), Variant.CLOSED)
        self.assertIs(Variant.parse('open'), Variant.OPEN)
        with self.assertRaises(PreconditionError):
            Variant.parse('xx')


class UniqueColorTestCase(SimpleTestCase):
    """Test cases for has_unique_color"""

    def test_examples(self):
        """Test a singleton color, an all-duplicated set and the empty set"""
        c = Coloring(path(3), (0, 1, 1))
        self.assertEqual(has_unique_color(c, [0, 1, 2]), 0)
        self.assertIsNone(has_unique_color(c, [1, 2]))
        self.assertIsNone(has_unique_color(c, []))


class VerifierTestCase(SimpleTestCase):
    """Test cases for the CF-CN and CF-ON verifiers"""

    def test_closed_examples(self):
        """Test K2 and P3 closed-neighborhood verdicts"""
        self.assertTrue(verify_cfcn(Coloring(complete(2), (0, 1))))
        verdict = verify_cfcn(Coloring(complete(2), (0, 0)))
        self.assertFalse(verdict)
        self.assertEqual(verdict.failing_vertex, 0)
        self.assertTrue(verify_cfcn(Coloring(path(3), (0, 1, 0))))

    def test_open_examples(self):
        """Test K2, K3 and C4 open-neighborhood verdicts"""
        self.assertTrue(verify_cfon(Coloring(complete(2), (0, 0))))
        verdict = verify_cfon(Coloring(complete(3), (0, 1, 1)))
        self.assertFalse(verdict)
        self.assertEqual(verdict.failing_vertex, 0)
        self.assertTrue(verify_cfon(Coloring(cycle(4), (0, 0, 1, 1))))

    def test_isolated_vertex_fails_open(self):
        """Test an empty open neighborhood never has a unique color"""
        g = Graph.from_edges(3, [(0, 1)])
        self.assertEqual(verify_cfon(Coloring(g, (0, 1, 2))).failing_vertex, 2)
        self.assertTrue(verify_cfcn(Coloring(g, (0, 1, 2))))

    @given(colored_graphs(), st.data())
    @settings(max_examples=500, deadline=None)
    def test_verdict_invariant_under_color_permutation(self, c, data):
        """Test renaming colors never changes a verdict"""
        palette = sorted(c.colors_used)
        shuffled = data.draw(st.permutations(palette))
        renamed = c.recolored(dict(zip(palette, shuffled)))
        for variant in Variant:
            self.assertEqual(verify(c, variant).valid, verify(renamed, variant).valid)

    @given(colored_graphs(), st.data())
    @settings(max_examples=500, deadline=None)
    def test_verdict_invariant_under_relabeling(self, c, data):
        """Test renaming vertices never changes a verdict"""
        g = c.host
        perm = data.draw(st.permutations(list(g.vertices)))
        moved = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])
        colors = [0] * g.n
        for v in g.vertices:
            colors[perm[v]] = c[v]
        relabeled = Coloring(moved, tuple(colors))
        for variant in Variant:
            self.assertEqual(verify(c, variant).valid, verify(relabeled, variant).valid)

    def test_certify_rejects_invalid(self):
        """Test certify turns an invalid coloring into a solver defect"""
        with self.assertRaises(SolverDefectError):
            certify(Coloring(complete(2), (0, 0)), Variant.CLOSED, Optimality.EXACT, 'test')
        outcome = certify(Coloring(complete(2), (0, 1)), Variant.CLOSED, Optimality.EXACT, 'test')
        self.assertEqual(outcome.colors_used, 2)
        self.assertTrue(outcome.is_exact)


class ColoringSerializerTestCase(SimpleTestCase):
    """Test cases for the coloring file codec"""

    def test_parse(self):
        """Test a two-line coloring of K2"""
        c = parse_coloring("v 0 0\nv 1 1\n", complete(2))
        self.assertEqual(c.assignment, (0, 1))

    def test_write_then_parse_is_fixpoint(self):
        """Test writing and re-reading gives the same text"""
        c = Coloring(path(4), (2, 0, 1, 0))
        text = write_coloring(c)
        self.assertEqual(write_coloring(parse_coloring(text, path(4))), text)

    def test_errors(self):
        """Test missing, duplicated and out-of-range vertex lines"""
        for text in ("v 0 0\n", "v 0 0\nv 0 1\nv 1 1\n", "v 0 0\nv 2 1\n", "v 0 x\nv 1 0\n"):
            with self.subTest(text=text):
                with self.assertRaises(FormatError):
                    parse_coloring(text, complete(2))
