#!/usr/bin/env python3
"""
Tests for the 2-category of elements, discrete 2-opfibrations and reconstruction.
"""

import os
import sys
import unittest

from hypothesis import given, settings, strategies as st

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cat2.corpus import f0, random_diagram
from cat2.diagrams import Flavor, check_transformation, constant_diagram, enumerate_transformations, identity_modification
from cat2.elements import (
    SplitDiscrete2Opfib,
    canonical_lambda,
    certify,
    elements_2map,
    elements_cov,
    elements_map,
    elements_op,
    extract_cleavage,
    is_discrete_2opfibration,
    is_discrete_fibration,
    is_opfibration,
    reconstruct,
    relabel_fibers,
)
from cat2.errors import NotSplit, ShapeMismatch
from cat2.kernel import (
    arrow_category,
    constant_two_functor,
    identity_functor,
    iso_of_2categories,
    locally_discrete,
    point,
    terminal_2category,
    terminal_category,
    validate,
)


class TestElementsConstruction(unittest.TestCase):
    """The contravariant and covariant constructions on the fixture F0."""

    def test_f0_counts(self):
        result = elements_op(f0())
        total = result.total
        self.assertEqual(sorted(total.objects), ["a|*", "b|0", "b|1"])
        self.assertEqual(len(total.one_cells), 6)
        self.assertEqual(len(total.two_cells), 6)
        self.assertTrue(validate(total).passed)
        print("✅ Elements of F0: 3 objects, 6 morphisms")

    def test_f0_decoding_and_projection(self):
        result = elements_op(f0())
        self.assertEqual(result.decode_object("b|0"), ("b", "0"))
        self.assertEqual(result.decode_one("f|*|s"), ("f", "*", "s"))
        self.assertEqual(result.total.one_cells["f|*|s"], ("a|*", "b|1"))
        self.assertEqual(result.projection.one("f|*|s"), "f")
        self.assertTrue(validate(result.projection).passed)

    def test_f0_marking_is_the_cleavage(self):
        result = elements_op(f0())
        self.assertIn("f|*|id_0", result.marking.marked)
        self.assertNotIn("f|*|s", result.marking.marked)
        self.assertEqual(result.opfib.lift("a|*", "f"), "f|*|id_0")
        self.assertEqual(set(result.marking.marked), set(result.opfib.cleavage.values()))

    def test_covariant_elements(self):
        result = elements_cov(f0())
        self.assertEqual(len(result.total.objects), 3)
        self.assertEqual(len(result.total.one_cells), 5)
        self.assertTrue(validate(result.total).passed)
        self.assertTrue(result.opfib.contravariant)
        self.assertTrue(certify(result.opfib).passed)


class TestOpfibrations(unittest.TestCase):
    """Opcartesian lifts, cleavages and their certification."""

    def test_projection_is_discrete_two_opfibration(self):
        result = elements_op(f0())
        self.assertTrue(is_discrete_2opfibration(result.projection).passed)
        self.assertTrue(certify(result.opfib).passed)

    def test_least_cleavage_matches_construction(self):
        result = elements_op(f0())
        self.assertEqual(extract_cleavage(result.projection).cleavage, result.opfib.cleavage)

    def test_point_inclusion_is_not_an_opfibration(self):
        base = locally_discrete(arrow_category(), name="Two")
        k = constant_two_functor(terminal_2category(), base, "0")
        report = is_discrete_2opfibration(k)
        self.assertFalse(report.passed)
        self.assertEqual(report.violations[0].law, "no-opcartesian-lift")
        with self.assertRaises(ShapeMismatch):
            extract_cleavage(k)

    def test_wrong_lift_is_rejected(self):
        result = elements_op(f0())
        cleavage = dict(result.opfib.cleavage)
        cleavage[("a|*", "f")] = "f|*|s"
        wrong = SplitDiscrete2Opfib(result.projection, cleavage)
        report = certify(wrong)
        self.assertEqual([(v.law, v.witness) for v in report.violations], [("cleavage-opcartesian", ["a|*", "f"])])
        with self.assertRaises(NotSplit):
            reconstruct(wrong)

    def test_one_dimensional_checks(self):
        two, one = arrow_category(), terminal_category()
        self.assertTrue(is_discrete_fibration(identity_functor(two)).passed)
        self.assertTrue(is_opfibration(identity_functor(two)).passed)
        report = is_discrete_fibration(point(two, "1", one))
        self.assertEqual({v.law for v in report.violations}, {"no-lift"})


class TestReconstruction(unittest.TestCase):
    """Fibers of the projection give the diagram back."""

    def test_f0_roundtrip(self):
        f = f0()
        g, iso = reconstruct(elements_op(f).opfib)
        self.assertEqual(g, relabel_fibers(f))
        self.assertTrue(validate(g).passed)
        self.assertTrue(validate(iso).passed)
        self.assertTrue(iso_of_2categories(iso).passed)
        print("✅ F0 reconstructed from its elements")

    def test_contravariant_cleavage_is_refused(self):
        with self.assertRaises(ShapeMismatch):
            reconstruct(elements_cov(f0()).opfib)


class TestFunctoriality(unittest.TestCase):
    """Transformations and modifications act on the totals."""

    def test_maps_of_lax_transformations(self):
        base = locally_discrete(arrow_category(), name="Two")
        one, two = constant_diagram(base, terminal_category()), constant_diagram(base, arrow_category())
        for phi in enumerate_transformations(one, two, Flavor.LAX):
            h = elements_map(phi)
            self.assertTrue(validate(h).passed)
            self.assertEqual(elements_op(two).projection.after(h), elements_op(one).projection)
            self.assertTrue(check_transformation(elements_2map(identity_modification(phi))).passed)

    def test_canonical_lambda(self):
        lam = canonical_lambda(f0())
        self.assertEqual(lam.flavor, Flavor.MARKED_LAX)
        self.assertTrue(check_transformation(lam).passed)


class TestGeneratedElements(unittest.TestCase):
    """Elements certification and reconstruction over generated diagrams."""

    @given(st.integers(min_value=0, max_value=1000))
    @settings(deadline=None, max_examples=30)
    def test_projection_certifies(self, seed):
        result = elements_op(random_diagram(seed))
        self.assertTrue(validate(result.total).passed)
        self.assertTrue(is_discrete_2opfibration(result.projection).passed)
        self.assertTrue(certify(result.opfib).passed)

    @given(st.integers(min_value=0, max_value=1000))
    @settings(deadline=None, max_examples=20)
    def test_reconstruction_roundtrip(self, seed):
        f = random_diagram(seed)
        g, iso = reconstruct(elements_op(f).opfib)
        self.assertEqual(g, relabel_fibers(f))
        self.assertTrue(iso_of_2categories(iso).passed)


if __name__ == '__main__':
    unittest.main()
