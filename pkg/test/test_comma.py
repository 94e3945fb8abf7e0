#!/usr/bin/env python3
"""
Tests for lax and oplax commas, their universal property and the fibred view of elements.
"""

import os
import sys
import unittest

from hypothesis import given, settings, strategies as st

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cat2.comma import (
    cartesian_functor_check,
    check_lax_comma_object,
    cleavage_preserving_check,
    elements_lax_comma_iso,
    equivalence_check,
    lax_comma,
    lax_comma_point,
    oplax_comma,
    slice_hom,
)
from cat2.corpus import f0, random_diagram, random_pair
from cat2.diagrams import Flavor, check_transformation, constant_diagram
from cat2.elements import elements_op
from cat2.errors import FlavorMismatch, ShapeMismatch
from cat2.kernel import (
    arrow_category,
    constant_two_functor,
    identity_two_functor,
    locally_discrete,
    terminal_2category,
    terminal_category,
    validate,
    walking_2cell,
)


def arrow_base():
    return locally_discrete(arrow_category(), name="Two")


class TestLaxComma(unittest.TestCase):
    """Construction of commas with their projections and lambda."""

    def test_identity_comma_over_arrow(self):
        ident = identity_two_functor(arrow_base())
        c = lax_comma(ident, ident)
        self.assertEqual(len(c.total.objects), 3)
        self.assertTrue(validate(c.total).passed)
        self.assertTrue(validate(c.d0).passed)
        self.assertTrue(validate(c.d1).passed)
        self.assertEqual(c.lam.flavor, Flavor.LAX)
        self.assertTrue(check_transformation(c.lam).passed)
        print("✅ Lax comma of the identity on Two has 3 objects")

    def test_targets_must_agree(self):
        with self.assertRaises(ShapeMismatch):
            lax_comma(identity_two_functor(arrow_base()), identity_two_functor(walking_2cell()))

    def test_oplax_comma(self):
        cell = walking_2cell()
        ident = identity_two_functor(cell)
        c = oplax_comma(ident, ident)
        self.assertEqual(c.lam.flavor, Flavor.OPLAX)
        self.assertTrue(validate(c.total).passed)
        self.assertTrue(check_transformation(c.lam).passed)
        with self.assertRaises(FlavorMismatch):
            check_lax_comma_object(c)

    def test_comma_under_the_point(self):
        base = arrow_base()
        c = lax_comma_point(constant_diagram(base, terminal_category()))
        self.assertEqual(sorted(c.total.objects), ["*|0|*", "*|1|*"])
        self.assertEqual(len(c.total.one_cells), len(base.one_cells))
        self.assertEqual(c.decode_object("*|1|*")[:2], ("*", "1"))


class TestUniversalProperty(unittest.TestCase):
    """Unique factorization through commas, on probe 2-categories."""

    def test_identity_comma_is_a_lax_comma_object(self):
        ident = identity_two_functor(arrow_base())
        probes = [terminal_2category(), arrow_base()]
        report = check_lax_comma_object(lax_comma(ident, ident), probes)
        self.assertTrue(report.passed)
        self.assertIn("Two:1-cells", report.counts)
        self.assertIn("Two:3-cells", report.counts)

    def test_point_comma_default_probes(self):
        report = check_lax_comma_object(lax_comma_point(f0()))
        self.assertTrue(report.passed, report.violations)

    def test_collapsed_comma(self):
        cell = walking_2cell()
        point = constant_two_functor(terminal_2category(), cell, "a")
        c = lax_comma(point, identity_two_functor(cell))
        self.assertTrue(validate(c.total).passed)
        self.assertTrue(check_lax_comma_object(c, [terminal_2category()]).passed)


class TestFibredElements(unittest.TestCase):
    """Elements as a lax comma, and the slice over the base."""

    def test_elements_are_the_point_comma(self):
        report = elements_lax_comma_iso(f0())
        self.assertTrue(report.passed)
        self.assertEqual(report.counts["objects"], 3)

    def test_equivalence_for_each_flavor(self):
        base = arrow_base()
        one, two = constant_diagram(base, terminal_category()), constant_diagram(base, arrow_category())
        for flavor in (Flavor.LAX, Flavor.PSEUDO, Flavor.STRICT):
            report = equivalence_check(one, two, flavor)
            self.assertTrue(report.passed, flavor.value)
            self.assertEqual(report.counts["left-objects"], report.counts["right-objects"])
        with self.assertRaises(FlavorMismatch):
            equivalence_check(one, two, Flavor.OPLAX)

    def test_slice_hom_of_identity(self):
        p = elements_op(f0()).opfib
        lax, functors, _ = slice_hom(p, p, Flavor.LAX)
        strict, _, _ = slice_hom(p, p, Flavor.STRICT)
        self.assertTrue(validate(lax).passed)
        self.assertLessEqual(len(strict.objects), len(lax.objects))
        for h in functors.values():
            if cleavage_preserving_check(h, p, p).passed:
                self.assertTrue(cartesian_functor_check(h, p, p).passed)

    def test_identity_preserves_cleavage(self):
        p = elements_op(f0()).opfib
        ident = identity_two_functor(p.k.src)
        self.assertTrue(cartesian_functor_check(ident, p, p).passed)
        self.assertTrue(cleavage_preserving_check(ident, p, p).passed)


class TestGeneratedCommas(unittest.TestCase):
    """Comma constructions on generated diagrams."""

    @given(st.integers(min_value=0, max_value=300))
    @settings(deadline=None, max_examples=15)
    def test_elements_comma_iso(self, seed):
        self.assertTrue(elements_lax_comma_iso(random_diagram(seed)).passed)

    @given(st.integers(min_value=0, max_value=100))
    @settings(deadline=None, max_examples=5)
    def test_lax_equivalence(self, seed):
        f, g = random_pair(seed)
        self.assertTrue(equivalence_check(f, g, Flavor.LAX).passed)


if __name__ == '__main__':
    unittest.main()
