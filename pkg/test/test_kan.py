#!/usr/bin/env python3
"""
Tests for lax Kan extensions along discrete 2-opfibrations and the parametrized Yoneda correspondence.
"""

import os
import sys
import unittest

from hypothesis import given, settings, strategies as st

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cat2.corpus import f0, yoneda_instance
from cat2.diagrams import Flavor, Transformation, constant_diagram
from cat2.elements import canonical_lambda, elements_op
from cat2.errors import FlavorMismatch, ShapeMismatch
from cat2.kan import (
    check_extraordinary,
    check_two_var,
    default_u_probes,
    enumerate_extraordinary,
    enumerate_two_var,
    extraordinary_hom_data,
    hom_profunctor,
    lan_delta1_check,
    pair_hom_diagram,
    pointwise_kan_check,
    two_var_hom_data,
    weak_kan_check,
    yoneda_check,
    yoneda_from_extraordinary,
    yoneda_modifications,
    yoneda_to_extraordinary,
)
from cat2.kernel import arrow_category, terminal_category, validate
from cat2.limits import PROBE_RELATIVE


def f0_extension():
    """The projection of the elements of F0, Δ1 over its total and the canonical lax square."""
    f = f0()
    elements = elements_op(f)
    one = constant_diagram(elements.total, terminal_category())
    return elements.opfib, one, f, canonical_lambda(f, elements)


def f0_yoneda():
    p = elements_op(f0()).opfib
    weight = constant_diagram(p.k.src, terminal_category())
    values = constant_diagram(p.k.tgt, arrow_category())
    return p, pair_hom_diagram(weight, values)


class TestPointwiseExtensions(unittest.TestCase):
    """F as the pointwise left Kan extension of Δ1 along its projection."""

    def test_lan_of_delta_one(self):
        report = lan_delta1_check(f0())
        self.assertTrue(report.passed)
        self.assertEqual(sorted(report.per_object), ["a", "b"])
        self.assertEqual(report.notes, [PROBE_RELATIVE])
        print("✅ F0 = Lan_P Δ1")

    def test_pointwise_check(self):
        p, one, f, lam = f0_extension()
        report = pointwise_kan_check(p, one, f, lam)
        self.assertTrue(report.passed)
        self.assertIn("pass", report.to_json())

    def test_lambda_must_fit(self):
        p, one, f, lam = f0_extension()
        with self.assertRaises(ShapeMismatch):
            pointwise_kan_check(p, one, constant_diagram(f.base, arrow_category()), lam)


class TestWeakExtensions(unittest.TestCase):
    """Pasting with lambda as an isomorphism of hom-categories."""

    def test_weak_extension_with_restrictions(self):
        p, one, f, lam = f0_extension()
        report = weak_kan_check(p.k, one, f, lam, restricted=True)
        self.assertTrue(report.passed)
        self.assertIn("F0", report.per_probe)
        self.assertIn("F0:pseudo-sigma", report.per_probe)
        self.assertIn("F0:strict-marked-lax", report.per_probe)

    def test_default_u_family(self):
        p, one, f, lam = f0_extension()
        family = default_u_probes(f)
        self.assertEqual([u.name for u in family[:2]], ["Δ1", "ΔTwo"])
        self.assertIs(family[2], f)
        self.assertEqual(len(family), 4)
        narrowed = default_u_probes(f, [arrow_category()])
        self.assertEqual(narrowed[0], constant_diagram(f.base, arrow_category()))
        self.assertEqual(len(narrowed), 3)
        report = weak_kan_check(p.k, one, f, lam, narrowed)
        self.assertTrue(report.passed)
        self.assertEqual(len(report.per_probe), 3)

    def test_restricted_checks_need_a_marking(self):
        p, one, f, lam = f0_extension()
        unmarked = Transformation(Flavor.LAX, lam.src, lam.tgt, lam.components, lam.structure)
        self.assertTrue(weak_kan_check(p.k, one, f, unmarked, probes_u=[f]).passed)
        with self.assertRaises(FlavorMismatch):
            weak_kan_check(p.k, one, f, unmarked, restricted=True)


class TestYoneda(unittest.TestCase):
    """Two-variable transformations out of A(K-, -) against extraordinary lax transformations."""

    def test_hom_profunctor_validates(self):
        p, _ = f0_yoneda()
        self.assertTrue(validate(hom_profunctor(p.k)).passed)

    def test_correspondence_on_f0(self):
        p, f = f0_yoneda()
        self.assertTrue(validate(f).passed)
        report = yoneda_check(p, f)
        self.assertTrue(report.passed)
        self.assertEqual(report.counts["two-variable"], report.counts["extraordinary"])
        self.assertEqual(report.counts["two-variable-modifications"], report.counts["extraordinary-modifications"])
        print(f"✅ Yoneda correspondence on {report.counts['extraordinary']} transformations")

    def test_both_sides_satisfy_their_laws(self):
        p, f = f0_yoneda()
        for alpha in enumerate_two_var(p, p.k.tgt, hom_profunctor(p.k), f):
            self.assertTrue(check_two_var(alpha).passed)
            eta = yoneda_to_extraordinary(alpha)
            self.assertTrue(check_extraordinary(eta).passed)
            self.assertEqual(yoneda_from_extraordinary(eta), alpha)
        self.assertTrue(enumerate_extraordinary(p, f))

    def test_modifications_cross_over(self):
        p, f = f0_yoneda()
        data = two_var_hom_data(p, p.k.tgt, hom_profunctor(p.k), f)
        self.assertTrue(data.modifications)
        for theta in data.modifications.values():
            gamma = yoneda_modifications("to", theta)
            self.assertEqual(gamma.src, yoneda_to_extraordinary(theta.src))
            self.assertEqual(yoneda_modifications("from", gamma), theta)
        with self.assertRaises(ValueError):
            yoneda_modifications("sideways", theta)

    def test_extraordinary_modifications_come_back(self):
        p, f = f0_yoneda()
        right = extraordinary_hom_data(p, f)
        left = two_var_hom_data(p, p.k.tgt, hom_profunctor(p.k), f)
        self.assertTrue(right.modifications)
        for gamma in right.modifications.values():
            theta = yoneda_modifications("from", gamma)
            self.assertIn(theta.tag, left.modifications)
            self.assertEqual(yoneda_modifications("to", theta), gamma)
        report = yoneda_check(p, f)
        self.assertTrue(report.passed)
        self.assertEqual(report.counts["extraordinary-modifications"], len(right.category.morphisms))

    @given(st.integers(min_value=0, max_value=100))
    @settings(deadline=None, max_examples=5)
    def test_generated_correspondence(self, seed):
        p, f = yoneda_instance(seed)
        self.assertTrue(yoneda_check(p, f).passed)


if __name__ == '__main__':
    unittest.main()
