#!/usr/bin/env python3
"""
Tests for weighted 2-limits, marked conical limits, the slice weights and marked oplax colimits.
"""

import os
import sys
import unittest

from hypothesis import given, settings, strategies as st

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cat2.corpus import chaotic_two_cocone, f0, random_pair, weight_instance
from cat2.diagrams import CAT, Flavor, Marking, Transformation, check_transformation, constant_diagram
from cat2.diagrams.transformation import structure_ends
from cat2.elements import elements_op
from cat2.errors import ShapeMismatch
from cat2.kernel import (
    Functor,
    NaturalTransformation,
    arrow_category,
    functor_category,
    locally_discrete,
    terminal_2category,
    terminal_category,
    validate,
    walking_2cell,
    walking_iso,
)
from cat2.limits import (
    PROBE_RELATIVE,
    conicalization_check,
    default_probes,
    hom_into,
    is_marked_oplax_colimit,
    marked_lax_conical_limit,
    marked_oplax_cocylinder_category,
    opposite_marking,
    power_diagram,
    weight_laxn,
    weight_laxn_equivalence_check,
    weight_oplaxn,
    weighted_limit,
)


def terminal_cocone():
    """The one-object candidate with its only cocylinder, for the chaotic Δ1 over Two."""
    marking, w, f, _, _ = chaotic_two_cocone()
    c1 = terminal_category()
    target = hom_into(f, c1)
    points = functor_category(c1, c1).category
    (picked,) = points.objects
    components = {
        x: Functor(c1, points, {"*": picked}, {c1.identity("*"): points.identity(picked)}) for x in f.base.objects
    }
    structure = {}
    for u, (b, c) in w.base.one_cells.items():
        src, tgt = structure_ends(CAT, w, target, Flavor.MARKED_OPLAX, u, components[b], components[c])
        structure[u] = NaturalTransformation(src, tgt, {"*": points.identity(picked)})
    mu = Transformation(Flavor.MARKED_OPLAX, w, target, components, structure, opposite_marking(marking))
    return marking, w, f, c1, mu


class TestWeightedLimits(unittest.TestCase):
    """Limits as hom-categories of cylinders."""

    def test_limit_over_the_point(self):
        base = terminal_2category()
        two = constant_diagram(base, arrow_category())
        result = weighted_limit(two, two)
        self.assertEqual(len(result.limit.objects), 3)
        self.assertEqual(len(result.limit.morphisms), 6)
        self.assertTrue(validate(result.limit).passed)
        self.assertTrue(check_transformation(result.universal).passed)
        print("✅ {Two, Two} over the point is [Two, Two]")

    def test_bases_must_agree(self):
        two = constant_diagram(terminal_2category(), arrow_category())
        with self.assertRaises(ShapeMismatch):
            weighted_limit(two, constant_diagram(walking_2cell(), arrow_category()))

    def test_marked_conical_limits(self):
        base = locally_discrete(arrow_category(), name="Two")
        two = constant_diagram(base, arrow_category())
        chaotic = marked_lax_conical_limit(Marking.chaotic(base), two).limit
        trivial = marked_lax_conical_limit(Marking.trivial(base), two).limit
        self.assertEqual((len(chaotic.objects), len(chaotic.morphisms)), (3, 6))
        self.assertEqual((len(trivial.objects), len(trivial.morphisms)), (2, 3))

    def test_power_diagram_validates(self):
        self.assertTrue(validate(power_diagram(arrow_category(), f0())).passed)


class TestConicalization(unittest.TestCase):
    """Weighted limits as marked-lax conical limits over the elements."""

    def test_f0_weight(self):
        w = f0()
        f = constant_diagram(w.base, arrow_category())
        result = conicalization_check(w, f)
        self.assertTrue(result.report.passed)
        self.assertIsNotNone(result.comparison)
        self.assertEqual(len(result.comparison.on_obj), len(result.limit.objects))

    def test_arrow_over_the_point(self):
        two = constant_diagram(terminal_2category(), arrow_category())
        result = conicalization_check(two, two)
        self.assertTrue(result.report.passed)
        functor = result.comparison
        self.assertEqual((len(functor.src.objects), len(functor.src.morphisms)), (3, 6))
        self.assertEqual((len(functor.tgt.objects), len(functor.tgt.morphisms)), (3, 6))

    def test_slice_weights_validate(self):
        self.assertTrue(validate(weight_laxn(f0())).passed)
        self.assertTrue(validate(weight_oplaxn(f0())).passed)

    def test_weight_laxn_equivalence(self):
        z = f0()
        f = constant_diagram(elements_op(z).total, arrow_category())
        result = weight_laxn_equivalence_check(z, f)
        self.assertTrue(result.report.passed)
        self.assertEqual(result.flavor, Flavor.MARKED_LAX)
        with self.assertRaises(ShapeMismatch):
            weight_laxn_equivalence_check(z, constant_diagram(z.base, arrow_category()))

    @given(st.integers(min_value=0, max_value=200))
    @settings(deadline=None, max_examples=10)
    def test_generated_conicalization(self, seed):
        w, f = random_pair(seed)
        self.assertTrue(conicalization_check(w, f).report.passed)

    @given(st.integers(min_value=0, max_value=1000))
    @settings(deadline=None, max_examples=50)
    def test_generated_weight_laxn_equivalence(self, seed):
        z, f = weight_instance(seed)
        result = weight_laxn_equivalence_check(z, f)
        self.assertTrue(result.report.passed, result.report.violations[:3])


class TestColimits(unittest.TestCase):
    """Candidates for marked oplax colimits, certified on probes."""

    def test_chaotic_cocone_is_a_colimit(self):
        marking, w, f, candidate, mu = chaotic_two_cocone()
        self.assertTrue(check_transformation(mu).passed)
        report = is_marked_oplax_colimit(marking, w, f, candidate, mu)
        self.assertTrue(report.passed)
        self.assertEqual(report.notes, [PROBE_RELATIVE])
        self.assertEqual(report.counts["Two:functors"], 3)
        self.assertEqual(report.counts["Two:cocylinders"], 3)
        print("✅ Two is the chaotic oplax colimit of Δ1")

    def test_default_colimit_family(self):
        self.assertEqual([c.name for c in default_probes()], ["One", "Two", "Iso", "Square"])

    def test_chaotic_cocone_on_the_walking_iso(self):
        marking, w, f, candidate, mu = chaotic_two_cocone()
        report = is_marked_oplax_colimit(marking, w, f, candidate, mu, probes=[walking_iso()])
        self.assertTrue(report.passed)
        self.assertEqual(report.counts["Iso:functors"], 4)
        self.assertEqual(report.counts["Iso:cocylinders"], 4)

    def test_cocylinder_category(self):
        marking, w, f, _, _ = chaotic_two_cocone()
        cocylinders = marked_oplax_cocylinder_category(marking, w, f, arrow_category())
        self.assertEqual(len(cocylinders.objects), 3)
        self.assertTrue(validate(cocylinders).passed)

    def test_point_candidate_fails_on_arrow_probe(self):
        marking, w, f, candidate, mu = terminal_cocone()
        self.assertTrue(check_transformation(mu).passed)
        report = is_marked_oplax_colimit(marking, w, f, candidate, mu)
        self.assertFalse(report.passed)
        self.assertEqual(report.counts["Two:functors"], 2)
        self.assertEqual(report.counts["Two:cocylinders"], 3)
        self.assertEqual({v.witness[0] for v in report.violations}, {"Two", "Iso", "Square"})
        self.assertEqual(report.counts["Square:functors"], 4)
        self.assertEqual(report.counts["Square:cocylinders"], 9)
        passing = is_marked_oplax_colimit(marking, w, f, candidate, mu, probes=[terminal_category()])
        self.assertTrue(passing.passed)

    def test_marking_on_wrong_carrier(self):
        marking, w, f, candidate, mu = chaotic_two_cocone()
        with self.assertRaises(ShapeMismatch):
            is_marked_oplax_colimit(Marking.chaotic(walking_2cell()), w, f, candidate, mu)


if __name__ == '__main__':
    unittest.main()
