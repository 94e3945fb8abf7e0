#!/usr/bin/env python3
"""
Tests for Cat-valued 2-functors, transformations of every flavor and pasting.
"""

import os
import sys
import unittest

from hypothesis import given, settings, strategies as st

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cat2.corpus import f0, random_diagram, random_pair
from cat2.diagrams import (
    CAT,
    Flavor,
    Marking,
    Transformation,
    check_marking,
    check_transformation,
    constant_diagram,
    enumerate_transformations,
    fiber_op,
    hom_category,
    hom_data,
    hom_weight,
    identity_transformation_of,
    interchange_modification,
    join_flavors,
    paste,
    precompose,
    representable,
    sigma_hom_data,
    vertical,
)
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


def point_to_arrow():
    """Δ1 and ΔTwo over the walking arrow."""
    base = arrow_base()
    return constant_diagram(base, terminal_category()), constant_diagram(base, arrow_category())


class TestDiagrams(unittest.TestCase):
    """Cat-valued 2-functors and the standard constructions."""

    def test_fixture_diagram_validates(self):
        report = validate(f0())
        self.assertTrue(report.passed)
        print("✅ F0 validates")

    def test_constructions_validate(self):
        cell = walking_2cell()
        for d in (
            representable(cell, "a"),
            hom_weight(identity_two_functor(cell), "b"),
            fiber_op(f0()),
            constant_diagram(cell, arrow_category()),
        ):
            self.assertTrue(validate(d).passed, d.name)

    def test_representable_values(self):
        cell = walking_2cell()
        r = representable(cell, "a")
        self.assertEqual(r.obj("b").objects, ("f", "g"))
        self.assertEqual(r.two("delta").components, {"id_a": "delta"})

    def test_broken_diagram_is_reported(self):
        d = f0()
        broken = type(d)(d.base, d.on_obj, dict(d.on_1, f=d.on_1["id_a"]), d.on_2)
        report = validate(broken)
        self.assertFalse(report.passed)
        self.assertIn("diagram-typing", {v.law for v in report.violations})

    def test_precompose_with_identity(self):
        d = f0()
        self.assertEqual(precompose(d, identity_two_functor(d.base)), d)
        with self.assertRaises(ShapeMismatch):
            precompose(d, identity_two_functor(walking_2cell()))


class TestTransformations(unittest.TestCase):
    """Enumeration and law checks for every flavor."""

    def test_point_to_arrow_counts(self):
        one, two = point_to_arrow()
        expected = {
            Flavor.LAX: (3, 6),
            Flavor.OPLAX: (3, 6),
            Flavor.PSEUDO: (2, 3),
            Flavor.STRICT: (2, 3),
        }
        for flavor, (objects, morphisms) in expected.items():
            c = hom_data(one, two, flavor).category
            self.assertEqual((len(c.objects), len(c.morphisms)), (objects, morphisms), flavor.value)
            self.assertTrue(validate(c).passed)
        print("✅ Δ1 ⇒ ΔTwo counts: lax 3/6, strict 2/3")

    def test_markings_interpolate(self):
        one, two = point_to_arrow()
        base = one.base
        chaotic = hom_category(one, two, Flavor.MARKED_LAX, Marking.chaotic(base))
        trivial = hom_category(one, two, Flavor.MARKED_LAX, Marking.trivial(base))
        self.assertEqual((len(chaotic.objects), len(chaotic.morphisms)), (3, 6))
        self.assertEqual((len(trivial.objects), len(trivial.morphisms)), (2, 3))
        sigma = sigma_hom_data(one, two, Marking.trivial(base)).category
        self.assertEqual((len(sigma.objects), len(sigma.morphisms)), (2, 3))

    def test_flavor_and_marking_must_agree(self):
        one, two = point_to_arrow()
        with self.assertRaises(FlavorMismatch):
            enumerate_transformations(one, two, Flavor.MARKED_LAX)
        with self.assertRaises(FlavorMismatch):
            enumerate_transformations(one, two, Flavor.LAX, Marking.chaotic(one.base))
        with self.assertRaises(ShapeMismatch):
            enumerate_transformations(one, two, Flavor.MARKED_LAX, Marking.chaotic(walking_2cell()))

    def test_marking_checks(self):
        base = arrow_base()
        self.assertTrue(check_marking(Marking.chaotic(base)).passed)
        self.assertTrue(check_marking(Marking.trivial(base)).passed)
        report = check_marking(Marking(base, frozenset({"s"})))
        self.assertEqual({v.law for v in report.violations}, {"marking-units"})

    def test_enumerated_transformations_validate(self):
        one, two = point_to_arrow()
        for flavor in (Flavor.LAX, Flavor.OPLAX, Flavor.STRICT):
            for t in enumerate_transformations(one, two, flavor):
                self.assertTrue(check_transformation(t).passed)

    def test_wrong_structure_is_reported(self):
        one, two = point_to_arrow()
        (t,) = [t for t in enumerate_transformations(one, two, Flavor.LAX) if t.structure["s"].components["*"] == "s"]
        strict = Transformation(Flavor.STRICT, t.src, t.tgt, t.components, t.structure)
        report = check_transformation(strict)
        self.assertFalse(report.passed)
        self.assertIn("structure-identity", {v.law for v in report.violations})

    def test_lax_structure_orientation(self):
        one, two = point_to_arrow()
        for t in enumerate_transformations(one, two, Flavor.LAX):
            s = t.structure["s"]
            self.assertEqual(s.src, two.one("s").after(t.components["0"]))
            self.assertEqual(s.tgt, t.components["1"].after(one.one("s")))

    def test_identity_transformation(self):
        d = f0()
        t = identity_transformation_of(d)
        self.assertTrue(check_transformation(t).passed)
        self.assertIn(t, enumerate_transformations(d, d, Flavor.STRICT))


class TestPasting(unittest.TestCase):
    """Vertical composition, whiskering by 2-functors and interchange."""

    def test_join_flavors(self):
        base = arrow_base()
        m = Marking.chaotic(base)
        self.assertEqual(join_flavors(Flavor.STRICT, None, Flavor.LAX, None), (Flavor.LAX, None))
        self.assertEqual(join_flavors(Flavor.PSEUDO, None, Flavor.PSEUDO, None), (Flavor.PSEUDO, None))
        self.assertEqual(join_flavors(Flavor.MARKED_LAX, m, Flavor.MARKED_LAX, m), (Flavor.MARKED_LAX, m))
        self.assertEqual(join_flavors(Flavor.MARKED_LAX, m, Flavor.PSEUDO, None), (Flavor.LAX, None))
        with self.assertRaises(ShapeMismatch):
            join_flavors(Flavor.LAX, None, Flavor.OPLAX, None)

    def test_vertical_with_identity(self):
        one, two = point_to_arrow()
        for t in enumerate_transformations(one, two, Flavor.LAX):
            composite = vertical(identity_transformation_of(two), t)
            self.assertEqual(composite.flavor, Flavor.LAX)
            self.assertEqual(composite.components, t.components)
            self.assertTrue(check_transformation(composite).passed)

    def test_paste_along_identity_two_functor(self):
        one, two = point_to_arrow()
        for t in enumerate_transformations(one, two, Flavor.LAX):
            self.assertEqual(paste(t, identity_two_functor(t.base), "pre"), t)
        with self.assertRaises(ValueError):
            paste(t, t, "sideways")

    def test_interchange_cell(self):
        one, two = point_to_arrow()
        base = one.base
        point = terminal_2category()
        low, high = constant_two_functor(point, base, "0"), constant_two_functor(point, base, "1")
        (nu,) = enumerate_transformations(low, high, Flavor.LAX)
        self.assertEqual(nu.components, {"*": "s"})
        for lam in enumerate_transformations(one, two, Flavor.LAX):
            mod = interchange_modification(nu, lam)
            self.assertEqual(mod.components, {"*": lam.structure["s"]})

    def test_cat_horizontal_composition(self):
        one, two = point_to_arrow()
        lax = enumerate_transformations(one, two, Flavor.LAX)
        s = lax[0].structure["s"]
        ident = CAT.identity2(CAT.identity1(arrow_category()))
        self.assertEqual(CAT.hcompose(ident, s), s)


class TestGeneratedTransformations(unittest.TestCase):
    """Laws on generated diagrams."""

    @given(st.integers(min_value=0, max_value=500))
    @settings(deadline=None, max_examples=20)
    def test_generated_diagrams_validate(self, seed):
        d = random_diagram(seed)
        self.assertTrue(validate(d).passed)
        self.assertTrue(validate(fiber_op(d)).passed)

    @given(st.integers(min_value=0, max_value=200))
    @settings(deadline=None, max_examples=10)
    def test_lax_hom_contains_strict_hom(self, seed):
        f, g = random_pair(seed)
        lax = {t.tag for t in enumerate_transformations(f, g, Flavor.LAX)}
        for t in enumerate_transformations(f, g, Flavor.STRICT):
            self.assertTrue(check_transformation(t).passed)
            self.assertIn(t.tag, lax)


if __name__ == '__main__':
    unittest.main()
