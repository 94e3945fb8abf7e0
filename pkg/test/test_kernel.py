#!/usr/bin/env python3
"""
Tests for finite categories, finite 2-categories and their validation.
"""

import os
import sys
import unittest
from unittest.mock import patch

from hypothesis import given, settings, strategies as st

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cat2.config import current_limits, get_settings, use_limits
from cat2.corpus import commutative_square, composable_pair, random_diagram, walking_iso
from cat2.errors import DanglingReference, ShapeMismatch, SizeExceeded
from cat2.kernel import (
    Duality,
    FiniteCategory,
    NaturalTransformation,
    arrow_category,
    constant_two_functor,
    discrete,
    dualize,
    enumerate_functors,
    enumerate_natural_transformations,
    enumerate_two_functors,
    functor_category,
    identity_functor,
    identity_two_functor,
    iso_of_2categories,
    iso_of_categories,
    locally_discrete,
    point,
    product,
    product_2category,
    slice_category,
    terminal_2category,
    terminal_category,
    validate,
    walking_2cell,
)
from cat2.kernel.search import Constraint, solve


class TestFiniteCategory(unittest.TestCase):
    """Composition tables, identities and the law checks."""

    def test_arrow_category_is_valid(self):
        two = arrow_category()
        report = validate(two)
        self.assertTrue(report.passed)
        self.assertEqual(report.counts, {"objects": 2, "morphisms": 3})
        self.assertEqual(two.compose("s", "id_0"), "s")
        self.assertEqual(two.hom("0", "1"), ["s"])
        print("✅ Walking arrow validates")

    def test_missing_composite_is_reported(self):
        two = arrow_category()
        composition = {gf: h for gf, h in two.composition.items() if gf != ("s", "id_0")}
        broken = FiniteCategory.build(two.objects, two.morphisms, two.identities, composition, name="Broken")
        report = validate(broken)
        self.assertFalse(report.passed)
        self.assertEqual([(v.law, v.witness) for v in report.violations], [("composition-totality", ["s", "id_0"])])

    def test_undeclared_identity_raises(self):
        two = arrow_category()
        identities = dict(two.identities, **{"1": "id_nowhere"})
        broken = FiniteCategory.build(two.objects, two.morphisms, identities, two.composition)
        with self.assertRaises(DanglingReference):
            validate(broken)

    def test_non_composable_pair(self):
        with self.assertRaises(ShapeMismatch):
            arrow_category().compose("id_0", "s")

    def test_opposite_reverses_arrows(self):
        two = arrow_category().op()
        self.assertEqual(two.morphisms["s"], ("1", "0"))
        self.assertEqual(two.compose("id_0", "s"), "s")
        self.assertTrue(validate(two).passed)

    def test_inverse_in_walking_iso(self):
        iso = walking_iso()
        self.assertTrue(validate(iso).passed)
        self.assertEqual(iso.inverse("i"), "j")
        self.assertIsNone(arrow_category().inverse("s"))

    def test_fixture_categories_are_valid(self):
        for c in (commutative_square(), composable_pair(), discrete(["x", "y"]), terminal_category()):
            self.assertTrue(validate(c).passed, c.name)
        self.assertEqual(commutative_square().compose("k", "h"), "diagonal")

    def test_product_and_slice(self):
        two = arrow_category()
        square = product(two, two)
        self.assertEqual(len(square.objects), 4)
        self.assertEqual(len(square.morphisms), 9)
        self.assertTrue(validate(square).passed)
        over = slice_category(two, "1")
        self.assertEqual(len(over.objects), 2)
        self.assertEqual(len(over.morphisms), 3)
        self.assertTrue(validate(over).passed)

    def test_size_cap(self):
        with use_limits(max_morphisms=2):
            with self.assertRaises(SizeExceeded) as ctx:
                arrow_category()
        self.assertEqual(ctx.exception.cap, 2)
        self.assertEqual(ctx.exception.size, 3)
        self.assertTrue(validate(arrow_category()).passed)


class TestFunctors(unittest.TestCase):
    """Functors, natural transformations and their enumeration."""

    def test_functors_between_arrows(self):
        two = arrow_category()
        found = list(enumerate_functors(two, two))
        self.assertEqual(len(found), 3)
        self.assertIn(identity_functor(two), found)
        for f in found:
            self.assertTrue(validate(f).passed)

    def test_transformations_between_points(self):
        two, one = arrow_category(), terminal_category()
        zero, top = point(two, "0", one), point(two, "1", one)
        self.assertEqual([t.components for t in enumerate_natural_transformations(zero, top)], [{"*": "s"}])
        self.assertEqual(list(enumerate_natural_transformations(top, zero)), [])

    def test_functor_category_of_points(self):
        fc = functor_category(terminal_category(), arrow_category())
        self.assertEqual(len(fc.category.objects), 2)
        self.assertEqual(len(fc.category.morphisms), 3)
        self.assertTrue(validate(fc.category).passed)

    def test_whiskering(self):
        two, one = arrow_category(), terminal_category()
        zero, top = point(two, "0", one), point(two, "1", one)
        t = NaturalTransformation(zero, top, {"*": "s"})
        ident = identity_functor(two)
        self.assertEqual(t.whisker_left(ident), t)
        self.assertEqual(t.whisker_right(identity_functor(one)), t)
        self.assertTrue(validate(t).passed)

    def test_iso_of_categories(self):
        self.assertTrue(iso_of_categories(identity_functor(walking_iso())).passed)
        two, one = arrow_category(), terminal_category()
        report = iso_of_categories(point(two, "0", one))
        self.assertFalse(report.passed)
        self.assertIn("non-hit", {v.law for v in report.violations})


class TestTwoCategory(unittest.TestCase):
    """Finite strict 2-categories, duals and 2-functors."""

    def test_walking_two_cell(self):
        cell = walking_2cell()
        self.assertTrue(validate(cell).passed)
        self.assertEqual(len(cell.one_cells), 4)
        self.assertEqual(len(cell.two_cells), 5)
        self.assertEqual(cell.two_cells["delta"], ("f", "g"))
        self.assertEqual(cell.vcompose("delta", "id_f"), "delta")
        self.assertEqual(cell.whisker_left("id_b", "delta"), "delta")
        self.assertIsNone(cell.inverse2("delta"))
        self.assertTrue(validate(cell.underlying()).passed)

    def test_duals(self):
        cell = walking_2cell()
        op, co, coop = (dualize(cell, mode) for mode in (Duality.OP, Duality.CO, Duality.COOP))
        self.assertEqual(op.one_cells["f"], ("b", "a"))
        self.assertEqual(op.two_cells["delta"], ("f", "g"))
        self.assertEqual(co.one_cells["f"], ("a", "b"))
        self.assertEqual(co.two_cells["delta"], ("g", "f"))
        self.assertEqual(coop.one_cells["f"], ("b", "a"))
        self.assertEqual(coop.two_cells["delta"], ("g", "f"))
        for k in (op, co, coop):
            self.assertTrue(validate(k).passed, k.name)

    def test_locally_discrete_and_products(self):
        k = locally_discrete(composable_pair())
        self.assertTrue(validate(k).passed)
        self.assertEqual(len(k.two_cells), len(k.one_cells))
        self.assertEqual(k.compose1("q", "p"), "qp")
        square = product_2category(terminal_2category(), walking_2cell())
        self.assertTrue(validate(square).passed)
        self.assertEqual(len(square.two_cells), 5)

    def test_two_functors(self):
        cell = walking_2cell()
        ident = identity_two_functor(cell)
        self.assertTrue(validate(ident).passed)
        self.assertTrue(iso_of_2categories(ident).passed)
        self.assertEqual(ident.after(ident), ident)
        self.assertEqual(ident.inverse(), ident)
        collapse = constant_two_functor(cell, terminal_2category(), "*")
        self.assertTrue(validate(collapse).passed)
        self.assertIsNone(collapse.inverse())

    def test_enumerated_two_functors_are_valid(self):
        cell = walking_2cell()
        found = list(enumerate_two_functors(cell, cell))
        self.assertIn(identity_two_functor(cell), found)
        for h in found:
            self.assertTrue(validate(h).passed)


class TestSearch(unittest.TestCase):
    """The backtracking solver."""

    def test_no_slots_yields_one_solution(self):
        self.assertEqual(list(solve([], lambda slot, s: [], [], "empty")), [{}])

    def test_false_constant_constraint(self):
        never = Constraint((), lambda s: False)
        self.assertEqual(list(solve(["x"], lambda slot, s: [1, 2], [never], "never")), [])

    def test_solutions_in_lexicographic_order(self):
        distinct = Constraint(("x", "y"), lambda s: s["x"] != s["y"])
        found = list(solve(["x", "y"], lambda slot, s: [0, 1, 2], [distinct], "pairs"))
        self.assertEqual(len(found), 6)
        self.assertEqual(found[0], {"x": 0, "y": 1})
        self.assertEqual(found[-1], {"x": 2, "y": 1})

    def test_candidate_cap(self):
        with use_limits(max_candidates=3):
            with self.assertRaises(SizeExceeded):
                list(solve(["x", "y"], lambda slot, s: [0, 1, 2], [], "capped"))


class TestConfig(unittest.TestCase):
    """Settings from the environment and local limits."""

    def test_environment_overrides(self):
        with patch.dict(os.environ, {"CAT2_MAX_MORPHISMS": "17", "CAT2_CORPUS_SIZE": "3"}):
            s = get_settings()
        self.assertEqual(s.max_morphisms, 17)
        self.assertEqual(s.corpus_size, 3)

    def test_use_limits_is_local(self):
        before = current_limits()
        with use_limits(max_candidates=5) as inner:
            self.assertEqual(inner.max_candidates, 5)
            self.assertEqual(inner.max_morphisms, before.max_morphisms)
            with use_limits(max_morphisms=9):
                self.assertEqual(current_limits().max_candidates, 5)
        self.assertEqual(current_limits(), before)


class TestGeneratedKernel(unittest.TestCase):
    """Laws on generated diagrams."""

    @given(st.integers(min_value=0, max_value=500))
    @settings(deadline=None, max_examples=25)
    def test_generated_fibers_and_duals_validate(self, seed):
        f = random_diagram(seed)
        self.assertTrue(validate(f.base).passed)
        for c in f.on_obj.values():
            self.assertTrue(validate(c.op()).passed)
        for mode in Duality:
            self.assertTrue(validate(dualize(f.base, mode)).passed)


if __name__ == '__main__':
    unittest.main()
