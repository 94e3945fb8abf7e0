#!/usr/bin/env python3
"""
Counts from the search solver checked against plain nested loops.
"""

import itertools
import os
import sys
import unittest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cat2.corpus import commutative_square, composable_pair, walking_iso
from cat2.diagrams import Flavor, constant_diagram, hom_data
from cat2.kernel import (
    arrow_category,
    discrete,
    enumerate_functors,
    enumerate_natural_transformations,
    locally_discrete,
    terminal_category,
)


def count_functors(c, d):
    """Every object map, then every typed choice of arrow images, kept when the laws hold."""
    found = 0
    for images in itertools.product(d.objects, repeat=len(c.objects)):
        on_obj = dict(zip(c.objects, images))
        arrows = sorted(c.morphisms)
        choices = [d.hom(on_obj[c.src(m)], on_obj[c.tgt(m)]) for m in arrows]
        for picked in itertools.product(*choices):
            on_mor = dict(zip(arrows, picked))
            if any(on_mor[c.identity(x)] != d.identity(on_obj[x]) for x in c.objects):
                continue
            if all(on_mor[gf] == d.compose(on_mor[g], on_mor[f]) for (g, f), gf in c.composition.items()):
                found += 1
    return found


def count_transformations(f, g):
    c, d = f.src, f.tgt
    found = 0
    choices = [d.hom(f.obj(x), g.obj(x)) for x in c.objects]
    for picked in itertools.product(*choices):
        at = dict(zip(c.objects, picked))
        natural = all(
            d.compose(g.mor(m), at[c.src(m)]) == d.compose(at[c.tgt(m)], f.mor(m)) for m in c.morphisms
        )
        found += natural
    return found


def lax_cones_into_constant_arrow(strict: bool):
    """Objects and arrows of the lax (or strict) cones from Δ1 to ΔTwo over the walking arrow.

    A cone is a pair (x0, x1) of objects of Two with a cell x0 -> x1; a
    modification is a pair of arrows, and every square commutes in a poset.
    """
    two = arrow_category()
    cones = [(x0, x1) for x0 in two.objects for x1 in two.objects if two.hom(x0, x1) and (not strict or x0 == x1)]
    arrows = 0
    for (x0, x1), (y0, y1) in itertools.product(cones, repeat=2):
        arrows += len(two.hom(x0, y0)) * len(two.hom(x1, y1))
    return len(cones), arrows


class TestFunctorCounts(unittest.TestCase):
    """enumerate_functors against exhaustive assignment."""

    def test_small_pairs(self):
        small = [terminal_category(), arrow_category(), walking_iso(), discrete(["x", "y"]), composable_pair()]
        for c in small:
            for d in small[:4]:
                self.assertEqual(len(list(enumerate_functors(c, d))), count_functors(c, d), (c.name, d.name))
        print("✅ Functor counts agree")

    def test_square_into_arrow(self):
        square, two = commutative_square(), arrow_category()
        self.assertEqual(len(list(enumerate_functors(square, two))), count_functors(square, two))


class TestTransformationCounts(unittest.TestCase):
    """Natural transformations and lax cones by nested loops."""

    def test_natural_transformations(self):
        three, two = composable_pair(), arrow_category()
        functors = list(enumerate_functors(three, two))
        for f in functors:
            for g in functors:
                self.assertEqual(len(list(enumerate_natural_transformations(f, g))), count_transformations(f, g))

    def test_cones_over_the_arrow(self):
        base = locally_discrete(arrow_category(), name="Two")
        one, two = constant_diagram(base, terminal_category()), constant_diagram(base, arrow_category())
        for flavor, strict in ((Flavor.LAX, False), (Flavor.STRICT, True)):
            c = hom_data(one, two, flavor).category
            self.assertEqual((len(c.objects), len(c.morphisms)), lax_cones_into_constant_arrow(strict))
        self.assertEqual(lax_cones_into_constant_arrow(False), (3, 6))
        self.assertEqual(lax_cones_into_constant_arrow(True), (2, 3))


if __name__ == '__main__':
    unittest.main()
