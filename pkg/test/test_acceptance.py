#!/usr/bin/env python3
"""
End-to-end checks over the generated corpus.

The default corpus holds 100 diagrams (CAT2_CORPUS_SIZE). Pair and instance
checks walk fixed seed ranges so every run sees the same examples.
"""

import os
import sys
import unittest
from unittest.mock import patch

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cat2.config import get_settings
from cat2.comma import check_lax_comma_object, elements_lax_comma_iso, equivalence_check, lax_comma_point
from cat2.corpus import corpus, f0, random_diagram, random_pair, weight_instance, yoneda_instance
from cat2.diagrams import Flavor, constant_diagram
from cat2.elements import canonical_lambda, certify, elements_op, is_discrete_2opfibration, reconstruct, relabel_fibers
from cat2.errors import NoInstance
from cat2.kan import lan_delta1_check, pointwise_kan_check, weak_kan_check, yoneda_check
from cat2.kernel import iso_of_2categories, terminal_category, validate
from cat2.limits import conicalization_check, weight_laxn_equivalence_check

PAIRS = range(30)
INSTANCES = range(50)


class TestCorpus(unittest.TestCase):
    """The corpus itself."""

    def test_size_and_order(self):
        found = corpus(size=4)
        self.assertEqual(len(found), 4)
        self.assertEqual(found[0], f0())
        self.assertEqual([d.name for d in found[1:]], ["R0", "R1", "R2"])

    def test_default_size(self):
        with patch.dict(os.environ, {}, clear=True):
            self.assertEqual(get_settings().corpus_size, 100)

    def test_size_from_environment(self):
        with patch.dict(os.environ, {"CAT2_CORPUS_SIZE": "2"}):
            self.assertEqual(len(corpus()), 2)

    def test_generation_is_deterministic(self):
        self.assertEqual(random_diagram(41), random_diagram(41))

    def test_empty_search_raises(self):
        with patch("cat2.corpus.solve", return_value=iter([])):
            with self.assertRaises(NoInstance) as caught:
                random_diagram(3)
        self.assertEqual(caught.exception.seed, 3)
        self.assertEqual(caught.exception.what, "diagram")


class TestCorpusAcceptance(unittest.TestCase):
    """The main correspondences on every member of the default corpus."""

    @classmethod
    def setUpClass(cls):
        cls.diagrams = corpus()

    def test_elements_certify_and_reconstruct(self):
        for d in self.diagrams:
            with self.subTest(diagram=d.name):
                self.assertTrue(validate(d).passed)
                elements = elements_op(d)
                self.assertTrue(is_discrete_2opfibration(elements.projection).passed)
                self.assertTrue(certify(elements.opfib).passed)
                g, iso = reconstruct(elements.opfib)
                self.assertEqual(g, relabel_fibers(d))
                self.assertTrue(iso_of_2categories(iso).passed)
        print(f"✅ {len(self.diagrams)} corpus members certify and reconstruct")

    def test_elements_as_point_comma(self):
        for d in self.diagrams:
            with self.subTest(diagram=d.name):
                self.assertTrue(elements_lax_comma_iso(d).passed)

    def test_point_comma_is_a_lax_comma(self):
        for d in self.diagrams[:30]:
            with self.subTest(diagram=d.name):
                report = check_lax_comma_object(lax_comma_point(d))
                self.assertTrue(report.passed, report.violations[:3])

    def test_kan_extensions(self):
        for d in self.diagrams:
            with self.subTest(diagram=d.name):
                lan = lan_delta1_check(d)
                self.assertTrue(lan.passed, lan.per_object)
                elements = elements_op(d)
                one = constant_diagram(elements.total, terminal_category())
                lam = canonical_lambda(d, elements)
                if pointwise_kan_check(elements.opfib, one, d, lam).passed:
                    weak = weak_kan_check(elements.opfib.k, one, d, lam, restricted=True)
                    self.assertTrue(weak.passed, weak.per_probe)
                else:
                    self.fail(f"{d.name} is not a pointwise extension")
        print("✅ Every corpus member is Lan of Δ1, pointwise and weakly")


class TestPairAcceptance(unittest.TestCase):
    """Correspondences on fixed ranges of generated pairs and instances."""

    def test_fully_faithfulness(self):
        for seed in PAIRS:
            f, g = random_pair(seed)
            for flavor in (Flavor.LAX, Flavor.PSEUDO, Flavor.STRICT):
                with self.subTest(seed=seed, flavor=flavor.value):
                    report = equivalence_check(f, g, flavor)
                    self.assertTrue(report.passed, report.violations[:3])
                    counts = report.counts
                    self.assertEqual(counts["left-objects"], counts["right-objects"])
                    self.assertEqual(counts["left-morphisms"], counts["right-morphisms"])

    def test_conicalization(self):
        for seed in INSTANCES:
            with self.subTest(seed=seed):
                w, f = random_pair(seed)
                self.assertTrue(conicalization_check(w, f).report.passed)

    def test_weight_laxn_equivalence(self):
        for seed in INSTANCES:
            with self.subTest(seed=seed):
                z, f = weight_instance(seed)
                result = weight_laxn_equivalence_check(z, f)
                self.assertTrue(result.report.passed)
                self.assertEqual(result.flavor, Flavor.MARKED_LAX)

    def test_yoneda(self):
        for seed in INSTANCES:
            with self.subTest(seed=seed):
                p, f = yoneda_instance(seed)
                report = yoneda_check(p, f)
                self.assertTrue(report.passed, report.violations[:3])
        print("✅ Yoneda correspondence on 50 instances")


if __name__ == '__main__':
    unittest.main()
