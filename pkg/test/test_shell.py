#!/usr/bin/env python3
"""
Tests for the declaration language, documents, task running, DOT export and the command line.
"""

import json
import os
import sys
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from cat2.config import use_limits
from cat2.corpus import f0
from cat2.diagrams import Flavor
from cat2.elements import elements_op
from cat2.errors import ClosureDiverged, DanglingReference, ParseError, ShapeMismatch
from cat2.kan.extension import KanReport
from cat2.kernel import Finite2Category, FiniteCategory, terminal_category, walking_2cell
from cat2.shell import Document, Environment, Probes, dumps_report, export_dot, load, parse, parse_dsl, run, serialize
from cat2.shell.cli import main
from cat2.shell.schema import DECLARATION_KINDS

FIXTURES = Path(__file__).parent / "fixtures"


def fixture(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


class TestDeclarationLanguage(unittest.TestCase):
    """Parsing and closing presentations."""

    def test_free_category_on_a_path(self):
        doc = parse_dsl("category Three { objects: a b c; arrows: f: a -> b, g: b -> c }")
        c = Environment(doc).lookup("Three")
        self.assertIsInstance(c, FiniteCategory)
        self.assertEqual(sorted(c.morphisms), ["f", "f.g", "g", "id_a", "id_b", "id_c"])
        self.assertEqual(c.compose("g", "f"), "f.g")

    def test_relations_identify_paths(self):
        doc = parse_dsl("category I { objects: a b; arrows: i: a -> b, j: b -> a; relations: i.j = id_a, j.i = id_b }")
        c = Environment(doc).lookup("I")
        self.assertEqual(len(c.morphisms), 4)
        self.assertEqual(c.inverse("i"), "j")

    def test_two_category_with_a_cell(self):
        doc = parse_dsl("twocategory C { objects: a b; arrows: f: a -> b, g: a -> b; cells: m: f => g }")
        k = Environment(doc).lookup("C")
        self.assertIsInstance(k, Finite2Category)
        self.assertEqual(k.two_cells["m"], ("f", "g"))
        self.assertEqual(len(k.two_cells), len(walking_2cell().two_cells))

    def test_undeclared_object(self):
        with self.assertRaises(DanglingReference) as ctx:
            parse_dsl(fixture("bad_category.dsl"))
        self.assertEqual(ctx.exception.name, "b")

    def test_syntax_error_has_a_line(self):
        with self.assertRaises(ParseError) as ctx:
            parse_dsl("category A { objects: a }\ncategory B { objects a }\n")
        self.assertEqual(ctx.exception.line, 2)

    def test_unknown_flavor(self):
        text = fixture("lax_square.dsl").replace("as marked_lax", "as sideways")
        with self.assertRaises(ParseError):
            parse_dsl(text)

    def test_infinite_closure_is_capped(self):
        with use_limits(max_closure=20):
            with self.assertRaises(ClosureDiverged):
                parse_dsl("category Loop { objects: a; arrows: e: a -> a }")

    def test_relations_make_loops_finite(self):
        doc = parse_dsl("category Z2 { objects: a; arrows: e: a -> a; relations: e.e = id_a }")
        self.assertEqual(len(Environment(doc).lookup("Z2").morphisms), 2)


class TestDocuments(unittest.TestCase):
    """JSON form, expressions and the environment."""

    def test_json_form_is_canonical(self):
        doc = parse(fixture("f0.dsl"))
        text = serialize(doc)
        again = parse(text)
        self.assertEqual(again, doc)
        self.assertEqual(serialize(again), text)

    def test_every_fixture_roundtrips(self):
        documents = sorted(p for p in FIXTURES.iterdir() if p.name != "bad_category.dsl")
        self.assertGreaterEqual(len(documents), 20)
        kinds, flavors = set(), set()
        for path in documents:
            with self.subTest(fixture=path.name):
                doc = load(path)
                text = serialize(doc)
                self.assertEqual(parse(text), doc)
                self.assertEqual(serialize(parse(text)), text)
                kinds.update(kind for kind in DECLARATION_KINDS if getattr(doc, kind))
                flavors.update(t.flavor for t in doc.transformations)
        self.assertEqual(kinds, set(DECLARATION_KINDS))
        self.assertEqual(flavors, set(Flavor))

    def test_json_fixture(self):
        doc = load(FIXTURES / "arrow.json")
        self.assertEqual([c.name for c in doc.categories], ["A"])
        self.assertEqual(len(doc.tasks), 2)

    def test_invalid_json(self):
        with self.assertRaises(ParseError):
            parse('{"categories": [{"name": "A"}]}')

    def test_expressions(self):
        env = Environment(parse_dsl(fixture("f0.dsl")))
        self.assertIsInstance(env.evaluate("elements(G).total"), Finite2Category)
        self.assertEqual(env.evaluate("F0"), f0())
        with self.assertRaises(ParseError):
            env.evaluate("G.nothing")
        with self.assertRaises(DanglingReference):
            env.evaluate("nowhere(G)")
        with self.assertRaises(ShapeMismatch):
            env.category("G")
        with self.assertRaises(ShapeMismatch):
            env.evaluate("underlying(Two)")
        with self.assertRaises(ParseError):
            env.evaluate("op(G, G)")

    def test_declared_names_fall_back_to_fixtures(self):
        env = Environment(Document())
        self.assertEqual(env.lookup("Two").name, "Two")
        with self.assertRaises(DanglingReference):
            env.lookup("Nope")


class TestRunner(unittest.TestCase):
    """Running tasks and writing reports."""

    def test_f0_tasks(self):
        report, exports = run(parse(fixture("f0.dsl")), timing=False)
        self.assertTrue(report.passed, [t.error for t in report.tasks])
        elements = report.tasks[1]
        self.assertEqual(elements.counts["objects"], 3)
        self.assertEqual(elements.counts["morphisms"], 6)
        hom = report.tasks[4]
        self.assertEqual((hom.counts["objects"], hom.counts["morphisms"]), (3, 6))
        self.assertIn("task1-elements", exports)
        self.assertIn("B", exports)
        print("✅ F0 document passes")

    def test_transformation_document(self):
        report, _ = run(parse(fixture("lax_square.dsl")), timing=False)
        self.assertTrue(report.passed)
        self.assertEqual([(t.counts["objects"], t.counts["morphisms"]) for t in report.tasks[1:]], [(3, 6), (2, 3)])

    def test_json_document_runs(self):
        report, _ = run(load(FIXTURES / "arrow.json"))
        self.assertTrue(report.passed)
        self.assertEqual(report.tasks[0].counts, {"objects": 2, "morphisms": 3})
        self.assertEqual(sorted(report.timing), ["0:validate", "1:elements"])

    def test_empty_document_passes(self):
        report, exports = run(Document())
        self.assertTrue(report.passed)
        self.assertEqual(report.tasks, [])
        self.assertEqual(exports, {})

    def test_failing_task_does_not_stop_the_run(self):
        doc = parse_dsl("task frobnicate ()\ntask validate (x = Two)\ntask validate (x = Missing)")
        report, _ = run(doc, timing=False)
        self.assertFalse(report.passed)
        self.assertEqual(report.tasks[0].error.type, "ParseError")
        self.assertTrue(report.tasks[1].passed)
        self.assertEqual(report.tasks[2].error.type, "DanglingReference")

    def test_mistyped_arguments_fail_the_task_only(self):
        doc = parse_dsl(
            "task elements (f = Two)\n"
            "task validate (x = underlying(Two))\n"
            "task check-opfib (k = One)\n"
            "task validate (x = Two)"
        )
        report, exports = run(doc, timing=False)
        self.assertFalse(report.passed)
        self.assertEqual([t.error.type for t in report.tasks[:3]], ["ShapeMismatch"] * 3)
        self.assertIn("cannot be a FiniteCategory", report.tasks[0].error.message)
        self.assertTrue(report.tasks[3].passed)
        self.assertNotIn("task0-elements", exports)
        print("✅ Mistyped arguments are reported, the run goes on")

    def test_category_families_reach_the_weak_kan_check(self):
        doc = parse_dsl(
            fixture("f0.dsl").split("task")[0]
            + "task weak-kan (k = elements(G).projection, f = constant(elements(G).total, One), "
            "l = G, lam = lax_comma_point(G).lam)"
        )
        with patch("cat2.shell.runner.weak_kan_check", return_value=KanReport.of(per_probe={})) as check:
            run(doc, timing=False)
            run(doc, Probes(categories=[terminal_category()]), timing=False)
        self.assertIsNone(check.call_args_list[0].args[4])
        forwarded = check.call_args_list[1].args[4]
        self.assertEqual(len(forwarded), 3)
        self.assertEqual(forwarded[0].name, "Δ1")
        self.assertEqual(forwarded[1].name, "G")

    def test_report_is_deterministic_without_timing(self):
        doc = parse(fixture("f0.dsl"))
        first = dumps_report(run(doc, timing=False)[0])
        second = dumps_report(run(doc, timing=False)[0])
        self.assertEqual(first, second)
        data = json.loads(first)
        self.assertTrue(data["pass"])
        self.assertNotIn("timing", data)


class TestDotExport(unittest.TestCase):
    """Graphviz text for categories and elements."""

    def test_elements_of_f0(self):
        text = export_dot(elements_op(f0()), "F0")
        lines = [line.strip() for line in text.splitlines()[1:-1]]
        edges = [line for line in lines if "->" in line]
        nodes = [line for line in lines if "->" not in line]
        self.assertEqual(len(nodes), 3)
        self.assertEqual(len(edges), 3)
        self.assertEqual(sum("bold" in line for line in edges), 1)
        self.assertTrue(text.startswith('digraph "F0" {'))

    def test_two_cell_goes_between_midpoints(self):
        text = export_dot(walking_2cell())
        self.assertIn('"f@mid" -> "g@mid" [label="delta", style=dashed];', text)


class TestCommandLine(unittest.TestCase):
    """Exit status and files written by `cat2 run`."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_passing_document(self):
        out = self.dir / "report.json"
        code = main(["run", "--in", str(FIXTURES / "f0.dsl"), "--out", str(out), "--no-timing"])
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out.read_text(encoding="utf-8"))["pass"])

    def test_failing_task(self):
        doc = self.dir / "fail.dsl"
        doc.write_text("task frobnicate ()\n", encoding="utf-8")
        self.assertEqual(main(["run", "--in", str(doc), "--out", str(self.dir / "r.json")]), 1)

    def test_unreadable_input(self):
        self.assertEqual(main(["run", "--in", str(self.dir / "missing.dsl")]), 2)
        self.assertEqual(main(["run", "--in", str(FIXTURES / "bad_category.dsl")]), 2)

    def test_size_cap_from_the_command_line(self):
        out = self.dir / "r.json"
        code = main(["run", "--in", str(FIXTURES / "arrow.json"), "--out", str(out), "--max-morphisms", "2"])
        self.assertEqual(code, 1)
        report = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual(report["tasks"][0]["error"]["type"], "SizeExceeded")

    def test_dot_files(self):
        prefix = str(self.dir / "dot" / "")
        code = main(["run", "--in", str(FIXTURES / "f0.dsl"), "--out", str(self.dir / "r.json"), "--dot", prefix])
        self.assertEqual(code, 0)
        written = sorted(p.name for p in (self.dir / "dot").iterdir())
        self.assertIn("task1-elements.dot", written)
        self.assertIn("B.dot", written)


if __name__ == '__main__':
    unittest.main()
