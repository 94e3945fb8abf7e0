"""cat2 run --in doc.json|doc.dsl --out report.json [options]

Exit status is 0 when every task passes, 1 when some task fails and 2 when
the input cannot be read.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from ..config import configure_logging, use_limits
from ..errors import Cat2Error
from .builder import Environment
from .dot import export_dot
from .runner import Probes, run
from .serialize import dumps_report, load

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cat2", description="Finite 2-category computations")
    commands = parser.add_subparsers(dest="command", required=True)
    run_cmd = commands.add_parser("run", help="Run the tasks of a document")
    run_cmd.add_argument("--in", dest="input", required=True, help="Document in JSON or DSL form")
    run_cmd.add_argument("--out", help="Report file (default: standard output)")
    run_cmd.add_argument("--dot", metavar="PREFIX", help="Write a .dot file per category-like declaration and result")
    run_cmd.add_argument("--max-morphisms", type=int, help="Cap on materialized morphisms")
    run_cmd.add_argument("--max-candidates", type=int, help="Cap on raw search candidates")
    run_cmd.add_argument("--probes", help="Document whose categories and 2-categories replace the default probes")
    run_cmd.add_argument("--no-timing", action="store_true", help="Leave timing out of the report")
    run_cmd.add_argument("--verbose", "-v", action="store_true", help="Log at DEBUG level")
    return parser


def load_probes(path: Optional[str]) -> Probes:
    if not path:
        return Probes()
    env = Environment(load(path))
    categories = [env.lookup(name) for name in env.declared("categories")]
    two_categories = [env.lookup(name) for name in env.declared("two_categories")]
    return Probes(categories or None, two_categories or None)


def write_dot(prefix: str, exports: dict) -> List[Path]:
    written = []
    for name, entity in sorted(exports.items()):
        path = Path(f"{prefix}{name}.dot")
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(export_dot(entity, name), encoding="utf-8")
        written.append(path)
    return written


def _run(args: argparse.Namespace) -> int:
    with use_limits(args.max_morphisms, args.max_candidates):
        try:
            document = load(args.input)
            probes = load_probes(args.probes)
        except (Cat2Error, OSError) as e:
            print(f"❌ Cannot read input: {e}", file=sys.stderr)
            return 2
        print(f"📋 Loaded {len(document.tasks)} tasks from {args.input}", file=sys.stderr)
        report, exports = run(document, probes, timing=not args.no_timing)

    text = dumps_report(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.dot:
        written = write_dot(args.dot, exports)
        print(f"📝 Wrote {len(written)} DOT files", file=sys.stderr)

    for i, task in enumerate(report.tasks):
        mark = "✅" if task.passed else "❌"
        detail = f" ({task.error.type}: {task.error.message})" if task.error else ""
        print(f"{mark} {i}: {task.op}{detail}", file=sys.stderr)
    failed = sum(1 for task in report.tasks if not task.passed)
    if failed:
        print(f"❌ {failed} of {len(report.tasks)} tasks failed", file=sys.stderr)
        return 1
    print("✅ All tasks passed!", file=sys.stderr)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging("DEBUG" if args.verbose else None)
    if args.command == "run":
        return _run(args)
    return 2
