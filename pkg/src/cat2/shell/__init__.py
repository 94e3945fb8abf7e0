"""Documents, the declaration language, task running and DOT export."""

from .builder import Environment
from .dot import export_dot
from .dsl import parse_dsl
from .runner import OPERATIONS, Probes, run
from .schema import Document, Report, TaskResult
from .serialize import dumps_report, load, parse, serialize

__all__ = [
    "OPERATIONS",
    "Document",
    "Environment",
    "Probes",
    "Report",
    "TaskResult",
    "dumps_report",
    "export_dot",
    "load",
    "parse",
    "parse_dsl",
    "run",
    "serialize",
]
