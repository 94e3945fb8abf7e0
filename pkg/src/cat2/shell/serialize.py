"""Reading and writing documents and reports."""

import json
import logging
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from ..errors import ParseError
from .dsl import parse_dsl
from .schema import Document, Report

logger = logging.getLogger(__name__)


def parse(text: str) -> Document:
    """A Document from JSON (text starting with "{") or from the DSL."""
    if text.lstrip().startswith("{"):
        try:
            return Document.model_validate_json(text)
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(part) for part in first["loc"])
            raise ParseError(f"invalid document at {where or 'top level'}: {first['msg']}") from None
    try:
        return parse_dsl(text)
    except ValidationError as e:
        raise ParseError(f"invalid document: {e.errors()[0]['msg']}") from None


def serialize(document: Document) -> str:
    """Canonical JSON: declarations sorted by name, keys sorted, tasks in order."""
    return json.dumps(document.model_dump(mode="json", exclude_none=True), sort_keys=True, indent=2) + "\n"


def dumps_report(report: Report) -> str:
    return json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"


def load(path: Union[str, Path]) -> Document:
    path = Path(path)
    logger.debug("reading %s", path)
    return parse(path.read_text(encoding="utf-8"))
