"""Runtime configuration.

Settings come from the environment (a local ``.env`` file is honoured).
The caps that guard materialization and search are held in a context
variable so one CLI run, or one test, can tighten or relax them locally.
"""

import logging
import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace
from typing import Iterator, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

logger = logging.getLogger(__name__)


class Settings(BaseModel):
    max_morphisms: int = Field(default=4096, ge=1, description="Cap on materialized morphisms")
    max_candidates: int = Field(default=10**6, ge=1, description="Cap on raw search candidates")
    max_closure: int = Field(default=512, ge=1, description="Cap on arrows produced by DSL closure")
    log_level: str = Field(default="WARNING")
    corpus_size: int = Field(default=100, ge=1, description="Examples per generated test corpus")


def get_settings() -> Settings:
    """Read settings from the environment."""
    values = {
        "max_morphisms": os.getenv("CAT2_MAX_MORPHISMS"),
        "max_candidates": os.getenv("CAT2_MAX_CANDIDATES"),
        "max_closure": os.getenv("CAT2_MAX_CLOSURE"),
        "log_level": os.getenv("CAT2_LOG_LEVEL"),
        "corpus_size": os.getenv("CAT2_CORPUS_SIZE"),
    }
    return Settings(**{key: value for key, value in values.items() if value is not None})


@dataclass(frozen=True)
class Limits:
    max_morphisms: int
    max_candidates: int
    max_closure: int

    @classmethod
    def from_settings(cls, settings: Settings) -> "Limits":
        return cls(settings.max_morphisms, settings.max_candidates, settings.max_closure)


_active_limits: ContextVar[Optional[Limits]] = ContextVar("cat2_limits", default=None)


def current_limits() -> Limits:
    limits = _active_limits.get()
    if limits is None:
        limits = Limits.from_settings(get_settings())
        _active_limits.set(limits)
    return limits


@contextmanager
def use_limits(
    max_morphisms: Optional[int] = None,
    max_candidates: Optional[int] = None,
    max_closure: Optional[int] = None,
) -> Iterator[Limits]:
    """Temporarily override some caps; unspecified caps keep their value."""
    base = current_limits()
    changes = {
        key: value
        for key, value in (
            ("max_morphisms", max_morphisms),
            ("max_candidates", max_candidates),
            ("max_closure", max_closure),
        )
        if value is not None
    }
    limits = replace(base, **changes)
    token = _active_limits.set(limits)
    logger.debug("limits in effect: %s", limits)
    try:
        yield limits
    finally:
        _active_limits.reset(token)


def configure_logging(level: Optional[str] = None) -> None:
    """Configure root logging once for command line use."""
    name = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
