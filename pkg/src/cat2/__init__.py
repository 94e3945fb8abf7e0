"""Finite 2-categories, Cat-valued 2-functors, their elements, limits, Kan extensions and commas."""

from .config import Settings, configure_logging, get_settings, use_limits
from .errors import Cat2Error

__version__ = "0.1.0"

__all__ = ["Cat2Error", "Settings", "configure_logging", "get_settings", "use_limits"]
