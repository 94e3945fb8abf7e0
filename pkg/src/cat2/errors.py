"""Exceptions raised by cat2.

Law violations are never raised: checks return a ValidationReport. The
exceptions below signal malformed input, exceeded caps, and constructions
that cannot be carried out.
"""

from typing import Dict, Optional, Sequence


class Cat2Error(Exception):
    """Base class for every cat2 error."""


class DanglingReference(Cat2Error):
    """An identifier is used but never declared."""

    def __init__(self, name: str, where: str = ""):
        self.name = name
        self.where = where
        detail = f" in {where}" if where else ""
        super().__init__(f"undeclared identifier '{name}'{detail}")


class SizeExceeded(Cat2Error):
    """A materialized structure or search space went over its cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class FlavorMismatch(Cat2Error):
    """A marking was supplied for an unmarked flavor, or is missing."""


class ShapeMismatch(Cat2Error):
    """Cells or diagrams that should be composable or parallel are not."""


class NotSplit(Cat2Error):
    """No composition-closed choice of opcartesian lifts exists."""

    def __init__(self, message: str, witness: Sequence[str] = ()):
        self.witness = list(witness)
        super().__init__(message)


class ComparisonFailure(Cat2Error):
    """A comparison functor could not be built or is not an isomorphism."""

    def __init__(self, message: str, witness: Sequence[str] = (), counts: Optional[Dict[str, int]] = None):
        self.witness = list(witness)
        self.counts = dict(counts or {})
        super().__init__(message)


class NonUnique(Cat2Error):
    """Two distinct cells satisfy a property that should determine one."""

    def __init__(self, message: str, first: str, second: str):
        self.first = first
        self.second = second
        super().__init__(f"{message}: {first} and {second}")


class NoFactorization(Cat2Error):
    """A datum has no cell factoring it through a universal object."""

    def __init__(self, message: str, datum: str):
        self.datum = datum
        super().__init__(f"{message}: {datum}")


class ParseError(Cat2Error):
    """Input text does not follow the DSL or the JSON document format."""

    def __init__(self, message: str, line: int = 0, column: int = 0, expected: Sequence[str] = ()):
        self.line = line
        self.column = column
        self.expected = sorted(expected)
        where = f" at line {line}, column {column}" if line else ""
        hint = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{where}{hint}")


class ClosureDiverged(Cat2Error):
    """Closing a presentation under composition produced too many arrows."""

    def __init__(self, name: str, cap: int):
        self.name = name
        self.cap = cap
        super().__init__(f"closure of '{name}' exceeded {cap} arrows")


class NoInstance(Cat2Error):
    """A generator found nothing satisfying its constraints."""

    def __init__(self, what: str, seed: int):
        self.what = what
        self.seed = seed
        super().__init__(f"no {what} for seed {seed}")
