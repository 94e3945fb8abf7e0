"""Backtracking search with incremental constraint checks.

Every enumeration in cat2 (functors, natural transformations, 2-functors,
transformations of each flavor, modifications, cleavages) is an instance of
the solver below: an ordered list of slots, a candidate generator per slot,
and constraints that are checked as soon as the last slot they depend on
has been filled. Candidates are produced in sorted order, so solutions come
out in lexicographic order of their slot values.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Hashable, Iterator, List, Sequence, Tuple

from ..config import current_limits
from ..errors import SizeExceeded

logger = logging.getLogger(__name__)

Assignment = Dict[Hashable, Any]


def guard(what: str, size: int) -> None:
    """Raise SizeExceeded when a materialized structure is over the morphism cap."""
    cap = current_limits().max_morphisms
    if size > cap:
        raise SizeExceeded(what, size, cap)


class Budget:
    """Counts raw candidates visited by one search."""

    def __init__(self, what: str):
        self.what = what
        self.cap = current_limits().max_candidates
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.cap:
            raise SizeExceeded(self.what, self.used, self.cap)


@dataclass(frozen=True)
class Constraint:
    depends: Tuple[Hashable, ...]
    holds: Callable[[Assignment], bool]


def solve(
    slots: Sequence[Hashable],
    candidates: Callable[[Hashable, Assignment], Sequence[Any]],
    constraints: Sequence[Constraint],
    what: str,
) -> Iterator[Assignment]:
    """Yield every complete assignment satisfying all constraints."""
    budget = Budget(what)
    position = {key: i for i, key in enumerate(slots)}
    checks: List[List[Constraint]] = [[] for _ in slots]
    constant: List[Constraint] = []
    for constraint in constraints:
        if constraint.depends:
            checks[max(position[key] for key in constraint.depends)].append(constraint)
        else:
            constant.append(constraint)

    if not all(c.holds({}) for c in constant):
        return
    if not slots:
        yield {}
        return

    assignment: Assignment = {}
    pending: List[Iterator[Any]] = [iter(())] * len(slots)
    pending[0] = iter(candidates(slots[0], assignment))
    level = 0
    found = 0
    while level >= 0:
        key = slots[level]
        advanced = False
        for value in pending[level]:
            budget.spend()
            assignment[key] = value
            if all(c.holds(assignment) for c in checks[level]):
                advanced = True
                break
        if not advanced:
            assignment.pop(key, None)
            level -= 1
            continue
        if level == len(slots) - 1:
            found += 1
            yield dict(assignment)
            continue
        level += 1
        pending[level] = iter(candidates(slots[level], assignment))
    logger.debug("%s: %d solutions after %d candidates", what, found, budget.used)
