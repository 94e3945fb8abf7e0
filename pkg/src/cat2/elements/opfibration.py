"""Opfibrations, discrete fibrations and split discrete 2-opfibrations.

Every property is decided by brute force over the finite data: a lift
exists when some cell over the base cell has the right source (or target)
and satisfies the universal property by direct search.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..errors import NotSplit, ShapeMismatch
from ..kernel.category import Functor
from ..kernel.search import Constraint, solve
from ..kernel.twocategory import Duality, TwoFunctor, dualize
from ..kernel.validation import ValidationReport, Violation, violation

logger = logging.getLogger(__name__)

CleavageKey = Tuple[str, str]


@dataclass(frozen=True)
class SplitDiscrete2Opfib:
    """A 2-functor with a chosen opcartesian lift for every (object, base 1-cell out of its image).

    With contravariant=True the lifts are cartesian, keyed by their target,
    and the data is an opfibration between the coop duals.
    """

    k: TwoFunctor
    cleavage: Dict[CleavageKey, str]
    contravariant: bool = field(default=False)

    def __hash__(self) -> int:
        return hash((self.k, tuple(sorted(self.cleavage.items())), self.contravariant))

    def lift(self, e: str, u: str) -> str:
        return self.cleavage[(e, u)]

    def as_opfibration(self) -> "SplitDiscrete2Opfib":
        """The same data read between the coop duals when contravariant."""
        if not self.contravariant:
            return self
        k = self.k
        dual = TwoFunctor(
            dualize(k.src, Duality.COOP),
            dualize(k.tgt, Duality.COOP),
            dict(k.on_obj),
            dict(k.on_1),
            dict(k.on_2),
        )
        return SplitDiscrete2Opfib(dual, dict(self.cleavage))


def is_opcartesian(u: Functor, m: str) -> bool:
    c, d = u.src, u.tgt
    e, e1 = c.morphisms[m]
    f = u.mor(m)
    for m2 in c.out_of(e):
        e2 = c.tgt(m2)
        for g in d.hom(d.tgt(f), u.obj(e2)):
            if d.compose(g, f) != u.mor(m2):
                continue
            fillers = [h for h in c.hom(e1, e2) if u.mor(h) == g and c.compose(h, m) == m2]
            if len(fillers) != 1:
                return False
    return True


def opcartesian_lifts(u: Functor, e: str, f: str) -> List[str]:
    c = u.src
    return sorted(m for m in c.out_of(e) if u.mor(m) == f and is_opcartesian(u, m))


def is_opfibration(u: Functor) -> ValidationReport:
    c, d = u.src, u.tgt
    found = []
    for e in c.objects:
        for f in d.out_of(u.obj(e)):
            if not opcartesian_lifts(u, e, f):
                found.append(violation("no-opcartesian-lift", e, f))
    return ValidationReport.of(found)


def discrete_fibration_violations(u: Functor) -> List[Violation]:
    c, d = u.src, u.tgt
    found = []
    for e in c.objects:
        for f in d.into(u.obj(e)):
            lifts = [m for m in c.into(e) if u.mor(m) == f]
            if not lifts:
                found.append(violation("no-lift", e, f))
            elif len(lifts) > 1:
                found.append(violation("ambiguous-lift", e, f))
    return found


def is_discrete_fibration(u: Functor) -> ValidationReport:
    return ValidationReport.of(discrete_fibration_violations(u))


def is_discrete_2opfibration(k: TwoFunctor) -> ValidationReport:
    """Underlying opfibration plus discrete fibrations on every hom."""
    found = list(is_opfibration(k.underlying()).violations)
    for a in k.src.objects:
        for b in k.src.objects:
            for v in discrete_fibration_violations(k.local(a, b)):
                found.append(violation(f"local-{v.law}", a, b, *v.witness))
    return ValidationReport.of(found)


def extract_cleavage(k: TwoFunctor) -> SplitDiscrete2Opfib:
    """The least split choice of opcartesian lifts."""
    report = is_discrete_2opfibration(k)
    if not report.passed:
        raise ShapeMismatch(f"not a discrete 2-opfibration: {report.violations[0].law} {report.violations[0].witness}")
    total, base = k.src, k.tgt
    under = k.underlying()
    keys = [(e, v) for e in total.objects for v in base.underlying().out_of(k.obj(e))]
    over = {x: [e for e in total.objects if k.obj(e) == x] for x in base.objects}

    def candidates(key, s):
        e, v = key
        if base.is_unit(v):
            return [total.units[e]]
        return opcartesian_lifts(under, e, v)

    constraints = []
    for e, v in keys:
        for w in base.underlying().out_of(base.tgt1(v)):
            wv = base.compose1(w, v)
            depends = {(e, v), (e, wv)} | {(x, w) for x in over[base.tgt1(v)]}
            constraints.append(
                Constraint(
                    tuple(depends),
                    lambda s, e=e, v=v, w=w, wv=wv: s[(e, wv)]
                    == total.compose1(s[(total.tgt1(s[(e, v)]), w)], s[(e, v)]),
                )
            )
    for solution in solve(keys, candidates, constraints, "cleavages"):
        return SplitDiscrete2Opfib(k, solution)
    raise NotSplit("no choice of opcartesian lifts is closed under composition", [k.tgt.name or "base"])


def certify(p: SplitDiscrete2Opfib) -> ValidationReport:
    """Check the cleavage and the discrete 2-opfibration conditions."""
    q = p.as_opfibration()
    k = q.k
    total, base = k.src, k.tgt
    under = k.underlying()
    found = list(is_discrete_2opfibration(k).violations)
    for e in total.objects:
        for v in base.underlying().out_of(k.obj(e)):
            m = q.cleavage.get((e, v))
            if m is None:
                found.append(violation("cleavage-totality", e, v))
                continue
            if total.src1(m) != e:
                found.append(violation("cleavage-source", e, v))
            elif k.one(m) != v:
                found.append(violation("cleavage-projection", e, v))
            elif not is_opcartesian(under, m):
                found.append(violation("cleavage-opcartesian", e, v))
            if base.is_unit(v) and m != total.units[e]:
                found.append(violation("cleavage-unit", e, v))
    if not found:
        for (e, v), m in sorted(q.cleavage.items()):
            for w in base.underlying().out_of(base.tgt1(v)):
                composite = total.compose1(q.cleavage[(total.tgt1(m), w)], m)
                if q.cleavage[(e, base.compose1(w, v))] != composite:
                    found.append(violation("cleavage-split", e, v, w))
    return ValidationReport.of(found)
