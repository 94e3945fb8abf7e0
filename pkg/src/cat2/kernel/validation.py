"""Law checks for kernel entities.

Checks never raise on a broken law; they return a ValidationReport whose
violations name the law and a minimal witness. Undeclared identifiers are
a different kind of problem and raise DanglingReference.
"""

import logging
from functools import singledispatch
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..errors import DanglingReference, ShapeMismatch
from .category import FiniteCategory, Functor, NaturalTransformation
from .twocategory import Finite2Category, TwoFunctor

logger = logging.getLogger(__name__)


class Violation(BaseModel):
    law: str
    witness: List[str] = Field(default_factory=list)


class ValidationReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    passed: bool = Field(alias="pass")
    violations: List[Violation] = Field(default_factory=list)
    counts: Dict[str, int] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)

    @classmethod
    def of(
        cls,
        violations: Iterable[Violation],
        counts: Optional[Dict[str, int]] = None,
        notes: Sequence[str] = (),
    ) -> "ValidationReport":
        unique = {(v.law, tuple(v.witness)): v for v in violations}
        ordered = [unique[key] for key in sorted(unique)]
        return cls(passed=not ordered, violations=ordered, counts=dict(counts or {}), notes=list(notes))

    def merge(self, other: "ValidationReport") -> "ValidationReport":
        counts = {**self.counts, **other.counts}
        return ValidationReport.of(self.violations + other.violations, counts, self.notes + other.notes)

    def to_json(self) -> dict:
        return self.model_dump(by_alias=True)


def violation(law: str, *witness: str) -> Violation:
    return Violation(law=law, witness=[str(w) for w in witness])


@singledispatch
def validate(entity) -> ValidationReport:
    raise ShapeMismatch(f"cannot validate {type(entity).__name__}")


def _require(name: str, known, where: str) -> None:
    if name not in known:
        raise DanglingReference(name, where)


def category_violations(c: FiniteCategory) -> List[Violation]:
    where = c.name or "category"
    for m, (a, b) in c.morphisms.items():
        _require(a, c.objects, where)
        _require(b, c.objects, where)
    for x, i in c.identities.items():
        _require(x, c.objects, where)
        _require(i, c.morphisms, where)
    for (g, f), gf in c.composition.items():
        for m in (g, f, gf):
            _require(m, c.morphisms, where)

    found = []
    for x in c.objects:
        if x not in c.identities:
            found.append(violation("identity-missing", x))
        elif c.morphisms[c.identities[x]] != (x, x):
            found.append(violation("identity-typing", x, c.identities[x]))
    for (g, f), gf in c.composition.items():
        if c.src(g) != c.tgt(f):
            found.append(violation("composition-domain", g, f))
        elif c.morphisms[gf] != (c.src(f), c.tgt(g)):
            found.append(violation("composition-typing", g, f))
    for g in c.morphisms:
        for f in c.into(c.src(g)):
            if (g, f) not in c.composition:
                found.append(violation("composition-totality", g, f))
    for f, (a, b) in c.morphisms.items():
        if b in c.identities and c.composition.get((c.identities[b], f), f) != f:
            found.append(violation("unit-left", f))
        if a in c.identities and c.composition.get((f, c.identities[a]), f) != f:
            found.append(violation("unit-right", f))
    for (g, f), gf in c.composition.items():
        for h in c.out_of(c.tgt(g)):
            hg = c.composition.get((h, g))
            left = c.composition.get((h, gf))
            right = c.composition.get((hg, f)) if hg is not None else None
            if left is not None and right is not None and left != right:
                found.append(violation("associativity", h, g, f))
    return found


@validate.register
def _(c: FiniteCategory) -> ValidationReport:
    return ValidationReport.of(category_violations(c), {"objects": len(c.objects), "morphisms": len(c.morphisms)})


def functor_violations(f: Functor) -> List[Violation]:
    c, d = f.src, f.tgt
    found = []
    for x in c.objects:
        if x not in f.on_obj:
            found.append(violation("functor-totality", x))
        else:
            _require(f.on_obj[x], d.objects, "functor")
    for m in c.morphisms:
        if m not in f.on_mor:
            found.append(violation("functor-totality", m))
        else:
            _require(f.on_mor[m], d.morphisms, "functor")
    if found:
        return found
    for m, (a, b) in c.morphisms.items():
        if d.morphisms[f.on_mor[m]] != (f.on_obj[a], f.on_obj[b]):
            found.append(violation("functor-typing", m))
    for x, i in c.identities.items():
        if f.on_mor[i] != d.identities[f.on_obj[x]]:
            found.append(violation("functor-identity", x))
    for (g, h), gh in c.composition.items():
        if d.composition.get((f.on_mor[g], f.on_mor[h])) != f.on_mor[gh]:
            found.append(violation("functor-composition", g, h))
    return found


@validate.register
def _(f: Functor) -> ValidationReport:
    return ValidationReport.of(functor_violations(f))


def naturality_violations(t: NaturalTransformation) -> List[Violation]:
    f, g = t.src, t.tgt
    if f.src != g.src or f.tgt != g.tgt:
        return [violation("parallel", f.tag, g.tag)]
    c, d = f.src, f.tgt
    found = []
    for x in c.objects:
        if x not in t.components:
            found.append(violation("component-typing", x))
            continue
        _require(t.components[x], d.morphisms, "natural transformation")
        if d.morphisms[t.components[x]] != (f.on_obj[x], g.on_obj[x]):
            found.append(violation("component-typing", x))
    if found:
        return found
    for m, (a, b) in c.morphisms.items():
        if d.compose(g.on_mor[m], t.components[a]) != d.compose(t.components[b], f.on_mor[m]):
            found.append(violation("naturality", m))
    return found


@validate.register
def _(t: NaturalTransformation) -> ValidationReport:
    return ValidationReport.of(naturality_violations(t))


def two_category_violations(k: Finite2Category) -> List[Violation]:
    found = []
    owner1: Dict[str, Tuple[str, str]] = {}
    owner2: Dict[str, Tuple[str, str]] = {}
    for ab, c in sorted(k.hom.items()):
        found.extend(category_violations(c))
        for u in c.objects:
            if u in owner1:
                found.append(violation("cell-uniqueness", u))
            owner1[u] = ab
        for gamma in c.morphisms:
            if gamma in owner2:
                found.append(violation("cell-uniqueness", gamma))
            owner2[gamma] = ab
    if found:
        return found
    for x in k.objects:
        if x not in k.units:
            found.append(violation("unit-missing", x))
            continue
        _require(k.units[x], owner1, "units")
        if owner1[k.units[x]] != (x, x):
            found.append(violation("unit-typing", x))
    for (g, f), gf in k.comp1.items():
        for u in (g, f, gf):
            _require(u, owner1, "horizontal composition")
    for (c, d), cd in k.comp2.items():
        for gamma in (c, d, cd):
            _require(gamma, owner2, "horizontal composition")
    if found:
        return found

    one = k.one_cells
    for g, (b, c) in one.items():
        for f, (a, b2) in one.items():
            if b2 != b:
                continue
            gf = k.comp1.get((g, f))
            if gf is None:
                found.append(violation("hcomp-totality", g, f))
            elif one[gf] != (a, c):
                found.append(violation("hcomp-typing", g, f))
    for (g, f), gf in k.comp1.items():
        if one[g][0] != one[f][1]:
            found.append(violation("hcomp-domain", g, f))
    for f, (a, b) in one.items():
        if k.comp1.get((k.units[b], f), f) != f:
            found.append(violation("hcomp-unit-left", f))
        if k.comp1.get((f, k.units[a]), f) != f:
            found.append(violation("hcomp-unit-right", f))
    for (g, f), gf in k.comp1.items():
        for h, (b, _) in one.items():
            if b != one[g][1]:
                continue
            hg = k.comp1.get((h, g))
            left = k.comp1.get((h, gf))
            right = k.comp1.get((hg, f)) if hg else None
            if left and right and left != right:
                found.append(violation("hcomp-associativity", h, g, f))

    two = k.two_cells
    for c, (g, g2) in two.items():
        for d, (f, f2) in two.items():
            if one[g][0] != one[f][1]:
                continue
            cd = k.comp2.get((c, d))
            if cd is None:
                found.append(violation("hcomp2-totality", c, d))
            elif two[cd] != (k.comp1.get((g, f)), k.comp1.get((g2, f2))):
                found.append(violation("hcomp2-typing", c, d))
    for (g, f), gf in k.comp1.items():
        if k.comp2.get((k.identity2(g), k.identity2(f))) != k.identity2(gf):
            found.append(violation("hcomp2-identity", g, f))
    for d, (f, _) in two.items():
        a, b = one[f]
        if k.comp2.get((k.identity2(k.units[b]), d), d) != d:
            found.append(violation("hcomp2-unit-left", d))
        if k.comp2.get((d, k.identity2(k.units[a])), d) != d:
            found.append(violation("hcomp2-unit-right", d))
    for (c, d), cd in k.comp2.items():
        for e, (h, _) in two.items():
            if one[h][0] != one[two[c][0]][1]:
                continue
            ec = k.comp2.get((e, c))
            left = k.comp2.get((e, cd))
            right = k.comp2.get((ec, d)) if ec else None
            if left and right and left != right:
                found.append(violation("hcomp2-associativity", e, c, d))
    if not found:
        found.extend(_interchange_violations(k))
    return found


def _interchange_violations(k: Finite2Category) -> List[Violation]:
    """(c2 . c1) * (d2 . d1) = (c2 * d2) . (c1 * d1) for every composable quadruple."""
    found = []
    for (b, c), left in k.hom.items():
        for (a, b2), right in k.hom.items():
            if b2 != b:
                continue
            for (c2, c1), c21 in left.composition.items():
                for (d2, d1), d21 in right.composition.items():
                    if k.comp2[(c21, d21)] != k.vcompose(k.comp2[(c2, d2)], k.comp2[(c1, d1)]):
                        found.append(violation("interchange", c2, c1, d2, d1))
    return found


@validate.register
def _(k: Finite2Category) -> ValidationReport:
    counts = {"objects": len(k.objects), "1-cells": len(k.one_cells), "2-cells": len(k.two_cells)}
    return ValidationReport.of(two_category_violations(k), counts)


def two_functor_violations(h: TwoFunctor) -> List[Violation]:
    src, tgt = h.src, h.tgt
    found = []
    for x in src.objects:
        if x not in h.on_obj:
            found.append(violation("two-functor-totality", x))
        else:
            _require(h.on_obj[x], tgt.objects, "2-functor")
    for u in src.one_cells:
        if u not in h.on_1:
            found.append(violation("two-functor-totality", u))
        else:
            _require(h.on_1[u], tgt.one_cells, "2-functor")
    for gamma in src.two_cells:
        if gamma not in h.on_2:
            found.append(violation("two-functor-totality", gamma))
        else:
            _require(h.on_2[gamma], tgt.two_cells, "2-functor")
    if found:
        return found
    for u, (a, b) in src.one_cells.items():
        if tgt.one_cells[h.on_1[u]] != (h.on_obj[a], h.on_obj[b]):
            found.append(violation("two-functor-typing", u))
    for gamma, (u, v) in src.two_cells.items():
        if tgt.two_cells[h.on_2[gamma]] != (h.on_1[u], h.on_1[v]):
            found.append(violation("two-functor-typing", gamma))
    if found:
        return found
    for x, u in src.units.items():
        if h.on_1[u] != tgt.units[h.on_obj[x]]:
            found.append(violation("two-functor-unit", x))
    for u in src.one_cells:
        if h.on_2[src.identity2(u)] != tgt.identity2(h.on_1[u]):
            found.append(violation("two-functor-identity2", u))
    for (g, f), gf in src.comp1.items():
        if tgt.comp1.get((h.on_1[g], h.on_1[f])) != h.on_1[gf]:
            found.append(violation("two-functor-composition1", g, f))
    for (c, d), cd in src.comp2.items():
        if tgt.comp2.get((h.on_2[c], h.on_2[d])) != h.on_2[cd]:
            found.append(violation("two-functor-composition2", c, d))
    for hom in src.hom.values():
        for (c, d), cd in hom.composition.items():
            if tgt.vcompose(h.on_2[c], h.on_2[d]) != h.on_2[cd]:
                found.append(violation("two-functor-vertical", c, d))
    return found


@validate.register
def _(h: TwoFunctor) -> ValidationReport:
    return ValidationReport.of(two_functor_violations(h))


def _bijection_violations(mapping: Dict[str, str], codomain: Sequence[str]) -> List[Violation]:
    found = []
    first: Dict[str, str] = {}
    for x in sorted(mapping):
        y = mapping[x]
        if y in first:
            found.append(violation("collision", first[y], x, y))
        else:
            first[y] = x
    for y in sorted(codomain):
        if y not in first:
            found.append(violation("non-hit", y))
    return found


def iso_of_categories(f: Functor) -> ValidationReport:
    found = _bijection_violations(f.on_obj, f.tgt.objects) + _bijection_violations(f.on_mor, list(f.tgt.morphisms))
    return ValidationReport.of(found)


def iso_of_2categories(h: TwoFunctor) -> ValidationReport:
    found = (
        _bijection_violations(h.on_obj, h.tgt.objects)
        + _bijection_violations(h.on_1, list(h.tgt.one_cells))
        + _bijection_violations(h.on_2, list(h.tgt.two_cells))
    )
    return ValidationReport.of(found)

