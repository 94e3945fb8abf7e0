"""The elements construction as a lax comma, and its fully faithful action on transformations."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Tuple

from ..diagrams.diagram import CatValued2Functor
from ..diagrams.pasting import precompose_transformation, vertical
from ..diagrams.transformation import (
    Flavor,
    Transformation,
    category_of,
    enumerate_transformations,
    hom_data,
    identity_transformation_of,
)
from ..elements.construction import elements_op
from ..elements.functoriality import canonical_lambda, elements_2map, elements_map
from ..elements.opfibration import SplitDiscrete2Opfib, is_opcartesian
from ..errors import ComparisonFailure, FlavorMismatch, ShapeMismatch
from ..kernel import tags
from ..kernel.category import FiniteCategory, Functor
from ..kernel.enumeration import enumerate_two_functors
from ..kernel.twocategory import TwoFunctor
from ..kernel.validation import (
    ValidationReport,
    Violation,
    iso_of_2categories,
    iso_of_categories,
    validate,
    violation,
)
from .lax_comma import lax_comma_point

logger = logging.getLogger(__name__)


def elements_lax_comma_iso(f: CatValued2Functor) -> ValidationReport:
    """(B, X) -> (*, B, X) is an isomorphism over the base carrying the canonical lambda to the comma's."""
    elements = elements_op(f)
    comma = lax_comma_point(f)
    point = comma.d0.tgt
    (star,) = point.objects
    unit = point.units[star]
    unit2 = point.identity2(unit)
    total = elements.total

    def target_of(b: str, alpha: str) -> str:
        return f.obj(b).tgt(alpha)

    on_obj = {e: tags.join(star, b, x) for e, (b, x) in elements.objects.items()}
    on_1 = {}
    for m, (u, x, alpha) in elements.one_cells.items():
        on_1[m] = tags.join(unit, u, x, alpha, target_of(f.base.tgt1(u), alpha))
    on_2 = {}
    for theta, (delta, x, beta) in elements.two_cells.items():
        alpha = elements.decode_one(total.src2(theta))[2]
        on_2[theta] = tags.join(unit2, delta, x, alpha, beta, target_of(f.base.tgt1(f.base.tgt2(delta)), beta))

    counts = {"objects": len(total.objects), "1-cells": len(total.one_cells), "2-cells": len(total.two_cells)}
    for kind, mapping, known in (
        ("object", on_obj, comma.total.objects),
        ("1-cell", on_1, comma.total.one_cells),
        ("2-cell", on_2, comma.total.two_cells),
    ):
        for source, image in sorted(mapping.items()):
            if image not in known:
                message = f"{kind} {source} has no counterpart in the lax comma"
                raise ComparisonFailure(message, [source, image], counts)

    iso = TwoFunctor(total, comma.total, on_obj, on_1, on_2)
    report = validate(iso).merge(iso_of_2categories(iso))
    found: List[Violation] = []
    if comma.d1.after(iso) != elements.projection:
        found.append(violation("projection", "d1"))
    if any(x != star for x in comma.d0.after(iso).on_obj.values()):
        found.append(violation("projection", "d0"))
    if report.passed and not found:
        image = precompose_transformation(comma.lam, iso)
        expected = canonical_lambda(f, elements)
        if image.components != expected.components or image.structure != expected.structure:
            found.append(violation("lambda", comma.lam.name or "lambda"))
    report = report.merge(ValidationReport.of(found, counts))
    logger.info("elements vs lax comma for %r: %s", f, "pass" if report.passed else "fail")
    return report


def _over_base(h: TwoFunctor, p: SplitDiscrete2Opfib, q: SplitDiscrete2Opfib) -> List[Violation]:
    if p.contravariant or q.contravariant:
        raise ShapeMismatch("cartesian checks take covariant cleavages")
    if h.src != p.k.src or h.tgt != q.k.src:
        raise ShapeMismatch("h must run between the two totals")
    if q.k.after(h) != p.k:
        return [violation("over-base", h.tag)]
    return []


def cartesian_functor_check(h: TwoFunctor, p: SplitDiscrete2Opfib, q: SplitDiscrete2Opfib) -> ValidationReport:
    """h sends opcartesian 1-cells of p to opcartesian 1-cells of q."""
    found = _over_base(h, p, q)
    source, target = p.k.underlying(), q.k.underlying()
    for m in p.k.src.one_cells:
        if is_opcartesian(source, m) and not is_opcartesian(target, h.one(m)):
            found.append(violation("cartesian", m, h.one(m)))
    return ValidationReport.of(found)


def cleavage_preserving_check(h: TwoFunctor, p: SplitDiscrete2Opfib, q: SplitDiscrete2Opfib) -> ValidationReport:
    """h sends chosen lifts to chosen lifts."""
    found = _over_base(h, p, q)
    for (e, u), m in sorted(p.cleavage.items()):
        if h.one(m) != q.lift(h.obj(e), u):
            found.append(violation("cleavage-preserving", e, u))
    return ValidationReport.of(found)


@dataclass(frozen=True)
class SliceArrow:
    """A strict transformation between 2-functors over the base whose components lie over units."""

    t: Transformation

    @property
    def src(self) -> TwoFunctor:
        return self.t.src

    @property
    def tgt(self) -> TwoFunctor:
        return self.t.tgt

    @cached_property
    def tag(self) -> str:
        return tags.arrow(self.t.tag, self.t.src.tag, self.t.tgt.tag)

    def after(self, other: "SliceArrow") -> "SliceArrow":
        return SliceArrow(vertical(self.t, other.t))


def _lies_over_units(t: Transformation, q: SplitDiscrete2Opfib) -> bool:
    base = q.k.tgt
    return all(base.is_unit(q.k.one(c)) for c in t.components.values())


def slice_hom(
    p: SplitDiscrete2Opfib, q: SplitDiscrete2Opfib, flavor: Flavor
) -> Tuple[FiniteCategory, Dict[str, TwoFunctor], Dict[str, SliceArrow]]:
    """The hom-category between p and q in the slice over the base, for the given flavor.

    Lax takes every 2-functor over the base, pseudo the cartesian ones and
    strict the cleavage-preserving ones.
    """
    functors: Dict[str, TwoFunctor] = {}
    for h in enumerate_two_functors(p.k.src, q.k.src, over=(p.k, q.k)):
        if flavor is Flavor.PSEUDO and not cartesian_functor_check(h, p, q).passed:
            continue
        if flavor is Flavor.STRICT and not cleavage_preserving_check(h, p, q).passed:
            continue
        functors[h.tag] = h
    arrows: Dict[str, SliceArrow] = {}
    for h in functors.values():
        for h2 in functors.values():
            for t in enumerate_transformations(h, h2, Flavor.STRICT):
                if _lies_over_units(t, q):
                    arrow = SliceArrow(t)
                    arrows[arrow.tag] = arrow
    category = category_of(
        functors, arrows, lambda h: SliceArrow(identity_transformation_of(h)), name=f"slice_{flavor.value}"
    )
    return category, functors, arrows


def _counts(left: FiniteCategory, right: FiniteCategory) -> Dict[str, int]:
    return {
        "left-objects": len(left.objects),
        "left-morphisms": len(left.morphisms),
        "right-objects": len(right.objects),
        "right-morphisms": len(right.morphisms),
    }


def equivalence_check(f: CatValued2Functor, g: CatValued2Functor, flavor: Flavor) -> ValidationReport:
    """elements_map and elements_2map give an isomorphism of hom-categories for the flavor."""
    flavor = Flavor(flavor)
    if flavor not in (Flavor.LAX, Flavor.PSEUDO, Flavor.STRICT):
        raise FlavorMismatch(f"equivalence_check takes lax, pseudo or strict, not {flavor.value}")
    if f.base != g.base:
        raise ShapeMismatch("f and g live over different bases")
    left = hom_data(f, g, flavor)
    p, q = elements_op(f).opfib, elements_op(g).opfib
    right, functors, arrows = slice_hom(p, q, flavor)
    counts = _counts(left.category, right)

    on_obj = {}
    for tag, phi in left.transformations.items():
        image = elements_map(phi).tag
        if image not in functors:
            raise ComparisonFailure("a transformation lands outside the slice hom-category", [tag], counts)
        on_obj[tag] = image
    on_mor = {}
    for tag, gamma in left.modifications.items():
        image = SliceArrow(elements_2map(gamma)).tag
        if image not in arrows:
            raise ComparisonFailure("a modification lands outside the slice hom-category", [tag], counts)
        on_mor[tag] = image

    comparison = Functor(left.category, right, on_obj, on_mor)
    report = validate(comparison).merge(iso_of_categories(comparison))
    report = ValidationReport.of(report.violations, counts)
    logger.info("%s equivalence check: %s", flavor.value, "pass" if report.passed else "fail")
    return report
