"""Weighted 2-limits in Cat and cartesian-marked lax conical limits.

A limit is never searched for: it is the hom-category of transformations
from the weight into the diagram, with the tautological cylinder that
evaluates each transformation at each element of the weight.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from ..diagrams.algebra import CAT
from ..diagrams.diagram import CatValued2Functor, constant_diagram, precompose
from ..diagrams.transformation import (
    Flavor,
    HomData,
    Marking,
    Modification,
    Transformation,
    hom_data,
    structure_ends,
)
from ..elements.construction import ElementsResult, elements_op
from ..errors import ComparisonFailure, ShapeMismatch
from ..kernel.category import FiniteCategory, Functor, NaturalTransformation, identity_functor, point
from ..kernel.enumeration import functor_category
from ..kernel.twocategory import terminal_category
from ..kernel.validation import ValidationReport, iso_of_categories

logger = logging.getLogger(__name__)


def power_diagram(l: FiniteCategory, f: CatValued2Functor) -> CatValued2Functor:
    """x -> [l, F(x)], acting by postcomposition."""
    base = f.base
    on_obj = {x: functor_category(l, f.obj(x)).category for x in base.objects}
    on_1 = {}
    for u, (x, y) in base.one_cells.items():
        source, target = functor_category(l, f.obj(x)), functor_category(l, f.obj(y))
        fu = f.one(u)
        on_1[u] = Functor(
            source.category,
            target.category,
            {tag: fu.after(g).tag for tag, g in source.functors.items()},
            {tag: target.transformation_tag(t.whisker_left(fu)) for tag, t in source.transformations.items()},
        )
    on_2 = {}
    for delta, (u, v) in base.two_cells.items():
        source = functor_category(l, f.obj(base.src1(u)))
        target = functor_category(l, f.obj(base.tgt1(u)))
        fd = f.two(delta)
        on_2[delta] = NaturalTransformation(
            on_1[u],
            on_1[v],
            {tag: target.transformation_tag(fd.whisker_right(g)) for tag, g in source.functors.items()},
        )
    return CatValued2Functor(base, on_obj, on_1, on_2, name=f"[{l.name or 'L'},{f.name or 'F'}]")


def tautological(
    data: HomData, w: CatValued2Functor, f: CatValued2Functor, flavor: Flavor, marking: Optional[Marking] = None
) -> Transformation:
    """W => [L, F(-)] evaluating every transformation of L at every element of W."""
    l = data.category
    base = f.base
    power = power_diagram(l, f)

    def evaluation(b: str, x: str) -> Functor:
        return Functor(
            l,
            f.obj(b),
            {tag: t.components[b].obj(x) for tag, t in data.transformations.items()},
            {tag: m.components[b].components[x] for tag, m in data.modifications.items()},
        )

    components = {}
    for b in base.objects:
        wb, fc = w.obj(b), functor_category(l, f.obj(b))
        on_mor = {}
        for xi, (x, y) in wb.morphisms.items():
            moving = NaturalTransformation(
                evaluation(b, x),
                evaluation(b, y),
                {tag: t.components[b].mor(xi) for tag, t in data.transformations.items()},
            )
            on_mor[xi] = fc.transformation_tag(moving)
        components[b] = Functor(wb, fc.category, {x: evaluation(b, x).tag for x in wb.objects}, on_mor)

    structure = {}
    for u, (b, c) in base.one_cells.items():
        top, bottom = structure_ends(CAT, w, power, flavor, u, components[b], components[c])
        fc = functor_category(l, f.obj(c))
        cells = {}
        for x in w.obj(b).objects:
            cell = NaturalTransformation(
                fc.functors[top.obj(x)],
                fc.functors[bottom.obj(x)],
                {tag: t.structure[u].components[x] for tag, t in data.transformations.items()},
            )
            cells[x] = fc.transformation_tag(cell)
        structure[u] = NaturalTransformation(top, bottom, cells)
    return Transformation(flavor, w, power, components, structure, marking, name="universal")


@dataclass(frozen=True)
class LimitResult:
    """A limit with its defining hom data; the universal cylinder is built on first use."""

    data: HomData = field(compare=False)
    weight: CatValued2Functor
    diagram: CatValued2Functor
    flavor: Flavor
    marking: Optional[Marking] = None
    comparison: Optional[Functor] = None
    report: ValidationReport = field(default_factory=lambda: ValidationReport.of([]), compare=False)

    def __hash__(self) -> int:
        return hash((self.limit, self.flavor))

    @property
    def limit(self) -> FiniteCategory:
        return self.data.category

    @cached_property
    def universal(self) -> Transformation:
        return tautological(self.data, self.weight, self.diagram, self.flavor, self.marking)


def weighted_limit(w: CatValued2Functor, f: CatValued2Functor) -> LimitResult:
    """{W, F}: strict cylinders W => F and their modifications."""
    if w.base != f.base:
        raise ShapeMismatch("weight and diagram live over different bases")
    data = hom_data(w, f, Flavor.STRICT)
    logger.debug("weighted limit %r", data.category)
    return LimitResult(data, w, f, Flavor.STRICT)


def marked_lax_conical_limit(m: Marking, f: CatValued2Functor) -> LimitResult:
    """Marked-lax cones from the terminal weight, with the given marking."""
    if m.carrier != f.base:
        raise ShapeMismatch("marking carrier differs from the diagram's base")
    one = constant_diagram(f.base, terminal_category())
    data = hom_data(one, f, Flavor.MARKED_LAX, m)
    return LimitResult(data, one, f, Flavor.MARKED_LAX, m)


def cone_of(
    phi: Transformation, elements: ElementsResult, cone_source: CatValued2Functor, cone_target: CatValued2Functor
) -> Transformation:
    """The marked-lax cone over the elements of W read off a lax-oriented cylinder W => F."""
    one = terminal_category()
    f = phi.tgt
    components = {e: point(f.obj(b), phi.components[b].obj(x), one) for e, (b, x) in elements.objects.items()}
    structure = {}
    for m, (u, x, alpha) in elements.one_cells.items():
        e, e2 = elements.total.one_cells[m]
        c = elements.base.tgt1(u)
        morphism = f.obj(c).compose(phi.components[c].mor(alpha), phi.structure[u].components[x])
        structure[m] = NaturalTransformation(
            f.one(u).after(components[e]),
            components[e2].after(identity_functor(one)),
            {"*": morphism},
        )
    return Transformation(Flavor.MARKED_LAX, cone_source, cone_target, components, structure, elements.marking)


def _counts(left: FiniteCategory, right: FiniteCategory) -> dict:
    return {
        "left-objects": len(left.objects),
        "left-morphisms": len(left.morphisms),
        "right-objects": len(right.objects),
        "right-morphisms": len(right.morphisms),
    }


def _missing(kind: str, tag: str, left: FiniteCategory, right: FiniteCategory) -> ComparisonFailure:
    return ComparisonFailure(f"comparison sends a {kind} outside the target", [tag], _counts(left, right))


def certify_comparison(functor: Functor) -> ValidationReport:
    """iso_of_categories, raising ComparisonFailure with the first witness on failure."""
    report = iso_of_categories(functor)
    if not report.passed:
        first = report.violations[0]
        counts = _counts(functor.src, functor.tgt)
        raise ComparisonFailure(f"comparison is not an isomorphism ({first.law})", first.witness, counts)
    return report


def conicalization_check(w: CatValued2Functor, f: CatValued2Functor) -> LimitResult:
    """Compare {W, F} with the marked-lax conical limit of F . P over the elements of W."""
    left = weighted_limit(w, f)
    elements = elements_op(w)
    reindexed = precompose(f, elements.projection)
    right = marked_lax_conical_limit(elements.marking, reindexed)

    on_obj = {}
    for tag, phi in left.data.transformations.items():
        cone = cone_of(phi, elements, right.weight, reindexed)
        if cone.tag not in right.data.transformations:
            raise _missing("cylinder", tag, left.limit, right.limit)
        on_obj[tag] = cone.tag
    on_mor = {}
    for tag, gamma in left.data.modifications.items():
        source = right.data.transformations[on_obj[gamma.src.tag]]
        target = right.data.transformations[on_obj[gamma.tgt.tag]]
        components = {
            e: NaturalTransformation(source.components[e], target.components[e], {"*": gamma.components[b].components[x]})
            for e, (b, x) in elements.objects.items()
        }
        image = Modification(source, target, components).tag
        if image not in right.data.modifications:
            raise _missing("modification", tag, left.limit, right.limit)
        on_mor[tag] = image

    comparison = Functor(left.limit, right.limit, on_obj, on_mor)
    report = certify_comparison(comparison)
    logger.info("conicalization comparison is an isomorphism on %d cylinders", len(on_obj))
    return LimitResult(left.data, w, f, Flavor.STRICT, comparison=comparison, report=report)
