"""Marked weighted oplax colimits, certified against probe categories.

Cat is large, so a colimit is never computed. A candidate object with a
cocylinder is checked by comparing, for each probe category U, the
functors out of the candidate with the cocylinders into [F(-), U].
Passing is relative to the probes used; the report says so.
"""

import logging
from typing import Dict, List, Optional, Sequence

from ..diagrams.algebra import CAT
from ..diagrams.diagram import CatValued2Functor
from ..diagrams.pasting import vertical
from ..diagrams.transformation import Flavor, HomData, Marking, Modification, Transformation, hom_data
from ..errors import ShapeMismatch
from ..kernel.category import (
    FiniteCategory,
    Functor,
    NaturalTransformation,
    arrow_category,
    commutative_square,
    discrete,
    walking_iso,
)
from ..kernel.enumeration import functor_category
from ..kernel.twocategory import Duality, dualize
from ..kernel.validation import ValidationReport, Violation, iso_of_categories, violation

logger = logging.getLogger(__name__)

PROBE_RELATIVE = "probe-relative"


def default_probes() -> List[FiniteCategory]:
    """One, Two, the walking isomorphism and the commutative square."""
    return [discrete(["*"], name="One"), arrow_category(), walking_iso(), commutative_square()]


def hom_into(f: CatValued2Functor, u: FiniteCategory) -> CatValued2Functor:
    """x -> [F(x), U] over the op-dual base, acting by precomposition."""
    base = f.base
    on_1 = {}
    for e, (x, y) in base.one_cells.items():
        source, target = functor_category(f.obj(y), u), functor_category(f.obj(x), u)
        fe = f.one(e)
        on_1[e] = Functor(
            source.category,
            target.category,
            {tag: g.after(fe).tag for tag, g in source.functors.items()},
            {tag: target.transformation_tag(t.whisker_right(fe)) for tag, t in source.transformations.items()},
        )
    on_2 = {}
    for delta, (e, e2) in base.two_cells.items():
        x, y = base.one_cells[e]
        source, target = functor_category(f.obj(y), u), functor_category(f.obj(x), u)
        fd = f.two(delta)
        on_2[delta] = NaturalTransformation(
            on_1[e],
            on_1[e2],
            {tag: target.transformation_tag(fd.whisker_left(g)) for tag, g in source.functors.items()},
        )
    return CatValued2Functor(
        dualize(base, Duality.OP),
        {x: functor_category(f.obj(x), u).category for x in base.objects},
        on_1,
        on_2,
        name=f"[{f.name or 'F'}-,{u.name or 'U'}]",
    )


def opposite_marking(m: Marking) -> Marking:
    """The same marked 1-cells on the op-dual carrier."""
    return Marking(dualize(m.carrier, Duality.OP), m.marked)


def cocylinder_data(m: Marking, w: CatValued2Functor, f: CatValued2Functor, u: FiniteCategory) -> HomData:
    if f.base != m.carrier:
        raise ShapeMismatch("diagram does not live over the marking's carrier")
    marking = opposite_marking(m)
    if w.base != marking.carrier:
        raise ShapeMismatch("weight does not live over the op-dual of the carrier")
    return hom_data(w, hom_into(f, u), Flavor.MARKED_OPLAX, marking)


def marked_oplax_cocylinder_category(
    m: Marking, w: CatValued2Functor, f: CatValued2Functor, u: FiniteCategory
) -> FiniteCategory:
    """Marked-oplax cocylinders W => [F(-), U] and their modifications."""
    return cocylinder_data(m, w, f, u).category


def postcompose_with(f: CatValued2Functor, candidate: FiniteCategory, p: Functor) -> Transformation:
    """The strict transformation [F(-), candidate] => [F(-), U] given by P . (-)."""
    source, target = hom_into(f, candidate), hom_into(f, p.tgt)
    components = {}
    for x in f.base.objects:
        before, after = functor_category(f.obj(x), candidate), functor_category(f.obj(x), p.tgt)
        components[x] = Functor(
            before.category,
            after.category,
            {tag: p.after(g).tag for tag, g in before.functors.items()},
            {tag: after.transformation_tag(t.whisker_left(p)) for tag, t in before.transformations.items()},
        )
    # the op-dual base reverses 1-cells: e: x -> y acts from y to x
    structure = {
        e: CAT.identity2(CAT.compose1(target.one(e), components[source.base.src1(e)])) for e in source.base.one_cells
    }
    return Transformation(Flavor.STRICT, source, target, components, structure)


def cocylinder_image(f: CatValued2Functor, candidate: FiniteCategory, mu: Transformation, p: Functor) -> Transformation:
    """The cocylinder P . mu induced by a functor P out of the candidate."""
    return vertical(postcompose_with(f, candidate, p), mu)


def _probe_functor(
    f: CatValued2Functor,
    candidate: FiniteCategory,
    mu: Transformation,
    probe: FiniteCategory,
    target: HomData,
) -> Optional[Functor]:
    """[candidate, U] -> cocylinders, or None if some image falls outside the enumerated cocylinders."""
    maps = functor_category(candidate, probe)
    images: Dict[str, Transformation] = {}
    for tag, p in maps.functors.items():
        image = cocylinder_image(f, candidate, mu, p)
        if image.tag not in target.transformations:
            logger.info("cocylinder image of %s is not in the enumeration", tag)
            return None
        images[tag] = image
    on_mor = {}
    for tag, tau in maps.transformations.items():
        source, goal = images[tau.src.tag], images[tau.tgt.tag]
        components = {}
        for x in f.base.objects:
            after = functor_category(f.obj(x), probe)
            cells = {}
            mu_x = mu.components[x]
            for y in mu_x.src.objects:
                g = functor_category(f.obj(x), candidate).functors[mu_x.obj(y)]
                cells[y] = after.transformation_tag(tau.whisker_right(g))
            components[x] = NaturalTransformation(source.components[x], goal.components[x], cells)
        image = Modification(source, goal, components).tag
        if image not in target.modifications:
            return None
        on_mor[tag] = image
    return Functor(maps.category, target.category, {tag: t.tag for tag, t in images.items()}, on_mor)


def is_marked_oplax_colimit(
    m: Marking,
    w: CatValued2Functor,
    f: CatValued2Functor,
    candidate: FiniteCategory,
    mu: Transformation,
    probes: Optional[Sequence[FiniteCategory]] = None,
) -> ValidationReport:
    """Whether mu exhibits candidate as the marked weighted oplax colimit, on every probe."""
    probes = default_probes() if probes is None else probes
    found: List[Violation] = []
    counts: Dict[str, int] = {}
    for probe in probes:
        name = probe.name or "probe"
        target = cocylinder_data(m, w, f, probe)
        maps = functor_category(candidate, probe).category
        counts[f"{name}:functors"] = len(maps.objects)
        counts[f"{name}:transformations"] = len(maps.morphisms)
        counts[f"{name}:cocylinders"] = len(target.category.objects)
        counts[f"{name}:modifications"] = len(target.category.morphisms)
        functor = _probe_functor(f, candidate, mu, probe, target)
        if functor is None:
            found.append(violation("outside-cocylinders", name))
            continue
        for v in iso_of_categories(functor).violations:
            found.append(violation(f"probe-{v.law}", name, *v.witness))
    report = ValidationReport.of(found, counts, [PROBE_RELATIVE])
    logger.info("colimit check over %d probes: %s", len(probes), "pass" if report.passed else "fail")
    return report
