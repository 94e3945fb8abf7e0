"""Pointwise and weak lax Kan extensions along discrete 2-opfibrations.

A pointwise extension is checked object by object: l(A) with the
cocylinder built from lam must be the marked oplax colimit of f weighted
by A(K-, A). A weak extension is checked probe by probe: pasting with lam
must be an isomorphism of hom-categories.
"""

import logging
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from ..diagrams.algebra import CAT
from ..diagrams.diagram import CatValued2Functor, constant_diagram, hom_weight, precompose, representable
from ..diagrams.pasting import precompose_transformation, vertical
from ..diagrams.transformation import (
    Flavor,
    HomData,
    Marking,
    Modification,
    Transformation,
    hom_data,
    sigma_hom_data,
    structure_ends,
)
from ..elements.construction import elements_op
from ..elements.functoriality import canonical_lambda
from ..elements.opfibration import SplitDiscrete2Opfib
from ..errors import FlavorMismatch, ShapeMismatch
from ..kernel import tags
from ..kernel.category import FiniteCategory, Functor, NaturalTransformation, arrow_category
from ..kernel.enumeration import functor_category
from ..kernel.twocategory import TwoFunctor, terminal_category
from ..kernel.validation import ValidationReport, Violation, iso_of_categories, validate, violation
from ..limits.colimits import (
    PROBE_RELATIVE,
    cocylinder_data,
    cocylinder_image,
    default_probes,
    hom_into,
    is_marked_oplax_colimit,
    opposite_marking,
)

logger = logging.getLogger(__name__)


class KanReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    passed: bool = Field(alias="pass")
    per_object: Dict[str, ValidationReport] = Field(default_factory=dict)
    per_probe: Dict[str, ValidationReport] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)

    @classmethod
    def of(
        cls,
        per_object: Optional[Dict[str, ValidationReport]] = None,
        per_probe: Optional[Dict[str, ValidationReport]] = None,
        notes: Sequence[str] = (),
    ) -> "KanReport":
        per_object = dict(sorted((per_object or {}).items()))
        per_probe = dict(sorted((per_probe or {}).items()))
        passed = all(r.passed for r in per_object.values()) and all(r.passed for r in per_probe.values())
        return cls(passed=passed, per_object=per_object, per_probe=per_probe, notes=sorted(set(notes)))

    def to_json(self) -> dict:
        return self.model_dump(by_alias=True)


def cartesian_marking_of(p: SplitDiscrete2Opfib) -> Marking:
    """The chosen lifts, marked on the total 2-category."""
    total = p.k.src
    return Marking(total, frozenset(p.cleavage.values()) | frozenset(total.units.values()))


def _expect_lambda(k: TwoFunctor, f: CatValued2Functor, l: CatValued2Functor, lam: Transformation) -> None:
    if f.base != k.src or l.base != k.tgt:
        raise ShapeMismatch("f must live over the source of K and l over its target")
    if lam.src != f or lam.tgt != precompose(l, k):
        raise ShapeMismatch("lambda must go from f to l . K")
    if lam.flavor.oplax:
        raise FlavorMismatch("lambda must be lax-oriented")


def kan_cocylinder(
    k: TwoFunctor, f: CatValued2Functor, l: CatValued2Functor, lam: Transformation, a: str, marking: Marking
) -> Transformation:
    """mu_e(w) = l(w) . lam_e, with structure l(w) * lam_u, from A(K-, a) to [f(-), l(a)]."""
    weight = hom_weight(k, a)
    target = hom_into(f, l.obj(a))
    total, base = k.src, k.tgt

    components = {}
    for e in total.objects:
        fc = functor_category(f.obj(e), l.obj(a))
        hom = base.hom[(k.obj(e), a)]
        lam_e = lam.components[e]
        components[e] = Functor(
            weight.obj(e),
            fc.category,
            {v: l.one(v).after(lam_e).tag for v in hom.objects},
            {theta: fc.transformation_tag(l.two(theta).whisker_right(lam_e)) for theta in hom.morphisms},
        )

    structure = {}
    for u, (e, e2) in total.one_cells.items():
        fc = functor_category(f.obj(e), l.obj(a))
        # u: e -> e2 runs from e2 to e over the op-dual base
        src, tgt = structure_ends(CAT, weight, target, Flavor.MARKED_OPLAX, u, components[e2], components[e])
        cells = {
            v: fc.transformation_tag(lam.structure[u].whisker_left(l.one(v)))
            for v in base.hom[(k.obj(e2), a)].objects
        }
        structure[u] = NaturalTransformation(src, tgt, cells)
    return Transformation(
        Flavor.MARKED_OPLAX, weight, target, components, structure, opposite_marking(marking), name=f"mu@{a}"
    )


def pointwise_kan_check(
    p: SplitDiscrete2Opfib,
    f: CatValued2Functor,
    l: CatValued2Functor,
    lam: Transformation,
    probes: Optional[Sequence[FiniteCategory]] = None,
) -> KanReport:
    """l with lam is a pointwise left Kan extension of f along K, relative to the probes."""
    k = p.k
    _expect_lambda(k, f, l, lam)
    marking = cartesian_marking_of(p)
    per_object = {}
    for a in k.tgt.objects:
        mu = kan_cocylinder(k, f, l, lam, a, marking)
        per_object[a] = is_marked_oplax_colimit(marking, mu.src, f, l.obj(a), mu, probes)
    report = KanReport.of(per_object=per_object, notes=[PROBE_RELATIVE])
    logger.info("pointwise Kan check over %d objects: %s", len(per_object), "pass" if report.passed else "fail")
    return report


def default_u_probes(
    l: CatValued2Functor, categories: Optional[Sequence[FiniteCategory]] = None
) -> List[CatValued2Functor]:
    """Constant diagrams at the categories (Δ1 and ΔTwo by default), l itself and the representable at the least object."""
    base = l.base
    categories = [terminal_category(), arrow_category()] if categories is None else categories
    return [constant_diagram(base, c) for c in categories] + [l, representable(base, base.objects[0])]


def _pasting_functor(
    k: TwoFunctor, lam: Transformation, left: HomData, right: HomData, name: str
) -> ValidationReport:
    """Certify that phi -> (phi K) . lam is an isomorphism left -> right."""
    counts = {
        "left-objects": len(left.category.objects),
        "left-morphisms": len(left.category.morphisms),
        "right-objects": len(right.category.objects),
        "right-morphisms": len(right.category.morphisms),
    }
    images: Dict[str, Transformation] = {}
    for tag, phi in left.transformations.items():
        image = vertical(precompose_transformation(phi, k), lam)
        if image.tag not in right.transformations:
            return ValidationReport.of([violation("outside-hom", name, tag)], counts)
        images[tag] = image
    on_mor = {}
    for tag, gamma in left.modifications.items():
        source, target = images[gamma.src.tag], images[gamma.tgt.tag]
        components = {
            e: CAT.whisker_right(gamma.components[k.obj(e)], lam.components[e]) for e in k.src.objects
        }
        image = Modification(source, target, components).tag
        if image not in right.modifications:
            return ValidationReport.of([violation("outside-hom", name, tag)], counts)
        on_mor[tag] = image
    functor = Functor(left.category, right.category, {tag: t.tag for tag, t in images.items()}, on_mor)
    found = [violation(v.law, name, *v.witness) for v in iso_of_categories(functor).violations]
    return ValidationReport.of(found, counts)


def weak_kan_check(
    k: TwoFunctor,
    f: CatValued2Functor,
    l: CatValued2Functor,
    lam: Transformation,
    probes_u: Optional[Sequence[CatValued2Functor]] = None,
    restricted: bool = False,
) -> KanReport:
    """Pasting with lam gives Hom(l, U) = Hom(f, U . K) for every probe U.

    With restricted=True also checks the pseudo/sigma and strict/marked-lax
    restrictions, which need lam to carry a marking.
    """
    _expect_lambda(k, f, l, lam)
    if restricted and lam.marking is None:
        raise FlavorMismatch("restricted checks need a marked lambda")
    probes_u = default_u_probes(l) if probes_u is None else probes_u
    per_probe = {}
    for i, u in enumerate(probes_u):
        name = u.name or f"U{i}"
        if name in per_probe:
            name = f"{name}#{i}"
        reindexed = precompose(u, k)
        per_probe[name] = _pasting_functor(k, lam, hom_data(l, u, Flavor.LAX), hom_data(f, reindexed, Flavor.LAX), name)
        if restricted:
            per_probe[f"{name}:pseudo-sigma"] = _pasting_functor(
                k,
                lam,
                hom_data(l, u, Flavor.PSEUDO),
                sigma_hom_data(f, reindexed, lam.marking),
                f"{name}:pseudo-sigma",
            )
            per_probe[f"{name}:strict-marked-lax"] = _pasting_functor(
                k,
                lam,
                hom_data(l, u, Flavor.STRICT),
                hom_data(f, reindexed, Flavor.MARKED_LAX, lam.marking),
                f"{name}:strict-marked-lax",
            )
    report = KanReport.of(per_probe=per_probe)
    logger.info("weak Kan check over %d probes: %s", len(probes_u), "pass" if report.passed else "fail")
    return report


def _solve_factorizations(
    f: CatValued2Functor,
    one: CatValued2Functor,
    marking: Marking,
    mu: Transformation,
    a: str,
    probe: FiniteCategory,
) -> ValidationReport:
    """For each cocylinder sigma, read off s(X) = sigma_(a,X)(1_a) and check s is its unique factorization."""
    elements = elements_op(f)
    base = f.base
    unit = base.units[a]
    name = probe.name or "probe"
    points = functor_category(terminal_category(), probe)
    sigmas = cocylinder_data(marking, mu.src, one, probe).transformations
    candidate = f.obj(a)
    images = {
        tag: cocylinder_image(one, candidate, mu, s).tag for tag, s in functor_category(candidate, probe).functors.items()
    }

    found: List[Violation] = []
    for tag, sigma in sigmas.items():
        on_obj = {
            x: points.functors[sigma.components[elements.object_tag(a, x)].obj(unit)].obj("*") for x in candidate.objects
        }
        on_mor = {}
        for alpha in candidate.morphisms:
            m = tags.join(unit, candidate.src(alpha), alpha)
            cell = sigma.structure[m].components[unit]
            on_mor[alpha] = points.transformations[cell].components["*"]
        solved = Functor(candidate, probe, on_obj, on_mor)
        matches = sorted(s for s, image in images.items() if image == tag)
        if not validate(solved).passed:
            found.append(violation("solved-invalid", name, tag))
        elif images.get(solved.tag) != tag:
            found.append(violation("solved-mismatch", name, tag))
        if len(matches) > 1:
            found.append(violation("non-unique", name, tag, matches[0], matches[1]))
    return ValidationReport.of(found, {f"{name}:sigmas": len(sigmas)})


def lan_delta1_check(f: CatValued2Functor, probes: Optional[Sequence[FiniteCategory]] = None) -> KanReport:
    """f is the pointwise left Kan extension of Δ1 along the projection from its elements."""
    probes = default_probes() if probes is None else probes
    elements = elements_op(f)
    p = elements.opfib
    one = constant_diagram(elements.total, terminal_category())
    lam = canonical_lambda(f, elements)
    report = pointwise_kan_check(p, one, f, lam, probes)
    marking = cartesian_marking_of(p)
    per_object = dict(report.per_object)
    for a in f.base.objects:
        mu = kan_cocylinder(p.k, one, f, lam, a, marking)
        for probe in probes:
            per_object[a] = per_object[a].merge(_solve_factorizations(f, one, marking, mu, a, probe))
    return KanReport.of(per_object=per_object, notes=report.notes)
