"""Extraordinary lax transformations and the parametrized Yoneda correspondence.

For a split discrete 2-opfibration K: B -> A and a diagram F on B^op x A,
two-variable transformations A(K-, -) => F correspond to extraordinary lax
transformations eta with eta_e an object of F(e, Ke). The correspondence
evaluates at identities in one direction and expands along the cleavage in
the other.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List

from ..diagrams.algebra import CAT
from ..diagrams.diagram import CatValued2Functor
from ..diagrams.transformation import HomData, category_of, slot_order
from ..elements.opfibration import SplitDiscrete2Opfib
from ..elements.reconstruct import factor_through_lift, lift_2cell
from ..errors import ShapeMismatch
from ..kernel import tags
from ..kernel.category import FiniteCategory, Functor, NaturalTransformation
from ..kernel.search import Constraint, guard, solve
from ..kernel.validation import ValidationReport, Violation, iso_of_categories, validate, violation
from .twovar import TwoVarModification, TwoVarTransformation, hom_profunctor, two_var_hom_data

logger = logging.getLogger(__name__)


class _Reindex:
    """Lookups into F along the two variables, for a fixed K."""

    def __init__(self, p: SplitDiscrete2Opfib, f: CatValued2Functor):
        self.p = p
        self.f = f
        self.total = p.k.src
        self.base = p.k.tgt

    def fiber(self, e: str, a: str) -> FiniteCategory:
        return self.f.obj(tags.pair(e, a))

    def home(self, e: str) -> FiniteCategory:
        """F(e, Ke)."""
        return self.fiber(e, self.p.k.obj(e))

    def along_first(self, x: str, a: str) -> Functor:
        """F(<x, 1_a>) for a 1-cell x of B."""
        return self.f.one(tags.pair(x, self.base.units[a]))

    def along_second(self, e: str, g: str) -> Functor:
        """F(<1_e, g>) for a 1-cell g of A."""
        return self.f.one(tags.pair(self.total.units[e], g))

    def two_first(self, xi: str, a: str) -> NaturalTransformation:
        return self.f.two(tags.pair(xi, self.base.identity2(self.base.units[a])))

    def two_second(self, e: str, eps: str) -> NaturalTransformation:
        return self.f.two(tags.pair(self.total.identity2(self.total.units[e]), eps))

    def ends(self, x: str, components: Dict[str, str]):
        """Category, source and target of the structure morphism at x: e -> e'."""
        e, e2 = self.total.one_cells[x]
        kx = self.p.k.one(x)
        target = self.p.k.obj(e2)
        src = self.along_second(e, kx).obj(components[e])
        tgt = self.along_first(x, target).obj(components[e2])
        return self.fiber(e, target), src, tgt

    def composite(self, y: str, x: str, eta_y: str, eta_x: str) -> str:
        """eta_{y.x} = F(<x,1>)(eta_y) . F(<1,Ky>)(eta_x)."""
        e, _ = self.total.one_cells[x]
        end = self.p.k.obj(self.total.tgt1(y))
        return self.fiber(e, end).compose(
            self.along_first(x, end).mor(eta_y),
            self.along_second(e, self.p.k.one(y)).mor(eta_x),
        )

    def two_cell_holds(self, xi: str, components: Dict[str, str], eta_x: str, eta_x2: str) -> bool:
        x = self.total.src2(xi)
        e, e2 = self.total.one_cells[x]
        end = self.p.k.obj(e2)
        c = self.fiber(e, end)
        left = c.compose(eta_x2, self.two_second(e, self.p.k.two(xi)).components[components[e]])
        right = c.compose(self.two_first(xi, end).components[components[e2]], eta_x)
        return left == right

    def modification_holds(self, x: str, eta, eta2, gamma_e: str, gamma_e2: str) -> bool:
        e, e2 = self.total.one_cells[x]
        end = self.p.k.obj(e2)
        c = self.fiber(e, end)
        left = c.compose(self.along_first(x, end).mor(gamma_e2), eta.structure[x])
        right = c.compose(eta2.structure[x], self.along_second(e, self.p.k.one(x)).mor(gamma_e))
        return left == right


@dataclass(frozen=True)
class ExtraordinaryLaxTransformation:
    """eta_e in F(e, Ke) with eta_x: F(<1,Kx>)(eta_e) -> F(<x,1>)(eta_e') for x: e -> e'."""

    p: SplitDiscrete2Opfib
    f: CatValued2Functor
    components: Dict[str, str]
    structure: Dict[str, str]

    def __hash__(self) -> int:
        return hash(self.tag)

    @cached_property
    def tag(self) -> str:
        total = self.p.k.src
        moving = {x: m for x, m in self.structure.items() if not total.is_unit(x)}
        return tags.components(self.components) + "{" + tags.mapping(moving) + "}"

    def __repr__(self) -> str:
        return f"ExtraordinaryLaxTransformation({self.tag})"


def _check_base(p: SplitDiscrete2Opfib, f: CatValued2Functor) -> None:
    if set(f.base.objects) != {tags.pair(e, a) for e in p.k.src.objects for a in p.k.tgt.objects}:
        raise ShapeMismatch("diagram does not live over B^op x A")


def extraordinary_violations(eta: ExtraordinaryLaxTransformation) -> List[Violation]:
    _check_base(eta.p, eta.f)
    r = _Reindex(eta.p, eta.f)
    total = r.total
    found: List[Violation] = []
    for e in total.objects:
        if eta.components.get(e) not in r.home(e).objects:
            found.append(violation("component-typing", e))
    if found:
        return found
    for x in total.one_cells:
        c, src, tgt = r.ends(x, eta.components)
        m = eta.structure.get(x)
        if m is None or m not in c.morphisms or c.morphisms[m] != (src, tgt):
            found.append(violation("structure-typing", x))
    if found:
        return found

    for e, u in total.units.items():
        if not r.home(e).is_identity(eta.structure[u]):
            found.append(violation("unit", u))
    for (y, x), yx in total.comp1.items():
        if total.is_unit(x) or total.is_unit(y):
            continue
        if eta.structure[yx] != r.composite(y, x, eta.structure[y], eta.structure[x]):
            found.append(violation("composition", y, x))
    for xi, (x, x2) in total.two_cells.items():
        if total.is_identity2(xi):
            continue
        if not r.two_cell_holds(xi, eta.components, eta.structure[x], eta.structure[x2]):
            found.append(violation("two-dimensional", xi))
    return found


def check_extraordinary(eta: ExtraordinaryLaxTransformation) -> ValidationReport:
    return ValidationReport.of(extraordinary_violations(eta))


@validate.register
def _(eta: ExtraordinaryLaxTransformation) -> ValidationReport:
    return check_extraordinary(eta)


def enumerate_extraordinary(p: SplitDiscrete2Opfib, f: CatValued2Functor) -> List[ExtraordinaryLaxTransformation]:
    """Every extraordinary lax transformation into f, sorted by tag."""
    _check_base(p, f)
    r = _Reindex(p, f)
    total = r.total

    def structure(x, s):
        if total.is_unit(x):
            e = total.src1(x)
            return r.home(e).identity(s[("obj", e)])
        return s[("str", x)]

    def dependency(x):
        return ("obj", total.src1(x)) if total.is_unit(x) else ("str", x)

    def components(s, *objects):
        return {e: s[("obj", e)] for e in objects}

    def candidates(slot, s):
        kind, name = slot
        if kind == "obj":
            return r.home(name).objects
        e, e2 = total.one_cells[name]
        c, src, tgt = r.ends(name, components(s, e, e2))
        return c.hom(src, tgt)

    constraints = []
    for (y, x), yx in total.comp1.items():
        if total.is_unit(x) or total.is_unit(y):
            continue
        constraints.append(
            Constraint(
                tuple({dependency(y), dependency(x), dependency(yx)}),
                lambda s, y=y, x=x, yx=yx: structure(yx, s) == r.composite(y, x, structure(y, s), structure(x, s)),
            )
        )
    for xi, (x, x2) in total.two_cells.items():
        if total.is_identity2(xi):
            continue
        e, e2 = total.one_cells[x]
        constraints.append(
            Constraint(
                tuple({dependency(x), dependency(x2), ("obj", e), ("obj", e2)}),
                lambda s, xi=xi, x=x, x2=x2, e=e, e2=e2: r.two_cell_holds(
                    xi, components(s, e, e2), structure(x, s), structure(x2, s)
                ),
            )
        )

    found = [
        ExtraordinaryLaxTransformation(
            p,
            f,
            {e: s[("obj", e)] for e in total.objects},
            {x: structure(x, s) for x in total.one_cells},
        )
        for s in solve(slot_order(total), candidates, constraints, "extraordinary lax transformations")
    ]
    found.sort(key=lambda eta: eta.tag)
    logger.debug("%d extraordinary lax transformations into %s", len(found), f)
    return found


@dataclass(frozen=True)
class ExtraordinaryModification:
    src: ExtraordinaryLaxTransformation
    tgt: ExtraordinaryLaxTransformation
    components: Dict[str, str]

    def __hash__(self) -> int:
        return hash(self.tag)

    @cached_property
    def tag(self) -> str:
        return tags.arrow(tags.components(self.components), self.src.tag, self.tgt.tag)

    def after(self, other: "ExtraordinaryModification") -> "ExtraordinaryModification":
        if other.tgt != self.src:
            raise ShapeMismatch("modifications are not composable")
        r = _Reindex(self.src.p, self.src.f)
        return ExtraordinaryModification(
            other.src,
            self.tgt,
            {e: r.home(e).compose(m, other.components[e]) for e, m in self.components.items()},
        )


def identity_extraordinary_modification(eta: ExtraordinaryLaxTransformation) -> ExtraordinaryModification:
    r = _Reindex(eta.p, eta.f)
    return ExtraordinaryModification(eta, eta, {e: r.home(e).identity(x) for e, x in eta.components.items()})


def check_extraordinary_modification(gamma: ExtraordinaryModification) -> ValidationReport:
    eta, eta2 = gamma.src, gamma.tgt
    r = _Reindex(eta.p, eta.f)
    found = []
    for e, m in gamma.components.items():
        if r.home(e).morphisms.get(m) != (eta.components[e], eta2.components[e]):
            found.append(violation("component-typing", e))
    if not found:
        for x, (e, e2) in r.total.one_cells.items():
            if not r.modification_holds(x, eta, eta2, gamma.components[e], gamma.components[e2]):
                found.append(violation("modification", x))
    return ValidationReport.of(found)


def enumerate_extraordinary_modifications(
    eta: ExtraordinaryLaxTransformation, eta2: ExtraordinaryLaxTransformation
) -> List[ExtraordinaryModification]:
    r = _Reindex(eta.p, eta.f)
    total = r.total

    def candidates(e, s):
        return r.home(e).hom(eta.components[e], eta2.components[e])

    constraints = [
        Constraint(tuple({e, e2}), lambda s, x=x, e=e, e2=e2: r.modification_holds(x, eta, eta2, s[e], s[e2]))
        for x, (e, e2) in total.one_cells.items()
        if not total.is_unit(x)
    ]
    found = [
        ExtraordinaryModification(eta, eta2, dict(s))
        for s in solve(list(total.objects), candidates, constraints, "extraordinary modifications")
    ]
    return sorted(found, key=lambda m: m.tag)


def extraordinary_hom_data(p: SplitDiscrete2Opfib, f: CatValued2Functor) -> HomData:
    objects = {eta.tag: eta for eta in enumerate_extraordinary(p, f)}
    modifications: Dict[str, ExtraordinaryModification] = {}
    for eta in objects.values():
        for eta2 in objects.values():
            for mod in enumerate_extraordinary_modifications(eta, eta2):
                modifications[mod.tag] = mod
            guard("extraordinary hom-category", len(modifications))
    name = f"Ex({f.name or 'F'})"
    return HomData(
        category_of(objects, modifications, identity_extraordinary_modification, name=name), objects, modifications
    )


def _expects_hom(alpha: TwoVarTransformation) -> None:
    if alpha.second != alpha.p.k.tgt or alpha.src != hom_profunctor(alpha.p.k):
        raise ShapeMismatch("transformation does not start at A(K-, -)")


def yoneda_to_extraordinary(alpha: TwoVarTransformation) -> ExtraordinaryLaxTransformation:
    """eta_e = alpha_{e,Ke}(1), eta_x = (alpha_{x,Ke'})_1 . (alpha_{e,Kx})_1."""
    _expects_hom(alpha)
    p = alpha.p
    k, a = p.k, p.k.tgt
    r = _Reindex(p, alpha.tgt)
    components = {e: alpha.components[tags.pair(e, k.obj(e))].obj(a.units[k.obj(e)]) for e in r.total.objects}
    structure = {}
    for x, (e, e2) in r.total.one_cells.items():
        end = k.obj(e2)
        first = alpha.structure_c[(e, k.one(x))].components[a.units[k.obj(e)]]
        second = alpha.structure_b[(x, end)].components[a.units[end]]
        structure[x] = r.fiber(e, end).compose(second, first)
    return ExtraordinaryLaxTransformation(p, alpha.tgt, components, structure)


def yoneda_from_extraordinary(eta: ExtraordinaryLaxTransformation) -> TwoVarTransformation:
    """Expand eta along the cleavage into a two-variable transformation A(K-, -) => F."""
    p, f = eta.p, eta.f
    k = p.k
    total, a = k.src, k.tgt
    r = _Reindex(p, f)
    g = hom_profunctor(k)
    if f.base != g.base:
        raise ShapeMismatch("diagram does not live over B^op x A")

    def value(e: str, w: str, target: str) -> str:
        """F(<cleave(e, w), 1>)(eta at the end of the lift)."""
        lift = p.lift(e, w)
        return r.along_first(lift, target).obj(eta.components[total.tgt1(lift)])

    components = {}
    for e in total.objects:
        for x in a.objects:
            hom = a.hom[(k.obj(e), x)]
            on_mor = {}
            for theta, (w, v) in hom.morphisms.items():
                lift_w, lift_v = p.lift(e, w), p.lift(e, v)
                above = lift_2cell(p, theta, lift_v)
                n = factor_through_lift(p, e, w, total.src2(above))
                on_mor[theta] = r.fiber(e, x).compose(
                    r.two_first(above, x).components[eta.components[total.tgt1(lift_v)]],
                    r.along_first(lift_w, x).mor(eta.structure[n]),
                )
            components[tags.pair(e, x)] = Functor(hom, r.fiber(e, x), {w: value(e, w, x) for w in hom.objects}, on_mor)

    structure_b = {}
    for u, (e, e2) in total.one_cells.items():
        ku = k.one(u)
        for x in a.objects:
            g_u, h_u = g.one(tags.pair(u, a.units[x])), f.one(tags.pair(u, a.units[x]))
            here, there = components[tags.pair(e, x)], components[tags.pair(e2, x)]
            src, tgt = CAT.compose1(here, g_u), CAT.compose1(h_u, there)
            if total.is_unit(u):
                structure_b[(u, x)] = CAT.identity2(tgt)
                continue
            cells = {}
            for v in a.hom[(k.obj(e2), x)].objects:
                vu = a.compose1(v, ku)
                n = factor_through_lift(p, e, vu, total.compose1(p.lift(e2, v), u))
                cells[v] = r.along_first(p.lift(e, vu), x).mor(eta.structure[n])
            structure_b[(u, x)] = NaturalTransformation(src, tgt, cells)

    structure_c = {}
    for e in total.objects:
        for h, (x, x2) in a.one_cells.items():
            g_h, f_h = g.one(tags.pair(total.units[e], h)), f.one(tags.pair(total.units[e], h))
            src = CAT.compose1(f_h, components[tags.pair(e, x)])
            tgt = CAT.compose1(components[tags.pair(e, x2)], g_h)
            if a.is_unit(h):
                structure_c[(e, h)] = CAT.identity2(src)
                continue
            cells = {}
            for v in a.hom[(k.obj(e), x)].objects:
                lift = p.lift(e, v)
                onward = p.lift(total.tgt1(lift), h)
                cells[v] = r.along_first(lift, x2).mor(eta.structure[onward])
            structure_c[(e, h)] = NaturalTransformation(src, tgt, cells)
    return TwoVarTransformation(p, a, g, f, components, structure_b, structure_c)


def yoneda_modifications(direction: str, datum, src=None, tgt=None):
    """Carry a modification across the correspondence.

    direction "to" takes a TwoVarModification; "from" takes an
    ExtraordinaryModification. The endpoints default to the images of the
    datum's endpoints.
    """
    if direction == "to":
        return _modification_to(datum, src, tgt)
    if direction == "from":
        return _modification_from(datum, src, tgt)
    raise ValueError(f"unknown direction: {direction}")


def _modification_to(theta: TwoVarModification, src=None, tgt=None) -> ExtraordinaryModification:
    """Gamma_e = (Theta_{e,Ke})_1."""
    p = theta.src.p
    k = p.k
    src = src or yoneda_to_extraordinary(theta.src)
    tgt = tgt or yoneda_to_extraordinary(theta.tgt)
    components = {
        e: theta.components[tags.pair(e, k.obj(e))].components[k.tgt.units[k.obj(e)]] for e in k.src.objects
    }
    return ExtraordinaryModification(src, tgt, components)


def _modification_from(gamma: ExtraordinaryModification, src=None, tgt=None) -> TwoVarModification:
    """(Theta_{e,x})_w = F(<cleave(e, w), 1>)(Gamma at the end of the lift)."""
    eta = gamma.src
    p = eta.p
    k = p.k
    r = _Reindex(p, eta.f)
    src = src or yoneda_from_extraordinary(gamma.src)
    tgt = tgt or yoneda_from_extraordinary(gamma.tgt)
    components = {}
    for e in k.src.objects:
        for x in k.tgt.objects:
            key = tags.pair(e, x)
            cells = {}
            for w in k.tgt.hom[(k.obj(e), x)].objects:
                lift = p.lift(e, w)
                cells[w] = r.along_first(lift, x).mor(gamma.components[k.src.tgt1(lift)])
            components[key] = NaturalTransformation(src.components[key], tgt.components[key], cells)
    return TwoVarModification(src, tgt, components)


def yoneda_check(p: SplitDiscrete2Opfib, f: CatValued2Functor) -> ValidationReport:
    """Enumerate both sides and check the correspondence is an isomorphism of categories."""
    g = hom_profunctor(p.k)
    left = two_var_hom_data(p, p.k.tgt, g, f)
    right = extraordinary_hom_data(p, f)
    found: List[Violation] = []

    on_obj = {}
    for tag, alpha in left.transformations.items():
        eta = yoneda_to_extraordinary(alpha)
        on_obj[tag] = eta.tag
        if eta.tag not in right.transformations:
            found.append(violation("outside-extraordinary", tag))
        elif yoneda_from_extraordinary(eta) != alpha:
            found.append(violation("roundtrip", tag))
    back = {}
    for tag, eta in right.transformations.items():
        alpha = yoneda_from_extraordinary(eta)
        back[tag] = alpha.tag
        if alpha.tag not in left.transformations:
            found.append(violation("outside-two-variable", tag))
        elif yoneda_to_extraordinary(alpha) != eta:
            found.append(violation("roundtrip", tag))

    on_mor = {}
    if not found:
        for tag, theta in left.modifications.items():
            image = yoneda_modifications(
                "to", theta, right.transformations[on_obj[theta.src.tag]], right.transformations[on_obj[theta.tgt.tag]]
            )
            on_mor[tag] = image.tag
            if image.tag not in right.modifications:
                found.append(violation("outside-extraordinary", tag))
            elif yoneda_modifications("from", image, theta.src, theta.tgt) != theta:
                found.append(violation("roundtrip", tag))
        for tag, gamma in right.modifications.items():
            image = yoneda_modifications(
                "from", gamma, left.transformations[back[gamma.src.tag]], left.transformations[back[gamma.tgt.tag]]
            )
            if image.tag not in left.modifications:
                found.append(violation("outside-two-variable", tag))
            elif yoneda_modifications("to", image, gamma.src, gamma.tgt) != gamma:
                found.append(violation("roundtrip", tag))
    if not found:
        functor = Functor(left.category, right.category, on_obj, on_mor)
        found.extend(iso_of_categories(functor).violations)
    counts = {
        "two-variable": len(left.category.objects),
        "two-variable-modifications": len(left.category.morphisms),
        "extraordinary": len(right.category.objects),
        "extraordinary-modifications": len(right.category.morphisms),
    }
    report = ValidationReport.of(found, counts)
    logger.info("parametrized Yoneda on %s: %s", f, "pass" if report.passed else "fail")
    return report
