"""Transformations in two variables: marked-oplax in the first, lax in the second.

The first variable ranges over B^op, where B is the total 2-category of a
split discrete 2-opfibration and carries its cleavage marking; the second
ranges over an arbitrary finite 2-category. Diagrams live over the product
2-category, whose cells are tagged <first,second>.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, List, Tuple

from ..diagrams.algebra import CAT
from ..diagrams.diagram import CatValued2Functor, precompose
from ..diagrams.transformation import (
    Flavor,
    HomData,
    Marking,
    Modification,
    Transformation,
    category_of,
    check_modification,
    composite_structure,
    modification_holds,
    structure_ends,
    transformation_violations,
    two_dimensional_holds,
)
from ..elements.opfibration import SplitDiscrete2Opfib
from ..errors import ShapeMismatch
from ..kernel import tags
from ..kernel.category import Functor, NaturalTransformation
from ..kernel.enumeration import functor_category
from ..kernel.search import Constraint, guard, solve
from ..kernel.twocategory import Duality, Finite2Category, TwoFunctor, dualize, product_2category
from ..kernel.validation import ValidationReport, Violation, validate, violation

logger = logging.getLogger(__name__)

CellKey = Tuple[str, str]


def cartesian_marking(p: SplitDiscrete2Opfib) -> Marking:
    """The chosen lifts, marked on the op-dual of the total 2-category."""
    total = p.k.src
    return Marking(dualize(total, Duality.OP), frozenset(p.cleavage.values()) | frozenset(total.units.values()))


def fix_second(product: Finite2Category, first: Finite2Category, second: Finite2Category, x: str) -> TwoFunctor:
    """first -> first x second, b -> <b, x>."""
    unit = second.units[x]
    return TwoFunctor(
        first,
        product,
        {b: tags.pair(b, x) for b in first.objects},
        {u: tags.pair(u, unit) for u in first.one_cells},
        {d: tags.pair(d, second.identity2(unit)) for d in first.two_cells},
    )


def fix_first(product: Finite2Category, first: Finite2Category, second: Finite2Category, e: str) -> TwoFunctor:
    """second -> first x second, x -> <e, x>."""
    unit = first.units[e]
    return TwoFunctor(
        second,
        product,
        {x: tags.pair(e, x) for x in second.objects},
        {f: tags.pair(unit, f) for f in second.one_cells},
        {d: tags.pair(first.identity2(unit), d) for d in second.two_cells},
    )


def hom_profunctor(k: TwoFunctor) -> CatValued2Functor:
    """<e, x> -> A(K e, x) over B^op x A, acting by f . - . K(u)."""
    total, a = k.src, k.tgt
    first = dualize(total, Duality.OP)
    base = product_2category(first, a, name=f"{total.name}^op x {a.name}" if total.name else "")
    on_obj = {tags.pair(e, x): a.hom[(k.obj(e), x)] for e in total.objects for x in a.objects}

    on_1 = {}
    for u, (e2, e) in first.one_cells.items():
        ku = k.one(u)
        for f, (x, x2) in a.one_cells.items():
            source, target = on_obj[tags.pair(e2, x)], on_obj[tags.pair(e, x2)]
            on_1[tags.pair(u, f)] = Functor(
                source,
                target,
                {w: a.compose1(f, a.compose1(w, ku)) for w in source.objects},
                {theta: a.whisker_left(f, a.whisker_right(theta, ku)) for theta in source.morphisms},
            )

    on_2 = {}
    for delta, (u, u2) in first.two_cells.items():
        e2 = first.src1(u)
        kd = k.two(delta)
        for eps, (f, f2) in a.two_cells.items():
            x = a.src1(f)
            on_2[tags.pair(delta, eps)] = NaturalTransformation(
                on_1[tags.pair(u, f)],
                on_1[tags.pair(u2, f2)],
                {w: a.compose2(eps, a.whisker_left(w, kd)) for w in on_obj[tags.pair(e2, x)].objects},
            )
    return CatValued2Functor(base, on_obj, on_1, on_2, name=f"{a.name}(K-,-)")


def pair_hom_diagram(p: CatValued2Functor, u: CatValued2Functor) -> CatValued2Functor:
    """<e, a> -> [P(e), U(a)] over base(P)^op x base(U), acting by U(f) . - . P(w)."""
    first = dualize(p.base, Duality.OP)
    second = u.base
    base = product_2category(first, second)
    on_obj = {
        tags.pair(e, a): functor_category(p.obj(e), u.obj(a)).category for e in first.objects for a in second.objects
    }

    on_1 = {}
    for w, (e2, e) in first.one_cells.items():
        pw = p.one(w)
        for f, (a, a2) in second.one_cells.items():
            uf = u.one(f)
            source = functor_category(p.obj(e2), u.obj(a))
            target = functor_category(p.obj(e), u.obj(a2))
            on_1[tags.pair(w, f)] = Functor(
                source.category,
                target.category,
                {tag: uf.after(g.after(pw)).tag for tag, g in source.functors.items()},
                {
                    tag: target.transformation_tag(t.whisker_right(pw).whisker_left(uf))
                    for tag, t in source.transformations.items()
                },
            )

    on_2 = {}
    for delta, (w, w2) in first.two_cells.items():
        e2, e = first.one_cells[w]
        pd = p.two(delta)
        for eps, (f, f2) in second.two_cells.items():
            a, a2 = second.one_cells[f]
            ue = u.two(eps)
            source = functor_category(p.obj(e2), u.obj(a))
            target = functor_category(p.obj(e), u.obj(a2))
            components = {}
            for tag, g in source.functors.items():
                inner = pd.whisker_left(g).whisker_left(u.one(f))
                outer = ue.whisker_right(g.after(p.one(w2)))
                components[tag] = target.transformation_tag(outer.after(inner))
            on_2[tags.pair(delta, eps)] = NaturalTransformation(
                on_1[tags.pair(w, f)], on_1[tags.pair(w2, f2)], components
            )
    name = f"[{p.name or 'P'}-,{u.name or 'U'}-]"
    return CatValued2Functor(base, on_obj, on_1, on_2, name=name)


@dataclass(frozen=True)
class TwoVarTransformation:
    """alpha: G => H, with structure_b keyed (1-cell of B^op, x) and structure_c keyed (e, 1-cell of C)."""

    p: SplitDiscrete2Opfib
    second: Finite2Category
    src: CatValued2Functor
    tgt: CatValued2Functor
    components: Dict[str, Functor]
    structure_b: Dict[CellKey, NaturalTransformation]
    structure_c: Dict[CellKey, NaturalTransformation]

    def __hash__(self) -> int:
        return hash(self.tag)

    @cached_property
    def first(self) -> Finite2Category:
        return dualize(self.p.k.src, Duality.OP)

    @cached_property
    def marking(self) -> Marking:
        return cartesian_marking(self.p)

    @cached_property
    def tag(self) -> str:
        first, second = self.first, self.second
        b = {tags.pair(u, x): t.tag for (u, x), t in self.structure_b.items() if not first.is_unit(u)}
        c = {tags.pair(e, f): t.tag for (e, f), t in self.structure_c.items() if not second.is_unit(f)}
        comps = {key: f.tag for key, f in self.components.items()}
        return tags.components(comps) + "{" + tags.mapping(b) + "|" + tags.mapping(c) + "}"

    def at_second(self, x: str) -> Transformation:
        """alpha(-, x), a marked-oplax transformation over B^op."""
        include = fix_second(self.src.base, self.first, self.second, x)
        return Transformation(
            Flavor.MARKED_OPLAX,
            precompose(self.src, include),
            precompose(self.tgt, include),
            {e: self.components[tags.pair(e, x)] for e in self.first.objects},
            {u: self.structure_b[(u, x)] for u in self.first.one_cells},
            self.marking,
        )

    def at_first(self, e: str) -> Transformation:
        """alpha(e, -), a lax transformation over the second variable."""
        include = fix_first(self.src.base, self.first, self.second, e)
        return Transformation(
            Flavor.LAX,
            precompose(self.src, include),
            precompose(self.tgt, include),
            {x: self.components[tags.pair(e, x)] for x in self.second.objects},
            {f: self.structure_c[(e, f)] for f in self.second.one_cells},
        )

    def __repr__(self) -> str:
        return f"TwoVarTransformation({self.tag})"


def compatibility_holds(
    g: CatValued2Functor,
    h: CatValued2Functor,
    first: Finite2Category,
    second: Finite2Category,
    u: str,
    f: str,
    cells: Tuple[NaturalTransformation, NaturalTransformation, NaturalTransformation, NaturalTransformation],
) -> bool:
    """The two pastings G(B',C) => H(B,C') agree.

    cells = (alpha_{u,C}, alpha_{u,C'}, alpha_{B,f}, alpha_{B',f}) for u: B' -> B in B^op and f: C -> C'.
    """
    at_c, at_c2, at_b, at_b2 = cells
    b2, b = first.one_cells[u]
    c, c2 = second.one_cells[f]
    g_u = g.one(tags.pair(u, second.units[c]))
    g_f = g.one(tags.pair(first.units[b2], f))
    h_u = h.one(tags.pair(u, second.units[c2]))
    h_f = h.one(tags.pair(first.units[b], f))
    left = CAT.vcompose(CAT.whisker_right(at_c2, g_f), CAT.whisker_right(at_b, g_u))
    right = CAT.vcompose(CAT.whisker_left(h_u, at_b2), CAT.whisker_left(h_f, at_c))
    return left == right


def _shape_check(
    p: SplitDiscrete2Opfib, second: Finite2Category, g: CatValued2Functor, h: CatValued2Functor
) -> Finite2Category:
    first = dualize(p.k.src, Duality.OP)
    if g.base != h.base:
        raise ShapeMismatch("source and target are not parallel")
    expected = product_2category(first, second)
    if g.base.objects != expected.objects or set(g.base.one_cells) != set(expected.one_cells):
        raise ShapeMismatch("diagrams do not live over B^op x C")
    return first


def two_var_violations(alpha: TwoVarTransformation) -> List[Violation]:
    first = _shape_check(alpha.p, alpha.second, alpha.src, alpha.tgt)
    second = alpha.second
    found: List[Violation] = []
    for x in second.objects:
        found.extend(violation(v.law, *v.witness, x) for v in transformation_violations(alpha.at_second(x)))
    for e in first.objects:
        found.extend(violation(v.law, e, *v.witness) for v in transformation_violations(alpha.at_first(e)))
    if found:
        return found
    for u in first.one_cells:
        if first.is_unit(u):
            continue
        b2, b = first.one_cells[u]
        for f, (c, c2) in second.one_cells.items():
            if second.is_unit(f):
                continue
            cells = (
                alpha.structure_b[(u, c)],
                alpha.structure_b[(u, c2)],
                alpha.structure_c[(b, f)],
                alpha.structure_c[(b2, f)],
            )
            if not compatibility_holds(alpha.src, alpha.tgt, first, second, u, f, cells):
                found.append(violation("compatibility", u, f))
    return found


def check_two_var(alpha: TwoVarTransformation) -> ValidationReport:
    return ValidationReport.of(two_var_violations(alpha))


@validate.register
def _(alpha: TwoVarTransformation) -> ValidationReport:
    return check_two_var(alpha)


def enumerate_two_var(
    p: SplitDiscrete2Opfib, second: Finite2Category, g: CatValued2Functor, h: CatValued2Functor
) -> List[TwoVarTransformation]:
    """Every marked-oplax/lax two-variable transformation g => h, sorted by tag."""
    first = _shape_check(p, second, g, h)
    product = g.base
    marked: FrozenSet[str] = cartesian_marking(p).marked
    by_second = {}
    for x in second.objects:
        include = fix_second(product, first, second, x)
        by_second[x] = (precompose(g, include), precompose(h, include))
    by_first = {}
    for e in first.objects:
        include = fix_first(product, first, second, e)
        by_first[e] = (precompose(g, include), precompose(h, include))

    slots: List[Hashable] = []
    placed = set()
    pending_b = [(u, x) for u in first.one_cells if not first.is_unit(u) for x in second.objects]
    pending_c = [(e, f) for e in first.objects for f in second.one_cells if not second.is_unit(f)]
    for e in first.objects:
        for x in second.objects:
            slots.append(("obj", e, x))
            placed.add((e, x))
            ready_b = [(u, y) for u, y in pending_b if all((end, y) in placed for end in first.one_cells[u])]
            ready_c = [(d, f) for d, f in pending_c if all((d, end) in placed for end in second.one_cells[f])]
            slots.extend(("b", u, y) for u, y in ready_b)
            slots.extend(("c", d, f) for d, f in ready_c)
            pending_b = [key for key in pending_b if key not in ready_b]
            pending_c = [key for key in pending_c if key not in ready_c]

    def comp(s, e, x):
        return s[("obj", e, x)]

    def sb(s, u, x):
        if first.is_unit(u):
            _, hx = by_second[x]
            return CAT.identity2(CAT.compose1(hx.one(u), comp(s, first.src1(u), x)))
        return s[("b", u, x)]

    def sc(s, e, f):
        if second.is_unit(f):
            _, he = by_first[e]
            return CAT.identity2(CAT.compose1(he.one(f), comp(s, e, second.src1(f))))
        return s[("c", e, f)]

    def dep_b(u, x):
        return ("obj", first.src1(u), x) if first.is_unit(u) else ("b", u, x)

    def dep_c(e, f):
        return ("obj", e, second.src1(f)) if second.is_unit(f) else ("c", e, f)

    def candidates(slot, s):
        kind, left, right = slot
        if kind == "obj":
            return CAT.one_cells(g.obj(tags.pair(left, right)), h.obj(tags.pair(left, right)))
        if kind == "b":
            u, x = left, right
            b, c = first.one_cells[u]
            gx, hx = by_second[x]
            src, tgt = structure_ends(CAT, gx, hx, Flavor.MARKED_OPLAX, u, comp(s, b, x), comp(s, c, x))
            if u in marked:
                return [CAT.identity2(src)] if src == tgt else []
            return CAT.two_cells(src, tgt)
        e, f = left, right
        x, y = second.one_cells[f]
        ge, he = by_first[e]
        src, tgt = structure_ends(CAT, ge, he, Flavor.LAX, f, comp(s, e, x), comp(s, e, y))
        return CAT.two_cells(src, tgt)

    constraints = []
    for (v, u), vu in first.comp1.items():
        if first.is_unit(u) or first.is_unit(v):
            continue
        for x in second.objects:
            gx, hx = by_second[x]
            constraints.append(
                Constraint(
                    tuple({dep_b(v, x), dep_b(u, x), dep_b(vu, x)}),
                    lambda s, v=v, u=u, vu=vu, x=x, gx=gx, hx=hx: sb(s, vu, x)
                    == composite_structure(CAT, gx, hx, Flavor.MARKED_OPLAX, v, u, sb(s, v, x), sb(s, u, x)),
                )
            )
    for delta, (u, u2) in first.two_cells.items():
        if first.is_identity2(delta):
            continue
        b, c = first.one_cells[u]
        for x in second.objects:
            gx, hx = by_second[x]
            constraints.append(
                Constraint(
                    tuple({dep_b(u, x), dep_b(u2, x), ("obj", b, x), ("obj", c, x)}),
                    lambda s, delta=delta, u=u, u2=u2, b=b, c=c, x=x, gx=gx, hx=hx: two_dimensional_holds(
                        CAT, gx, hx, Flavor.MARKED_OPLAX, delta, sb(s, u, x), sb(s, u2, x), comp(s, b, x), comp(s, c, x)
                    ),
                )
            )
    for (f2, f), ff in second.comp1.items():
        if second.is_unit(f) or second.is_unit(f2):
            continue
        for e in first.objects:
            ge, he = by_first[e]
            constraints.append(
                Constraint(
                    tuple({dep_c(e, f2), dep_c(e, f), dep_c(e, ff)}),
                    lambda s, f2=f2, f=f, ff=ff, e=e, ge=ge, he=he: sc(s, e, ff)
                    == composite_structure(CAT, ge, he, Flavor.LAX, f2, f, sc(s, e, f2), sc(s, e, f)),
                )
            )
    for eps, (f, f2) in second.two_cells.items():
        if second.is_identity2(eps):
            continue
        x, y = second.one_cells[f]
        for e in first.objects:
            ge, he = by_first[e]
            constraints.append(
                Constraint(
                    tuple({dep_c(e, f), dep_c(e, f2), ("obj", e, x), ("obj", e, y)}),
                    lambda s, eps=eps, f=f, f2=f2, x=x, y=y, e=e, ge=ge, he=he: two_dimensional_holds(
                        CAT, ge, he, Flavor.LAX, eps, sc(s, e, f), sc(s, e, f2), comp(s, e, x), comp(s, e, y)
                    ),
                )
            )
    for u in first.one_cells:
        if first.is_unit(u):
            continue
        b2, b = first.one_cells[u]
        for f, (c, c2) in second.one_cells.items():
            if second.is_unit(f):
                continue
            constraints.append(
                Constraint(
                    tuple({dep_b(u, c), dep_b(u, c2), dep_c(b, f), dep_c(b2, f)}),
                    lambda s, u=u, f=f, b=b, b2=b2, c=c, c2=c2: compatibility_holds(
                        g, h, first, second, u, f, (sb(s, u, c), sb(s, u, c2), sc(s, b, f), sc(s, b2, f))
                    ),
                )
            )

    found = []
    for s in solve(slots, candidates, constraints, "two-variable transformations"):
        found.append(
            TwoVarTransformation(
                p,
                second,
                g,
                h,
                {tags.pair(e, x): comp(s, e, x) for e in first.objects for x in second.objects},
                {(u, x): sb(s, u, x) for u in first.one_cells for x in second.objects},
                {(e, f): sc(s, e, f) for e in first.objects for f in second.one_cells},
            )
        )
    found.sort(key=lambda t: t.tag)
    logger.debug("%d two-variable transformations %s => %s", len(found), g, h)
    return found


@dataclass(frozen=True)
class TwoVarModification:
    src: TwoVarTransformation
    tgt: TwoVarTransformation
    components: Dict[str, NaturalTransformation]

    def __hash__(self) -> int:
        return hash(self.tag)

    @cached_property
    def tag(self) -> str:
        inner = tags.components({key: t.tag for key, t in self.components.items()})
        return tags.arrow(inner, self.src.tag, self.tgt.tag)

    def after(self, other: "TwoVarModification") -> "TwoVarModification":
        if other.tgt != self.src:
            raise ShapeMismatch("modifications are not composable")
        return TwoVarModification(
            other.src, self.tgt, {key: t.after(other.components[key]) for key, t in self.components.items()}
        )


def identity_two_var_modification(alpha: TwoVarTransformation) -> TwoVarModification:
    return TwoVarModification(alpha, alpha, {key: CAT.identity2(f) for key, f in alpha.components.items()})


def check_two_var_modification(theta: TwoVarModification) -> ValidationReport:
    """A modification in each variable separately."""
    alpha, beta = theta.src, theta.tgt
    found = []
    for x in alpha.second.objects:
        mod = Modification(
            alpha.at_second(x),
            beta.at_second(x),
            {e: theta.components[tags.pair(e, x)] for e in alpha.first.objects},
        )
        found.extend(violation(v.law, *v.witness, x) for v in check_modification(mod).violations)
    for e in alpha.first.objects:
        mod = Modification(
            alpha.at_first(e),
            beta.at_first(e),
            {x: theta.components[tags.pair(e, x)] for x in alpha.second.objects},
        )
        found.extend(violation(v.law, e, *v.witness) for v in check_modification(mod).violations)
    return ValidationReport.of(found)


def enumerate_two_var_modifications(alpha: TwoVarTransformation, beta: TwoVarTransformation) -> List[TwoVarModification]:
    first, second = alpha.first, alpha.second
    by_second = {x: (alpha.at_second(x), beta.at_second(x)) for x in second.objects}
    by_first = {e: (alpha.at_first(e), beta.at_first(e)) for e in first.objects}
    slots = [tags.pair(e, x) for e in first.objects for x in second.objects]

    def candidates(key, s):
        return CAT.two_cells(alpha.components[key], beta.components[key])

    constraints = []
    for u, (b, c) in first.one_cells.items():
        if first.is_unit(u):
            continue
        for x in second.objects:
            at, bt = by_second[x]
            kb, kc = tags.pair(b, x), tags.pair(c, x)
            constraints.append(
                Constraint(
                    tuple({kb, kc}),
                    lambda s, u=u, at=at, bt=bt, kb=kb, kc=kc: modification_holds(CAT, at, bt, u, s[kb], s[kc]),
                )
            )
    for f, (x, y) in second.one_cells.items():
        if second.is_unit(f):
            continue
        for e in first.objects:
            at, bt = by_first[e]
            kx, ky = tags.pair(e, x), tags.pair(e, y)
            constraints.append(
                Constraint(
                    tuple({kx, ky}),
                    lambda s, f=f, at=at, bt=bt, kx=kx, ky=ky: modification_holds(CAT, at, bt, f, s[kx], s[ky]),
                )
            )
    found = [TwoVarModification(alpha, beta, dict(s)) for s in solve(slots, candidates, constraints, "modifications")]
    return sorted(found, key=lambda m: m.tag)


def two_var_hom_data(
    p: SplitDiscrete2Opfib, second: Finite2Category, g: CatValued2Functor, h: CatValued2Functor
) -> HomData:
    """Two-variable transformations g => h and their modifications, as a category."""
    objects = {t.tag: t for t in enumerate_two_var(p, second, g, h)}
    modifications: Dict[str, TwoVarModification] = {}
    for alpha in objects.values():
        for beta in objects.values():
            for mod in enumerate_two_var_modifications(alpha, beta):
                modifications[mod.tag] = mod
            guard("two-variable hom-category", len(modifications))
    name = f"[{g.name or 'G'},{h.name or 'H'}]_oplaxn-lax"
    return HomData(category_of(objects, modifications, identity_two_var_modification, name=name), objects, modifications)
