"""Transformations of every flavor, modifications and hom-categories.

Orientation: the structure cell of a lax transformation a: M => N at a
1-cell u: b -> c is a_u: N(u) a_b => a_c M(u); oplax flavors reverse it.
Strict and pseudo transformations are stored in the lax orientation.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional

from ..errors import FlavorMismatch, ShapeMismatch
from ..kernel import tags
from ..kernel.category import FiniteCategory
from ..kernel.search import Constraint, guard, solve
from ..kernel.twocategory import Finite2Category
from ..kernel.validation import ValidationReport, Violation, validate, violation
from .algebra import algebra_of
from .diagram import Diagram

logger = logging.getLogger(__name__)


class Flavor(str, Enum):
    STRICT = "strict"
    PSEUDO = "pseudo"
    LAX = "lax"
    OPLAX = "oplax"
    MARKED_LAX = "marked-lax"
    MARKED_OPLAX = "marked-oplax"

    @property
    def marked(self) -> bool:
        return self in (Flavor.MARKED_LAX, Flavor.MARKED_OPLAX)

    @property
    def oplax(self) -> bool:
        return self in (Flavor.OPLAX, Flavor.MARKED_OPLAX)


@dataclass(frozen=True)
class Marking:
    carrier: Finite2Category
    marked: FrozenSet[str]

    def __hash__(self) -> int:
        return hash((self.carrier, self.marked))

    @classmethod
    def trivial(cls, k: Finite2Category) -> "Marking":
        """Every 1-cell marked."""
        return cls(k, frozenset(k.one_cells))

    @classmethod
    def chaotic(cls, k: Finite2Category) -> "Marking":
        """Only the units marked."""
        return cls(k, frozenset(k.units.values()))

    def contains(self, u: str) -> bool:
        return u in self.marked


def check_marking(m: Marking) -> ValidationReport:
    found = [violation("marking-units", x) for x, u in m.carrier.units.items() if u not in m.marked]
    for (g, f), gf in m.carrier.comp1.items():
        if g in m.marked and f in m.marked and gf not in m.marked:
            found.append(violation("marking-closure", g, f))
    return ValidationReport.of(found)


@dataclass(frozen=True)
class Transformation:
    flavor: Flavor
    src: Diagram
    tgt: Diagram
    components: Dict[str, Any]
    structure: Dict[str, Any]
    marking: Optional[Marking] = None
    name: str = field(default="", compare=False)

    def __hash__(self) -> int:
        return hash(self.tag)

    @property
    def base(self) -> Finite2Category:
        return self.src.base

    @cached_property
    def algebra(self):
        return algebra_of(self.src)

    @cached_property
    def tag(self) -> str:
        a = self.algebra
        base = self.src.base
        components = {b: a.key1(x) for b, x in self.components.items()}
        structure = {u: a.key2(s) for u, s in self.structure.items() if not base.is_unit(u)}
        return tags.components(components) + "{" + tags.mapping(structure) + "}"

    def __repr__(self) -> str:
        return f"Transformation({self.flavor.value}, {self.tag})"


def structure_ends(a, m: Diagram, n: Diagram, flavor: Flavor, u: str, comp_b, comp_c):
    """Source and target 1-cells of the structure cell at u."""
    base = m.base
    top = a.compose1(n.one(u), comp_b)
    bottom = a.compose1(comp_c, m.one(u))
    if base.is_unit(u):
        return top, bottom
    return (bottom, top) if flavor.oplax else (top, bottom)


def _check_flavor(flavor: Flavor, marking: Optional[Marking], base: Finite2Category) -> None:
    if flavor.marked and marking is None:
        raise FlavorMismatch(f"flavor {flavor.value} needs a marking")
    if not flavor.marked and marking is not None:
        raise FlavorMismatch(f"flavor {flavor.value} does not take a marking")
    if marking is not None and marking.carrier != base:
        raise ShapeMismatch("marking carrier differs from the base")


def composite_structure(a, m: Diagram, n: Diagram, flavor: Flavor, v: str, u: str, s_v, s_u):
    """The structure on v . u determined by the structures on v and u."""
    if flavor.oplax:
        return a.vcompose(a.whisker_left(n.one(v), s_u), a.whisker_right(s_v, m.one(u)))
    return a.vcompose(a.whisker_right(s_v, m.one(u)), a.whisker_left(n.one(v), s_u))


def two_dimensional_holds(a, m: Diagram, n: Diagram, flavor: Flavor, delta: str, s_u, s_u2, comp_b, comp_c) -> bool:
    left_cell = a.whisker_right(n.two(delta), comp_b)
    right_cell = a.whisker_left(comp_c, m.two(delta))
    if flavor.oplax:
        return a.vcompose(left_cell, s_u) == a.vcompose(s_u2, right_cell)
    return a.vcompose(s_u2, left_cell) == a.vcompose(right_cell, s_u)


def transformation_violations(t: Transformation) -> List[Violation]:
    m, n = t.src, t.tgt
    if m.base != n.base:
        raise ShapeMismatch("source and target diagrams are not parallel")
    base = m.base
    _check_flavor(t.flavor, t.marking, base)
    a = t.algebra
    found: List[Violation] = []
    for b in base.objects:
        x = t.components.get(b)
        if x is None or a.src1(x) != m.obj(b) or a.tgt1(x) != n.obj(b):
            found.append(violation("component-typing", b))
    if found:
        return found
    for u, (b, c) in base.one_cells.items():
        s = t.structure.get(u)
        ends = structure_ends(a, m, n, t.flavor, u, t.components[b], t.components[c])
        if s is None or (a.src2(s), a.tgt2(s)) != ends:
            found.append(violation("structure-typing", u))
    if found:
        return found

    for b, u in base.units.items():
        if not a.is_identity2(t.structure[u]):
            found.append(violation("unit", u))
    for (v, u), vu in base.comp1.items():
        if base.is_unit(u) or base.is_unit(v):
            continue
        expected = composite_structure(a, m, n, t.flavor, v, u, t.structure[v], t.structure[u])
        if t.structure[vu] != expected:
            found.append(violation("composition", v, u))
    for delta, (u, u2) in base.two_cells.items():
        if base.is_identity2(delta):
            continue
        b, c = base.one_cells[u]
        if not two_dimensional_holds(
            a, m, n, t.flavor, delta, t.structure[u], t.structure[u2], t.components[b], t.components[c]
        ):
            found.append(violation("two-dimensional", delta))
    for u, s in t.structure.items():
        if t.flavor is Flavor.STRICT and not a.is_identity2(s):
            found.append(violation("structure-identity", u))
        if t.flavor is Flavor.PSEUDO and a.inverse2(s) is None:
            found.append(violation("pseudo-invertible", u))
        if t.flavor.marked and t.marking.contains(u) and not a.is_identity2(s):
            found.append(violation("marked-identity", u))
    return found


def check_transformation(t: Transformation) -> ValidationReport:
    return ValidationReport.of(transformation_violations(t))


@validate.register
def _(t: Transformation) -> ValidationReport:
    return check_transformation(t)


def identity_transformation_of(d: Diagram) -> Transformation:
    """The strict identity d => d."""
    a = algebra_of(d)
    base = d.base
    return Transformation(
        Flavor.STRICT,
        d,
        d,
        {b: a.identity1(d.obj(b)) for b in base.objects},
        {u: a.identity2(d.one(u)) for u in base.one_cells},
    )


def slot_order(base: Finite2Category) -> List[Hashable]:
    """Each object, followed by the non-unit 1-cells whose endpoints are already placed."""
    slots: List[Hashable] = []
    placed = set()
    pending = [u for u in base.one_cells if not base.is_unit(u)]
    for b in base.objects:
        slots.append(("obj", b))
        placed.add(b)
        ready = [u for u in pending if base.src1(u) in placed and base.tgt1(u) in placed]
        slots.extend(("str", u) for u in ready)
        pending = [u for u in pending if u not in ready]
    return slots


def enumerate_transformations(
    f: Diagram,
    g: Diagram,
    flavor: Flavor,
    marking: Optional[Marking] = None,
) -> List[Transformation]:
    """All transformations f => g of the flavor, sorted by tag."""
    flavor = Flavor(flavor)
    if f.base != g.base:
        raise ShapeMismatch("diagrams are not parallel")
    base = f.base
    _check_flavor(flavor, marking, base)
    a = algebra_of(f)

    def structure(u, s):
        if base.is_unit(u):
            return a.identity2(a.compose1(g.one(u), s[("obj", base.src1(u))]))
        return s[("str", u)]

    def dependency(u):
        return ("obj", base.src1(u)) if base.is_unit(u) else ("str", u)

    def candidates(slot, s):
        kind, name = slot
        if kind == "obj":
            return a.one_cells(f.obj(name), g.obj(name))
        b, c = base.one_cells[name]
        src, tgt = structure_ends(a, f, g, flavor, name, s[("obj", b)], s[("obj", c)])
        forced = flavor is Flavor.STRICT or (flavor.marked and marking.contains(name))
        if forced:
            return [a.identity2(src)] if src == tgt else []
        found = a.two_cells(src, tgt)
        if flavor is Flavor.PSEUDO:
            found = [x for x in found if a.inverse2(x) is not None]
        return found

    constraints = []
    for (v, u), vu in base.comp1.items():
        if base.is_unit(u) or base.is_unit(v):
            continue
        constraints.append(
            Constraint(
                tuple({dependency(v), dependency(u), dependency(vu)}),
                lambda s, v=v, u=u, vu=vu: structure(vu, s)
                == composite_structure(a, f, g, flavor, v, u, structure(v, s), structure(u, s)),
            )
        )
    for delta, (u, u2) in base.two_cells.items():
        if base.is_identity2(delta):
            continue
        b, c = base.one_cells[u]
        constraints.append(
            Constraint(
                tuple({dependency(u), dependency(u2), ("obj", b), ("obj", c)}),
                lambda s, delta=delta, u=u, u2=u2, b=b, c=c: two_dimensional_holds(
                    a, f, g, flavor, delta, structure(u, s), structure(u2, s), s[("obj", b)], s[("obj", c)]
                ),
            )
        )

    found = []
    for s in solve(slot_order(base), candidates, constraints, f"{flavor.value} transformations"):
        found.append(
            Transformation(
                flavor,
                f,
                g,
                {b: s[("obj", b)] for b in base.objects},
                {u: structure(u, s) for u in base.one_cells},
                marking,
            )
        )
    found.sort(key=lambda t: t.tag)
    logger.debug("%d %s transformations %s => %s", len(found), flavor.value, f, g)
    return found


@dataclass(frozen=True)
class Modification:
    src: Transformation
    tgt: Transformation
    components: Dict[str, Any]

    def __hash__(self) -> int:
        return hash(self.tag)

    @cached_property
    def tag(self) -> str:
        a = self.src.algebra
        inner = tags.components({b: a.key2(x) for b, x in self.components.items()})
        return tags.arrow(inner, self.src.tag, self.tgt.tag)

    def after(self, other: "Modification") -> "Modification":
        """Vertical composite self . other."""
        if other.tgt != self.src:
            raise ShapeMismatch("modifications are not composable")
        a = self.src.algebra
        return Modification(
            other.src,
            self.tgt,
            {b: a.vcompose(self.components[b], other.components[b]) for b in self.components},
        )


def identity_modification(t: Transformation) -> Modification:
    a = t.algebra
    return Modification(t, t, {b: a.identity2(x) for b, x in t.components.items()})


def modification_holds(a, alpha: Transformation, beta: Transformation, u: str, gamma_b, gamma_c) -> bool:
    m, n = alpha.src, alpha.tgt
    post = a.whisker_left(n.one(u), gamma_b)
    pre = a.whisker_right(gamma_c, m.one(u))
    if alpha.flavor.oplax:
        return a.vcompose(post, alpha.structure[u]) == a.vcompose(beta.structure[u], pre)
    return a.vcompose(beta.structure[u], post) == a.vcompose(pre, alpha.structure[u])


def check_modification(mod: Modification) -> ValidationReport:
    alpha, beta = mod.src, mod.tgt
    if alpha.src != beta.src or alpha.tgt != beta.tgt:
        raise ShapeMismatch("modification between non-parallel transformations")
    if alpha.flavor.oplax != beta.flavor.oplax:
        raise FlavorMismatch("modification between transformations of opposite orientation")
    a = alpha.algebra
    base = alpha.base
    found = []
    for b in base.objects:
        x = mod.components.get(b)
        if x is None or (a.src2(x), a.tgt2(x)) != (alpha.components[b], beta.components[b]):
            found.append(violation("component-typing", b))
    if not found:
        for u, (b, c) in base.one_cells.items():
            if not modification_holds(a, alpha, beta, u, mod.components[b], mod.components[c]):
                found.append(violation("modification", u))
    return ValidationReport.of(found)


def enumerate_modifications(alpha: Transformation, beta: Transformation) -> List[Modification]:
    a = alpha.algebra
    base = alpha.base

    def candidates(b, s):
        return a.two_cells(alpha.components[b], beta.components[b])

    constraints = [
        Constraint(
            tuple({b, c}),
            lambda s, u=u, b=b, c=c: modification_holds(a, alpha, beta, u, s[b], s[c]),
        )
        for u, (b, c) in base.one_cells.items()
        if not base.is_unit(u)
    ]
    found = [Modification(alpha, beta, dict(s)) for s in solve(list(base.objects), candidates, constraints, "modifications")]
    return sorted(found, key=lambda mod: mod.tag)


@dataclass(frozen=True)
class HomData:
    category: FiniteCategory
    transformations: Dict[str, Transformation]
    modifications: Dict[str, Modification]


def category_of(
    objects: Dict[str, Any],
    arrows: Dict[str, Any],
    identity: Callable[[Any], Any],
    name: str = "",
) -> FiniteCategory:
    """Tagged objects and arrows with .src, .tgt and .after assembled into a category."""
    composition = {}
    for second_tag, second in arrows.items():
        for first_tag, first in arrows.items():
            if first.tgt.tag == second.src.tag:
                composition[(second_tag, first_tag)] = second.after(first).tag
    return FiniteCategory.build(
        objects,
        {tag: (arrow.src.tag, arrow.tgt.tag) for tag, arrow in arrows.items()},
        {tag: identity(x).tag for tag, x in objects.items()},
        composition,
        name=name,
    )


def hom_data_of(transformations: Iterable[Transformation], name: str = "") -> HomData:
    """The category with the given transformations as objects and all modifications between them."""
    objects = {t.tag: t for t in transformations}
    modifications: Dict[str, Modification] = {}
    for alpha in objects.values():
        for beta in objects.values():
            for mod in enumerate_modifications(alpha, beta):
                modifications[mod.tag] = mod
            guard(f"hom-category {name}", len(modifications))
    category = category_of(objects, modifications, identity_modification, name=name)
    return HomData(category, objects, modifications)


def hom_data(f: Diagram, g: Diagram, flavor: Flavor, marking: Optional[Marking] = None) -> HomData:
    flavor = Flavor(flavor)
    name = f"[{f.name or 'F'},{g.name or 'G'}]_{flavor.value}"
    return hom_data_of(enumerate_transformations(f, g, flavor, marking), name=name)


def hom_category(f: Diagram, g: Diagram, flavor: Flavor, marking: Optional[Marking] = None) -> FiniteCategory:
    return hom_data(f, g, flavor, marking).category


def sigma_hom_data(f: Diagram, g: Diagram, marking: Marking) -> HomData:
    """Lax transformations whose structure is invertible on marked 1-cells."""
    if marking.carrier != f.base:
        raise ShapeMismatch("marking carrier differs from the base")
    kept = [
        t
        for t in enumerate_transformations(f, g, Flavor.LAX)
        if all(t.algebra.inverse2(t.structure[u]) is not None for u in marking.marked)
    ]
    return hom_data_of(kept, name=f"[{f.name or 'F'},{g.name or 'G'}]_sigma")
