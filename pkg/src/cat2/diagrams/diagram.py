"""Cat-valued strict 2-functors and the diagrams built from them."""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Union

from ..errors import ShapeMismatch
from ..kernel import tags
from ..kernel.category import (
    FiniteCategory,
    Functor,
    NaturalTransformation,
    identity_functor,
    identity_transformation,
)
from ..kernel.twocategory import Duality, Finite2Category, TwoFunctor, dualize
from ..kernel.validation import (
    ValidationReport,
    Violation,
    category_violations,
    functor_violations,
    naturality_violations,
    validate,
    violation,
)
from .algebra import CAT

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CatValued2Functor:
    base: Finite2Category
    on_obj: Dict[str, FiniteCategory]
    on_1: Dict[str, Functor]
    on_2: Dict[str, NaturalTransformation]
    name: str = field(default="", compare=False)

    def __hash__(self) -> int:
        return hash((self.base, self.tag))

    @cached_property
    def tag(self) -> str:
        objects = {x: str(len(c.morphisms)) + ":" + ",".join(c.objects) for x, c in self.on_obj.items()}
        ones = {u: f.tag for u, f in self.on_1.items() if not self.base.is_unit(u)}
        twos = {g: t.tag for g, t in self.on_2.items() if not self.base.is_identity2(g)}
        return "{" + tags.mapping(objects) + "|" + tags.mapping(ones) + "|" + tags.mapping(twos) + "}"

    def obj(self, x: str) -> FiniteCategory:
        return self.on_obj[x]

    def one(self, u: str) -> Functor:
        return self.on_1[u]

    def two(self, gamma: str) -> NaturalTransformation:
        return self.on_2[gamma]

    def __repr__(self) -> str:
        return f"CatValued2Functor({self.name or '?'} over {self.base.name or '?'})"


Diagram = Union[CatValued2Functor, TwoFunctor]


def constant_diagram(base: Finite2Category, d: FiniteCategory, name: str = "") -> CatValued2Functor:
    one = identity_functor(d)
    return CatValued2Functor(
        base,
        {x: d for x in base.objects},
        {u: one for u in base.one_cells},
        {g: identity_transformation(one) for g in base.two_cells},
        name=name or f"Δ{d.name}",
    )


def representable(base: Finite2Category, a: str) -> CatValued2Functor:
    """base(a, -): x -> hom(a, x), acting by postcomposition."""
    on_1 = {}
    for u, (x, y) in base.one_cells.items():
        source, target = base.hom[(a, x)], base.hom[(a, y)]
        on_1[u] = Functor(
            source,
            target,
            {f: base.compose1(u, f) for f in source.objects},
            {gamma: base.whisker_left(u, gamma) for gamma in source.morphisms},
        )
    on_2 = {}
    for gamma, (u, v) in base.two_cells.items():
        x = base.src1(u)
        on_2[gamma] = NaturalTransformation(
            on_1[u],
            on_1[v],
            {f: base.whisker_right(gamma, f) for f in base.hom[(a, x)].objects},
        )
    return CatValued2Functor(
        base,
        {x: base.hom[(a, x)] for x in base.objects},
        on_1,
        on_2,
        name=f"{base.name}({a},-)",
    )


def hom_weight(k: TwoFunctor, a: str) -> CatValued2Functor:
    """A(K(-), a) as a diagram over the op-dual of K's source."""
    src, tgt = k.src, k.tgt
    base = dualize(src, Duality.OP)
    on_1 = {}
    for u, (x, y) in src.one_cells.items():
        # u: x -> y in src acts as precomposition A(Ky, a) -> A(Kx, a)
        source, target = tgt.hom[(k.obj(y), a)], tgt.hom[(k.obj(x), a)]
        ku = k.one(u)
        on_1[u] = Functor(
            source,
            target,
            {w: tgt.compose1(w, ku) for w in source.objects},
            {theta: tgt.whisker_right(theta, ku) for theta in source.morphisms},
        )
    on_2 = {}
    for gamma, (u, v) in src.two_cells.items():
        y = src.tgt1(u)
        kg = k.two(gamma)
        on_2[gamma] = NaturalTransformation(
            on_1[u],
            on_1[v],
            {w: tgt.whisker_left(w, kg) for w in tgt.hom[(k.obj(y), a)].objects},
        )
    return CatValued2Functor(
        base,
        {x: tgt.hom[(k.obj(x), a)] for x in src.objects},
        on_1,
        on_2,
        name=f"{tgt.name}(K-,{a})",
    )


def fiber_op(f: CatValued2Functor) -> CatValued2Functor:
    """Fiberwise opposite over the co-dual base."""
    return CatValued2Functor(
        dualize(f.base, Duality.CO),
        {x: c.op() for x, c in f.on_obj.items()},
        {u: g.opposite() for u, g in f.on_1.items()},
        {gamma: t.opposite() for gamma, t in f.on_2.items()},
        name=f"{f.name}^fop" if f.name else "",
    )


def precompose(d: Diagram, h: TwoFunctor) -> Diagram:
    """d . h for a diagram d over h's target."""
    if d.base != h.tgt:
        raise ShapeMismatch("diagram base does not match the 2-functor's target")
    if isinstance(d, TwoFunctor):
        return d.after(h)
    return CatValued2Functor(
        h.src,
        {x: d.obj(h.obj(x)) for x in h.src.objects},
        {u: d.one(h.one(u)) for u in h.src.one_cells},
        {gamma: d.two(h.two(gamma)) for gamma in h.src.two_cells},
    )


def diagram_violations(f: CatValued2Functor) -> List[Violation]:
    base = f.base
    found: List[Violation] = []
    for x in base.objects:
        if x not in f.on_obj:
            found.append(violation("diagram-totality", x))
    for u in base.one_cells:
        if u not in f.on_1:
            found.append(violation("diagram-totality", u))
    for gamma in base.two_cells:
        if gamma not in f.on_2:
            found.append(violation("diagram-totality", gamma))
    if found:
        return found
    for x, c in sorted(f.on_obj.items()):
        found.extend(category_violations(c))
    for u, (a, b) in base.one_cells.items():
        g = f.on_1[u]
        if g.src != f.on_obj[a] or g.tgt != f.on_obj[b]:
            found.append(violation("diagram-typing", u))
        else:
            found.extend(functor_violations(g))
    for gamma, (u, v) in base.two_cells.items():
        t = f.on_2[gamma]
        if t.src != f.on_1[u] or t.tgt != f.on_1[v]:
            found.append(violation("diagram-typing", gamma))
        else:
            found.extend(naturality_violations(t))
    if found:
        return found
    for x, u in base.units.items():
        if f.on_1[u] != identity_functor(f.on_obj[x]):
            found.append(violation("diagram-unit", x))
    for u in base.one_cells:
        if f.on_2[base.identity2(u)] != identity_transformation(f.on_1[u]):
            found.append(violation("diagram-identity2", u))
    for (g, h), gh in base.comp1.items():
        if f.on_1[g].after(f.on_1[h]) != f.on_1[gh]:
            found.append(violation("diagram-composition1", g, h))
    for (c, d), cd in base.comp2.items():
        if CAT.hcompose(f.on_2[c], f.on_2[d]) != f.on_2[cd]:
            found.append(violation("diagram-composition2", c, d))
    for hom in base.hom.values():
        for (c, d), cd in hom.composition.items():
            if f.on_2[c].after(f.on_2[d]) != f.on_2[cd]:
                found.append(violation("diagram-vertical", c, d))
    return found


@validate.register
def _(f: CatValued2Functor) -> ValidationReport:
    return ValidationReport.of(diagram_violations(f))
