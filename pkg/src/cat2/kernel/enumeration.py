"""Exhaustive enumeration of functors, natural transformations and 2-functors."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Hashable, Iterator, List, Optional, Tuple

from . import tags
from .category import FiniteCategory, Functor, NaturalTransformation
from .search import Constraint, guard, solve
from .twocategory import Finite2Category, TwoFunctor

logger = logging.getLogger(__name__)


def enumerate_functors(c: FiniteCategory, d: FiniteCategory) -> Iterator[Functor]:
    moving = [m for m in c.morphisms if not c.is_identity(m)]
    slots: List[Hashable] = [("obj", x) for x in c.objects] + [("mor", m) for m in moving]

    def candidates(slot, assignment):
        kind, name = slot
        if kind == "obj":
            return d.objects
        a, b = c.morphisms[name]
        return d.hom(assignment[("obj", a)], assignment[("obj", b)])

    def image(m, assignment):
        if c.is_identity(m):
            return d.identity(assignment[("obj", c.src(m))])
        return assignment[("mor", m)]

    def dependency(m):
        return ("obj", c.src(m)) if c.is_identity(m) else ("mor", m)

    constraints = []
    for (g, f), gf in c.composition.items():
        if c.is_identity(g) or c.is_identity(f):
            continue
        constraints.append(
            Constraint(
                tuple({dependency(g), dependency(f), dependency(gf)}),
                lambda s, g=g, f=f, gf=gf: image(gf, s) == d.composition.get((image(g, s), image(f, s))),
            )
        )

    for s in solve(slots, candidates, constraints, f"functors {c.name} -> {d.name}"):
        yield Functor(
            c,
            d,
            {x: s[("obj", x)] for x in c.objects},
            {m: image(m, s) for m in c.morphisms},
        )


def enumerate_natural_transformations(f: Functor, g: Functor) -> Iterator[NaturalTransformation]:
    c, d = f.src, f.tgt
    slots = list(c.objects)

    def candidates(x, assignment):
        return d.hom(f.obj(x), g.obj(x))

    constraints = [
        Constraint(
            tuple({a, b}),
            lambda s, m=m, a=a, b=b: d.compose(g.mor(m), s[a]) == d.compose(s[b], f.mor(m)),
        )
        for m, (a, b) in c.morphisms.items()
        if not c.is_identity(m)
    ]
    for s in solve(slots, candidates, constraints, "natural transformations"):
        yield NaturalTransformation(f, g, dict(s))


@dataclass(frozen=True)
class FunctorCategory:
    category: FiniteCategory
    functors: Dict[str, Functor]
    transformations: Dict[str, NaturalTransformation]

    def transformation_tag(self, t: NaturalTransformation) -> str:
        return tags.arrow(t.tag, t.src.tag, t.tgt.tag)


@lru_cache(maxsize=256)
def functor_category(c: FiniteCategory, d: FiniteCategory) -> FunctorCategory:
    """[c, d] materialized; objects are functor tags, morphisms 'nat:src=>tgt'."""
    functors = {f.tag: f for f in enumerate_functors(c, d)}
    transformations: Dict[str, NaturalTransformation] = {}
    for f in functors.values():
        for g in functors.values():
            for t in enumerate_natural_transformations(f, g):
                transformations[tags.arrow(t.tag, f.tag, g.tag)] = t
                guard(f"functor category [{c.name}, {d.name}]", len(transformations))
    composition = {}
    for second_tag, second in transformations.items():
        for first_tag, first in transformations.items():
            if first.tgt.tag == second.src.tag:
                composite = second.after(first)
                composition[(second_tag, first_tag)] = tags.arrow(composite.tag, first.src.tag, second.tgt.tag)
    identities = {
        tag: tags.arrow(tags.components({x: d.identity(y) for x, y in f.on_obj.items()}), tag, tag)
        for tag, f in functors.items()
    }
    category = FiniteCategory.build(
        functors,
        {tag: (t.src.tag, t.tgt.tag) for tag, t in transformations.items()},
        identities,
        composition,
        name=f"[{c.name},{d.name}]",
    )
    logger.debug("%r", category)
    return FunctorCategory(category, functors, transformations)


def enumerate_two_functors(
    src: Finite2Category,
    tgt: Finite2Category,
    over: Optional[Tuple[TwoFunctor, TwoFunctor]] = None,
) -> Iterator[TwoFunctor]:
    """Every strict 2-functor src -> tgt; with over=(p, q) only those H with q . H = p."""
    moving1 = [u for u in src.one_cells if not src.is_unit(u)]
    moving2 = [g for g in src.two_cells if not src.is_identity2(g)]
    slots: List[Hashable] = (
        [("obj", x) for x in src.objects] + [("1", u) for u in moving1] + [("2", g) for g in moving2]
    )

    def one(u, s):
        if src.is_unit(u):
            return tgt.units[s[("obj", src.src1(u))]]
        return s[("1", u)]

    def two(gamma, s):
        if src.is_identity2(gamma):
            return tgt.identity2(one(src.src2(gamma), s))
        return s[("2", gamma)]

    def dep1(u):
        return ("obj", src.src1(u)) if src.is_unit(u) else ("1", u)

    def dep2(gamma):
        return dep1(src.src2(gamma)) if src.is_identity2(gamma) else ("2", gamma)

    def candidates(slot, s):
        kind, name = slot
        if kind == "obj":
            found = tgt.objects
            if over is not None:
                p, q = over
                found = [y for y in found if q.obj(y) == p.obj(name)]
            return found
        if kind == "1":
            a, b = src.one_cells[name]
            found = tgt.hom[(s[("obj", a)], s[("obj", b)])].objects
            if over is not None:
                p, q = over
                found = [v for v in found if q.one(v) == p.one(name)]
            return found
        u, v = src.two_cells[name]
        a, b = src.one_cells[u]
        found = tgt.hom[(s[("obj", a)], s[("obj", b)])].hom(one(u, s), one(v, s))
        if over is not None:
            p, q = over
            found = [d for d in found if q.two(d) == p.two(name)]
        return found

    constraints = []
    for (g, f), gf in src.comp1.items():
        constraints.append(
            Constraint(
                tuple({dep1(g), dep1(f), dep1(gf)}),
                lambda s, g=g, f=f, gf=gf: one(gf, s) == tgt.comp1.get((one(g, s), one(f, s))),
            )
        )
    for (c, d), cd in src.comp2.items():
        if src.is_identity2(c) and src.is_identity2(d):
            continue
        constraints.append(
            Constraint(
                tuple({dep2(c), dep2(d), dep2(cd)}),
                lambda s, c=c, d=d, cd=cd: two(cd, s) == tgt.comp2.get((two(c, s), two(d, s))),
            )
        )
    for hom in src.hom.values():
        for (c, d), cd in hom.composition.items():
            if hom.is_identity(c) or hom.is_identity(d):
                continue
            constraints.append(
                Constraint(
                    tuple({dep2(c), dep2(d), dep2(cd)}),
                    lambda s, c=c, d=d, cd=cd: two(cd, s) == tgt.vcompose(two(c, s), two(d, s)),
                )
            )

    for s in solve(slots, candidates, constraints, f"2-functors {src.name} -> {tgt.name}"):
        yield TwoFunctor(
            src,
            tgt,
            {x: s[("obj", x)] for x in src.objects},
            {u: one(u, s) for u in src.one_cells},
            {g: two(g, s) for g in src.two_cells},
        )
