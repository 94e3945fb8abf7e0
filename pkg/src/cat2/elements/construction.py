"""The 2-category of elements of a Cat-valued 2-functor.

For F over B, an object (B, X) is tagged "B|X"; a 1-cell (u, a): (B, X) ->
(C, X') with a: F(u)X -> X' is tagged "u|X|a"; a 2-cell d: (u, a) => (v, b)
with a = b . F(d)_X is tagged "d|X|b". The projection reads the first
component.

The covariant construction, for W over D, lives over the op-dual of D: a
1-cell g in D(C, B) gives (g, b): (B, X') -> (C, X'') with b: X' -> W(g)X'',
tagged "g|X''|b", and a 2-cell d: (g, b) => (g', b') with b' = W(d)_X'' . b
is tagged by its source, "d|X''|b".
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Tuple

from ..diagrams.diagram import CatValued2Functor
from ..diagrams.transformation import Marking
from ..kernel import tags
from ..kernel.twocategory import Duality, Finite2Category, TwoFunctor, assemble, dualize
from .opfibration import SplitDiscrete2Opfib

logger = logging.getLogger(__name__)

Triple = Tuple[str, str, str]


@dataclass(frozen=True)
class ElementsResult:
    diagram: CatValued2Functor
    total: Finite2Category
    projection: TwoFunctor
    marking: Marking
    opfib: SplitDiscrete2Opfib
    objects: Dict[str, Tuple[str, str]] = field(compare=False)
    one_cells: Dict[str, Triple] = field(compare=False)
    two_cells: Dict[str, Triple] = field(compare=False)

    def __hash__(self) -> int:
        return hash(self.total)

    @property
    def base(self) -> Finite2Category:
        return self.projection.tgt

    def object_tag(self, b: str, x: str) -> str:
        return tags.join(b, x)

    def decode_object(self, e: str) -> Tuple[str, str]:
        return self.objects[e]

    def decode_one(self, m: str) -> Triple:
        return self.one_cells[m]

    def decode_two(self, theta: str) -> Triple:
        return self.two_cells[theta]


@lru_cache(maxsize=128)
def elements_op(f: CatValued2Functor) -> ElementsResult:
    base = f.base
    objects = {tags.join(b, x): (b, x) for b in base.objects for x in f.obj(b).objects}

    one_cells: Dict[str, Tuple[str, str]] = {}
    ones: Dict[str, Triple] = {}
    lookup: Dict[Triple, str] = {}
    for u, (b, c) in base.one_cells.items():
        fu, fc = f.one(u), f.obj(c)
        for x in f.obj(b).objects:
            for alpha in fc.out_of(fu.obj(x)):
                tag = tags.join(u, x, alpha)
                one_cells[tag] = (tags.join(b, x), tags.join(c, fc.tgt(alpha)))
                ones[tag] = (u, x, alpha)
                lookup[(u, x, alpha)] = tag

    two_cells: Dict[str, Tuple[str, str]] = {}
    twos: Dict[str, Triple] = {}
    for delta, (u, v) in base.two_cells.items():
        c = base.tgt1(u)
        fc, fd = f.obj(c), f.two(delta)
        for x in f.obj(base.src1(u)).objects:
            for beta in fc.out_of(f.one(v).obj(x)):
                alpha = fc.compose(beta, fd.components[x])
                tag = tags.join(delta, x, beta)
                two_cells[tag] = (lookup[(u, x, alpha)], lookup[(v, x, beta)])
                twos[tag] = (delta, x, beta)

    identities2 = {m: tags.join(base.identity2(u), x, alpha) for m, (u, x, alpha) in ones.items()}
    vertical = {}
    for second, (eps, x, gamma) in twos.items():
        for first, (delta, y, beta) in twos.items():
            if y == x and two_cells[first][1] == two_cells[second][0]:
                vertical[(second, first)] = tags.join(base.vcompose(eps, delta), x, gamma)
    units = {e: tags.join(base.units[b], x, f.obj(b).identity(x)) for e, (b, x) in objects.items()}

    comp1 = {}
    for second, (v, y, beta) in ones.items():
        for first, (u, x, alpha) in ones.items():
            if one_cells[first][1] != one_cells[second][0]:
                continue
            c = base.tgt1(v)
            composite = f.obj(c).compose(beta, f.one(v).mor(alpha))
            comp1[(second, first)] = tags.join(base.compose1(v, u), x, composite)
    comp2 = {}
    for second, (eps, y, beta2) in twos.items():
        v2 = base.tgt2(eps)
        for first, (delta, x, alpha2) in twos.items():
            if one_cells[two_cells[first][0]][1] != one_cells[two_cells[second][0]][0]:
                continue
            d = base.tgt1(v2)
            composite = f.obj(d).compose(beta2, f.one(v2).mor(alpha2))
            comp2[(second, first)] = tags.join(base.compose2(eps, delta), x, composite)

    total = assemble(
        objects, one_cells, two_cells, identities2, vertical, units, comp1, comp2, name=f"∫{f.name}" if f.name else ""
    )
    projection = TwoFunctor(
        total,
        base,
        {e: b for e, (b, _) in objects.items()},
        {m: u for m, (u, _, _) in ones.items()},
        {t: d for t, (d, _, _) in twos.items()},
    )
    cleavage = {}
    for u, (b, c) in base.one_cells.items():
        fu, fc = f.one(u), f.obj(c)
        for x in f.obj(b).objects:
            cleavage[(tags.join(b, x), u)] = lookup[(u, x, fc.identity(fu.obj(x)))]
    marking = Marking(total, frozenset(cleavage.values()))
    logger.debug("elements of %s: %r", f, total)
    return ElementsResult(
        f, total, projection, marking, SplitDiscrete2Opfib(projection, cleavage), objects, ones, twos
    )


@lru_cache(maxsize=128)
def elements_cov(w: CatValued2Functor) -> ElementsResult:
    d_base = w.base
    base = dualize(d_base, Duality.OP)
    objects = {tags.join(b, x): (b, x) for b in d_base.objects for x in w.obj(b).objects}

    one_cells: Dict[str, Tuple[str, str]] = {}
    ones: Dict[str, Triple] = {}
    lookup: Dict[Triple, str] = {}
    for g, (c, b) in d_base.one_cells.items():
        wg, wb = w.one(g), w.obj(b)
        for x2 in w.obj(c).objects:
            for beta in wb.into(wg.obj(x2)):
                tag = tags.join(g, x2, beta)
                one_cells[tag] = (tags.join(b, wb.src(beta)), tags.join(c, x2))
                ones[tag] = (g, x2, beta)
                lookup[(g, x2, beta)] = tag

    two_cells: Dict[str, Tuple[str, str]] = {}
    twos: Dict[str, Triple] = {}
    for delta, (g, g2) in d_base.two_cells.items():
        b = d_base.tgt1(g)
        wb, wd = w.obj(b), w.two(delta)
        for x2 in w.obj(d_base.src1(g)).objects:
            for beta in wb.into(w.one(g).obj(x2)):
                beta2 = wb.compose(wd.components[x2], beta)
                tag = tags.join(delta, x2, beta)
                two_cells[tag] = (lookup[(g, x2, beta)], lookup[(g2, x2, beta2)])
                twos[tag] = (delta, x2, beta)

    identities2 = {m: tags.join(d_base.identity2(g), x2, beta) for m, (g, x2, beta) in ones.items()}
    vertical = {}
    for second, (eps, x2, beta) in twos.items():
        for first, (delta, y2, alpha) in twos.items():
            if y2 == x2 and two_cells[first][1] == two_cells[second][0]:
                vertical[(second, first)] = tags.join(d_base.vcompose(eps, delta), x2, alpha)
    units = {e: tags.join(d_base.units[b], x, w.obj(b).identity(x)) for e, (b, x) in objects.items()}

    comp1 = {}
    for second, (h, x3, gamma) in ones.items():
        for first, (g, x2, beta) in ones.items():
            if one_cells[first][1] != one_cells[second][0]:
                continue
            b = d_base.tgt1(g)
            composite = w.obj(b).compose(w.one(g).mor(gamma), beta)
            comp1[(second, first)] = tags.join(d_base.compose1(g, h), x3, composite)
    comp2 = {}
    for second, (eps, x3, gamma) in twos.items():
        h = d_base.src2(eps)
        for first, (delta, x2, beta) in twos.items():
            g = d_base.src2(delta)
            if one_cells[lookup[(g, x2, beta)]][1] != one_cells[lookup[(h, x3, gamma)]][0]:
                continue
            b = d_base.tgt1(g)
            composite = w.obj(b).compose(w.one(g).mor(gamma), beta)
            comp2[(second, first)] = tags.join(d_base.compose2(delta, eps), x3, composite)

    total = assemble(
        objects, one_cells, two_cells, identities2, vertical, units, comp1, comp2, name=f"∫{w.name}" if w.name else ""
    )
    projection = TwoFunctor(
        total,
        base,
        {e: b for e, (b, _) in objects.items()},
        {m: g for m, (g, _, _) in ones.items()},
        {t: d for t, (d, _, _) in twos.items()},
    )
    # cartesian lifts, keyed by target object and base 1-cell
    cleavage = {}
    for g, (c, b) in d_base.one_cells.items():
        wg = w.one(g)
        for x2 in w.obj(c).objects:
            cleavage[(tags.join(c, x2), g)] = lookup[(g, x2, w.obj(b).identity(wg.obj(x2)))]
    marking = Marking(total, frozenset(cleavage.values()))
    return ElementsResult(
        w,
        total,
        projection,
        marking,
        SplitDiscrete2Opfib(projection, cleavage, contravariant=True),
        objects,
        ones,
        twos,
    )
