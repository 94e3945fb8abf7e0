"""Lax and oplax commas with their projections and the filling transformation.

For L over A and R over B with a common target, an object (a, b, h) has
h: L(a) -> R(b) and is tagged "a|b|h". A 1-cell (u, v, phi) has
phi: R(v) h => h' L(u) and is tagged "u|v|h|phi|h'". A 2-cell (alpha, beta)
between (u, v, phi) and (u', v', phi') satisfies
(h' * L(alpha)) . phi = phi' . (R(beta) * h) and is tagged
"alpha|beta|h|phi|phi'|h'".
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Tuple

from ..diagrams.algebra import algebra_of
from ..diagrams.diagram import CatValued2Functor, Diagram, constant_diagram, precompose
from ..diagrams.transformation import Flavor, Transformation
from ..errors import ShapeMismatch
from ..kernel import tags
from ..kernel.twocategory import (
    Duality,
    Finite2Category,
    TwoFunctor,
    assemble,
    dualize,
    terminal_2category,
    terminal_category,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommaResult:
    total: Finite2Category
    d0: TwoFunctor
    d1: TwoFunctor
    lam: Transformation
    left: Diagram = field(compare=False)
    right: Diagram = field(compare=False)
    objects: Dict[str, Tuple[str, str, Any]] = field(compare=False, default_factory=dict)
    one_cells: Dict[str, Tuple[str, str, Any, Any, Any]] = field(compare=False, default_factory=dict)
    two_cells: Dict[str, Tuple[str, str, str, str]] = field(compare=False, default_factory=dict)

    def __hash__(self) -> int:
        return hash(self.total)

    def decode_object(self, e: str) -> Tuple[str, str, Any]:
        return self.objects[e]

    def decode_one(self, m: str) -> Tuple[str, str, Any, Any, Any]:
        return self.one_cells[m]

    def decode_two(self, theta: str) -> Tuple[str, str, str, str]:
        return self.two_cells[theta]


def _base_of(d: Diagram) -> Finite2Category:
    return d.src if isinstance(d, TwoFunctor) else d.base


def _comma(
    left: Diagram,
    right: Diagram,
    key1: Callable[[Any], str],
    key2: Callable[[Any], str],
    name: str,
) -> CommaResult:
    a_base, b_base = _base_of(left), _base_of(right)
    alg = algebra_of(left)
    if isinstance(left, TwoFunctor) != isinstance(right, TwoFunctor) or (
        isinstance(left, TwoFunctor) and left.tgt != right.tgt
    ):
        raise ShapeMismatch("the two sides of a comma must share their target")

    def one_tag(u, v, h, phi, h2) -> str:
        return tags.join(u, v, key1(h), key2(phi), key1(h2))

    objects: Dict[str, Tuple[str, str, Any]] = {}
    for a in a_base.objects:
        for b in b_base.objects:
            for h in alg.one_cells(left.obj(a), right.obj(b)):
                objects[tags.join(a, b, key1(h))] = (a, b, h)

    one_cells: Dict[str, Tuple[str, str]] = {}
    ones: Dict[str, Tuple[str, str, Any, Any, Any]] = {}
    for x, (a, b, h) in objects.items():
        for y, (a2, b2, h2) in objects.items():
            for u in a_base.hom[(a, a2)].objects:
                for v in b_base.hom[(b, b2)].objects:
                    top = alg.compose1(right.one(v), h)
                    bottom = alg.compose1(h2, left.one(u))
                    for phi in alg.two_cells(top, bottom):
                        tag = one_tag(u, v, h, phi, h2)
                        one_cells[tag] = (x, y)
                        ones[tag] = (u, v, h, phi, h2)

    def fills(m: str, m2: str, alpha: str, beta: str) -> bool:
        _, _, h, phi, h2 = ones[m]
        phi2 = ones[m2][3]
        left_side = alg.vcompose(alg.whisker_left(h2, left.two(alpha)), phi)
        right_side = alg.vcompose(phi2, alg.whisker_right(right.two(beta), h))
        return left_side == right_side

    def two_tag(alpha: str, beta: str, m: str, m2: str) -> str:
        _, _, h, phi, h2 = ones[m]
        return tags.join(alpha, beta, key1(h), key2(phi), key2(ones[m2][3]), key1(h2))

    two_cells: Dict[str, Tuple[str, str]] = {}
    twos: Dict[str, Tuple[str, str, str, str]] = {}
    for m, (u, v, _, _, _) in ones.items():
        for m2, (u2, v2, _, _, _) in ones.items():
            if one_cells[m] != one_cells[m2]:
                continue
            for alpha in a_base.hom_of(u).hom(u, u2):
                for beta in b_base.hom_of(v).hom(v, v2):
                    if fills(m, m2, alpha, beta):
                        tag = two_tag(alpha, beta, m, m2)
                        two_cells[tag] = (m, m2)
                        twos[tag] = (alpha, beta, m, m2)

    identities2 = {
        m: two_tag(a_base.identity2(u), b_base.identity2(v), m, m) for m, (u, v, _, _, _) in ones.items()
    }
    units = {}
    for x, (a, b, h) in objects.items():
        units[x] = one_tag(a_base.units[a], b_base.units[b], h, alg.identity2(h), h)

    out_of: Dict[str, list] = {}
    for m, (x, _) in one_cells.items():
        out_of.setdefault(x, []).append(m)

    def compose(m2: str, m1: str) -> str:
        u1, v1, h, phi1, _ = ones[m1]
        u2, v2, _, phi2, h3 = ones[m2]
        phi = alg.vcompose(alg.whisker_right(phi2, left.one(u1)), alg.whisker_left(right.one(v2), phi1))
        return one_tag(a_base.compose1(u2, u1), b_base.compose1(v2, v1), h, phi, h3)

    comp1 = {}
    for m1, (_, y) in one_cells.items():
        for m2 in out_of.get(y, []):
            comp1[(m2, m1)] = compose(m2, m1)

    vertical = {}
    for second, (alpha2, beta2, m2, m3) in twos.items():
        for first, (alpha1, beta1, m1, m2b) in twos.items():
            if m2b == m2:
                vertical[(second, first)] = two_tag(
                    a_base.vcompose(alpha2, alpha1), b_base.vcompose(beta2, beta1), m1, m3
                )

    comp2 = {}
    for second, (alpha2, beta2, n, n2) in twos.items():
        for first, (alpha1, beta1, m, m2) in twos.items():
            if one_cells[m][1] != one_cells[n][0]:
                continue
            comp2[(second, first)] = two_tag(
                a_base.compose2(alpha2, alpha1), b_base.compose2(beta2, beta1), compose(n, m), compose(n2, m2)
            )

    total = assemble(objects, one_cells, two_cells, identities2, vertical, units, comp1, comp2, name=name)
    d0 = TwoFunctor(
        total,
        a_base,
        {x: a for x, (a, _, _) in objects.items()},
        {m: u for m, (u, _, _, _, _) in ones.items()},
        {t: alpha for t, (alpha, _, _, _) in twos.items()},
    )
    d1 = TwoFunctor(
        total,
        b_base,
        {x: b for x, (_, b, _) in objects.items()},
        {m: v for m, (_, v, _, _, _) in ones.items()},
        {t: beta for t, (_, beta, _, _) in twos.items()},
    )
    lam = Transformation(
        Flavor.LAX,
        precompose(left, d0),
        precompose(right, d1),
        {x: h for x, (_, _, h) in objects.items()},
        {m: phi for m, (_, _, _, phi, _) in ones.items()},
        name="lambda",
    )
    logger.debug("comma %s: %r", name or "(anonymous)", total)
    return CommaResult(total, d0, d1, lam, left, right, objects, ones, twos)


def lax_comma(f: TwoFunctor, g: TwoFunctor) -> CommaResult:
    """The lax comma from f to g, with d0, d1 and the lax square lam: f d0 => g d1."""
    if f.tgt != g.tgt:
        raise ShapeMismatch("f and g must share their target")
    name = f"<{f.src.name}|{g.src.name}>" if f.src.name and g.src.name else ""
    return _comma(f, g, str, str, name)


def _co(h: TwoFunctor) -> TwoFunctor:
    return TwoFunctor(
        dualize(h.src, Duality.CO), dualize(h.tgt, Duality.CO), dict(h.on_obj), dict(h.on_1), dict(h.on_2)
    )


def oplax_comma(f: TwoFunctor, g: TwoFunctor) -> CommaResult:
    """The co of the lax comma between the co-duals; lam becomes oplax."""
    lax = lax_comma(_co(f), _co(g))
    total = dualize(lax.total, Duality.CO)
    d0 = TwoFunctor(total, f.src, dict(lax.d0.on_obj), dict(lax.d0.on_1), dict(lax.d0.on_2))
    d1 = TwoFunctor(total, g.src, dict(lax.d1.on_obj), dict(lax.d1.on_1), dict(lax.d1.on_2))
    lam = Transformation(
        Flavor.OPLAX,
        f.after(d0),
        g.after(d1),
        dict(lax.lam.components),
        dict(lax.lam.structure),
        name="lambda",
    )
    return CommaResult(total, d0, d1, lam, f, g, lax.objects, lax.one_cells, lax.two_cells)


def point_diagram() -> CatValued2Functor:
    """The terminal category, as a diagram over the terminal 2-category."""
    return constant_diagram(terminal_2category(), terminal_category(), name="1")


def lax_comma_point(f: CatValued2Functor) -> CommaResult:
    """The lax comma from the point of Cat to f.

    Functors 1 -> F(B) are named by the object they pick and natural
    transformations between them by their single component, so an object
    reads "*|B|X" and a 1-cell "id_*|u|X|a|X'".
    """
    name = f"<1|{f.name}>" if f.name else ""
    return _comma(point_diagram(), f, lambda h: h.obj("*"), lambda phi: phi.components["*"], name)

