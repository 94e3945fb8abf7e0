"""Recover a Cat-valued 2-functor from a split discrete 2-opfibration."""

import logging
from typing import Dict, Tuple

from ..diagrams.diagram import CatValued2Functor
from ..errors import NotSplit, ShapeMismatch
from ..kernel import tags
from ..kernel.category import FiniteCategory, Functor, NaturalTransformation
from ..kernel.twocategory import TwoFunctor
from ..kernel.validation import iso_of_2categories, validate
from .construction import elements_op
from .opfibration import SplitDiscrete2Opfib, certify

logger = logging.getLogger(__name__)


def factor_through_lift(p: SplitDiscrete2Opfib, e: str, u: str, m: str) -> str:
    """The unique n over an identity with n . cleave(e, u) = m, for m over u."""
    k = p.k
    total = k.src
    lift = p.lift(e, u)
    end = total.tgt1(m)
    unit = k.tgt.units[k.obj(end)]
    found = [
        n for n in total.hom[(total.tgt1(lift), end)].objects if k.one(n) == unit and total.compose1(n, lift) == m
    ]
    if len(found) != 1:
        raise ShapeMismatch(f"cleavage lift {lift} does not factor {m} uniquely")
    return found[0]


def lift_2cell(p: SplitDiscrete2Opfib, delta: str, target: str) -> str:
    """The unique 2-cell over delta ending at the given 1-cell."""
    k = p.k
    found = [theta for theta in k.src.hom_of(target).into(target) if k.two(theta) == delta]
    if len(found) != 1:
        raise ShapeMismatch(f"2-cell {delta} has no unique lift ending at {target}")
    return found[0]


def fibers(p: SplitDiscrete2Opfib) -> CatValued2Functor:
    """Fibers over each object, reindexed along the base through the cleavage."""
    k = p.k
    total, base = k.src, k.tgt
    categories: Dict[str, FiniteCategory] = {}
    for a in base.objects:
        objects = [e for e in total.objects if k.obj(e) == a]
        unit = base.units[a]
        morphisms = {m: ends for m, ends in total.one_cells.items() if k.one(m) == unit}
        categories[a] = FiniteCategory.build(
            objects,
            morphisms,
            {e: total.units[e] for e in objects},
            {(g, f): h for (g, f), h in total.comp1.items() if g in morphisms and f in morphisms},
            name=f"{base.name}:{a}" if base.name else a,
        )

    on_1 = {}
    for u, (a, b) in base.one_cells.items():
        on_obj = {e: total.tgt1(p.lift(e, u)) for e in categories[a].objects}
        on_mor = {
            m: factor_through_lift(p, e, u, total.compose1(p.lift(e2, u), m))
            for m, (e, e2) in categories[a].morphisms.items()
        }
        on_1[u] = Functor(categories[a], categories[b], on_obj, on_mor)

    on_2 = {}
    for delta, (u, v) in base.two_cells.items():
        components = {}
        for e in categories[base.src1(u)].objects:
            m = total.src2(lift_2cell(p, delta, p.lift(e, v)))
            components[e] = factor_through_lift(p, e, u, m)
        on_2[delta] = NaturalTransformation(on_1[u], on_1[v], components)
    return CatValued2Functor(base, categories, on_1, on_2, name=f"fib({total.name})" if total.name else "")


def comparison(p: SplitDiscrete2Opfib, f: CatValued2Functor) -> TwoFunctor:
    """The 2-functor from the elements of the fibers back onto the total 2-category."""
    total = p.k.src
    elements = elements_op(f)
    on_obj = {e: x for e, (_, x) in elements.objects.items()}
    on_1 = {m: total.compose1(alpha, p.lift(x, u)) for m, (u, x, alpha) in elements.one_cells.items()}
    on_2 = {
        theta: lift_2cell(p, delta, total.compose1(beta, p.lift(x, f.base.tgt2(delta))))
        for theta, (delta, x, beta) in elements.two_cells.items()
    }
    return TwoFunctor(elements.total, total, on_obj, on_1, on_2)


def reconstruct(p: SplitDiscrete2Opfib) -> Tuple[CatValued2Functor, TwoFunctor]:
    """The diagram F' with an isomorphism total -> elements(F') over the base.

    Raises NotSplit when the cleavage fails certification.
    """
    if p.contravariant:
        raise ShapeMismatch("reconstruct takes a covariant cleavage")
    report = certify(p)
    if not report.passed:
        first = report.violations[0]
        raise NotSplit(f"cleavage rejected: {first.law}", list(first.witness))

    f = fibers(p)
    report = validate(f)
    if not report.passed:
        first = report.violations[0]
        raise ShapeMismatch(f"reindexed fibers do not form a 2-functor: {first.law} {first.witness}")

    phi = comparison(p, f)
    report = validate(phi).merge(iso_of_2categories(phi))
    inverse = phi.inverse()
    if not report.passed or inverse is None:
        first = report.violations[0] if report.violations else None
        raise ShapeMismatch(f"comparison is not an isomorphism: {first.law if first else 'not invertible'}")

    projection = elements_op(f).projection
    if p.k.after(phi) != projection:
        raise ShapeMismatch("comparison does not commute with the projections")
    logger.info("reconstructed %r from %r", f, p.k)
    return f, inverse


def relabel_fibers(f: CatValued2Functor) -> CatValued2Functor:
    """F with X in F(B) renamed B|X and a renamed 1_B|X|a, matching what reconstruct returns."""
    base = f.base

    def rename(b: str, c: FiniteCategory) -> Tuple[Dict[str, str], Dict[str, str]]:
        unit = base.units[b]
        return (
            {x: tags.join(b, x) for x in c.objects},
            {a: tags.join(unit, c.src(a), a) for a in c.morphisms},
        )

    names = {b: rename(b, f.obj(b)) for b in base.objects}
    categories = {}
    for b, c in f.on_obj.items():
        objects, morphisms = names[b]
        categories[b] = FiniteCategory.build(
            objects.values(),
            {morphisms[a]: (objects[s], objects[t]) for a, (s, t) in c.morphisms.items()},
            {objects[x]: morphisms[a] for x, a in c.identities.items()},
            {(morphisms[g], morphisms[h]): morphisms[gh] for (g, h), gh in c.composition.items()},
            name=c.name,
        )

    on_1 = {}
    for u, (b, c) in base.one_cells.items():
        fu = f.one(u)
        (src_obj, src_mor), (tgt_obj, tgt_mor) = names[b], names[c]
        on_1[u] = Functor(
            categories[b],
            categories[c],
            {src_obj[x]: tgt_obj[y] for x, y in fu.on_obj.items()},
            {src_mor[a]: tgt_mor[y] for a, y in fu.on_mor.items()},
        )
    on_2 = {}
    for delta, (u, v) in base.two_cells.items():
        b, c = base.one_cells[u]
        (src_obj, _), (_, tgt_mor) = names[b], names[c]
        on_2[delta] = NaturalTransformation(
            on_1[u], on_1[v], {src_obj[x]: tgt_mor[a] for x, a in f.two(delta).components.items()}
        )
    return CatValued2Functor(base, categories, on_1, on_2, name=f.name)
