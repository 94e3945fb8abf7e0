"""The slice and coslice weights that express marked (op)lax conical (co)limits."""

import logging

from ..diagrams.algebra import CAT
from ..diagrams.diagram import CatValued2Functor
from ..diagrams.transformation import Flavor, Modification, Transformation
from ..elements.construction import elements_cov, elements_op
from ..errors import ShapeMismatch
from ..kernel import tags
from ..kernel.category import Functor, NaturalTransformation, coslice_category, slice_category
from ..kernel.twocategory import Duality, dualize
from .weighted import LimitResult, _missing, certify_comparison, marked_lax_conical_limit, weighted_limit

logger = logging.getLogger(__name__)


def weight_laxn(z: CatValued2Functor) -> CatValued2Functor:
    """(B, X') -> Z(B)/X' over the elements of Z, acting by b . Z(g)(-)."""
    elements = elements_op(z)
    total = elements.total
    on_obj = {e: slice_category(z.obj(b), x) for e, (b, x) in elements.objects.items()}

    on_1 = {}
    for m, (g, x, beta) in elements.one_cells.items():
        e, e2 = total.one_cells[m]
        c = elements.base.tgt1(g)
        zg, zc = z.one(g), z.obj(c)
        source = on_obj[e]

        def reindex(a: str) -> str:
            return zc.compose(beta, zg.mor(a))

        on_mor = {}
        for k_over, (a1, a2) in source.morphisms.items():
            k = k_over.rsplit("/", 1)[0]
            on_mor[k_over] = tags.over(zg.mor(k), reindex(a2))
        on_1[m] = Functor(source, on_obj[e2], {a: reindex(a) for a in source.objects}, on_mor)

    on_2 = {}
    for theta, (delta, x, beta) in elements.two_cells.items():
        u, v = total.two_cells[theta]
        b, c = elements.base.one_cells[elements.base.src2(delta)]
        zb, zc = z.obj(b), z.obj(c)
        zd, zh = z.two(delta), z.one(elements.base.tgt2(delta))
        components = {
            a: tags.over(zd.components[zb.src(a)], zc.compose(beta, zh.mor(a))) for a in on_obj[total.src1(u)].objects
        }
        on_2[theta] = NaturalTransformation(on_1[u], on_1[v], components)
    return CatValued2Functor(total, on_obj, on_1, on_2, name=f"Wlaxn({z.name})" if z.name else "Wlaxn")


def weight_oplaxn(z: CatValued2Functor) -> CatValued2Functor:
    """(B, X') -> X'/Z(B) over the op-dual of the covariant elements of Z."""
    elements = elements_cov(z)
    total = elements.total
    d_base = z.base
    base = dualize(total, Duality.OP)
    on_obj = {e: coslice_category(z.obj(b), x) for e, (b, x) in elements.objects.items()}

    # (g, x2, b): (B, X') -> (C, x2) in the total acts from x2/Z(C) to X'/Z(B)
    on_1 = {}
    for m, (g, x2, beta) in elements.one_cells.items():
        e, e2 = total.one_cells[m]
        b = d_base.tgt1(g)
        zg, zb = z.one(g), z.obj(b)
        source = on_obj[e2]

        def reindex(a: str) -> str:
            return zb.compose(zg.mor(a), beta)

        on_mor = {}
        for k_over, (a1, a2) in source.morphisms.items():
            k = k_over.rsplit("/", 1)[0]
            on_mor[k_over] = tags.over(zg.mor(k), reindex(a1))
        on_1[m] = Functor(source, on_obj[e], {a: reindex(a) for a in source.objects}, on_mor)

    on_2 = {}
    for theta, (delta, x2, beta) in elements.two_cells.items():
        u, v = total.two_cells[theta]
        c, b = d_base.one_cells[d_base.src2(delta)]
        zc, zb = z.obj(c), z.obj(b)
        zd, zg = z.two(delta), z.one(d_base.src2(delta))
        components = {
            a: tags.over(zd.components[zc.tgt(a)], zb.compose(zg.mor(a), beta)) for a in on_obj[total.tgt1(u)].objects
        }
        on_2[theta] = NaturalTransformation(on_1[u], on_1[v], components)
    return CatValued2Functor(base, on_obj, on_1, on_2, name=f"Woplaxn({z.name})" if z.name else "Woplaxn")


def weight_laxn_equivalence_check(z: CatValued2Functor, f: CatValued2Functor) -> LimitResult:
    """Compare marked-lax cones over the elements of Z with cylinders from weight_laxn(Z)."""
    elements = elements_op(z)
    if f.base != elements.total:
        raise ShapeMismatch("diagram does not live over the elements of the weight")
    cones = marked_lax_conical_limit(elements.marking, f)
    weight = weight_laxn(z)
    cylinders = weighted_limit(weight, f)
    total = elements.total

    def along(b: str, alpha: str) -> str:
        """The 1-cell (1_B, alpha) of the elements."""
        return tags.join(elements.base.units[b], z.obj(b).src(alpha), alpha)

    def convert(phi: Transformation) -> Transformation:
        components = {}
        for e, (b, x) in elements.objects.items():
            category = weight.obj(e)
            on_obj = {}
            for alpha in category.objects:
                m = along(b, alpha)
                on_obj[alpha] = f.one(m).obj(phi.components[total.src1(m)].obj("*"))
            on_mor = {}
            for k_over, (a1, a2) in category.morphisms.items():
                k = k_over.rsplit("/", 1)[0]
                cell = phi.structure[along(b, k)].components["*"]
                on_mor[k_over] = f.one(along(b, a2)).mor(cell)
            components[e] = Functor(category, f.obj(e), on_obj, on_mor)
        structure = {m: CAT.identity2(CAT.compose1(f.one(m), components[e])) for m, (e, _) in total.one_cells.items()}
        return Transformation(Flavor.STRICT, weight, f, components, structure)

    converted = {}
    on_obj = {}
    for tag, phi in cones.data.transformations.items():
        image = convert(phi)
        if image.tag not in cylinders.data.transformations:
            raise _missing("cone", tag, cones.limit, cylinders.limit)
        converted[tag] = image
        on_obj[tag] = image.tag

    on_mor = {}
    for tag, gamma in cones.data.modifications.items():
        source, target = converted[gamma.src.tag], converted[gamma.tgt.tag]
        components = {}
        for e, (b, x) in elements.objects.items():
            cells = {}
            for alpha in weight.obj(e).objects:
                m = along(b, alpha)
                cells[alpha] = f.one(m).mor(gamma.components[total.src1(m)].components["*"])
            components[e] = NaturalTransformation(source.components[e], target.components[e], cells)
        image = Modification(source, target, components).tag
        if image not in cylinders.data.modifications:
            raise _missing("modification", tag, cones.limit, cylinders.limit)
        on_mor[tag] = image

    comparison = Functor(cones.limit, cylinders.limit, on_obj, on_mor)
    report = certify_comparison(comparison)
    logger.info("weight comparison is an isomorphism on %d cones", len(on_obj))
    return LimitResult(cones.data, cones.weight, f, Flavor.MARKED_LAX, elements.marking, comparison, report)
