"""Functoriality of the elements construction and the canonical lax square."""

import logging

from ..diagrams.algebra import two_cells_of
from ..diagrams.diagram import constant_diagram, precompose
from ..diagrams.transformation import Flavor, Modification, Transformation
from ..errors import FlavorMismatch, ShapeMismatch
from ..kernel import tags
from ..kernel.category import NaturalTransformation, identity_functor, point
from ..kernel.twocategory import TwoFunctor, terminal_category
from .construction import ElementsResult, elements_op

logger = logging.getLogger(__name__)


def _lax_only(phi: Transformation) -> None:
    if phi.flavor.oplax:
        raise FlavorMismatch("elements_map takes a lax-oriented transformation")
    if phi.src.base != phi.tgt.base:
        raise ShapeMismatch("transformation endpoints live over different bases")


def elements_map(phi: Transformation) -> TwoFunctor:
    """The 2-functor between totals: (u, X, a) -> (u, phi_B X, phi_C(a) . (phi_u)_X)."""
    _lax_only(phi)
    source, target = elements_op(phi.src), elements_op(phi.tgt)
    n = phi.tgt
    base = phi.base

    def image(u, x, alpha):
        b, c = base.one_cells[u]
        morphism = n.obj(c).compose(phi.components[c].mor(alpha), phi.structure[u].components[x])
        return phi.components[b].obj(x), morphism

    on_obj = {e: tags.join(b, phi.components[b].obj(x)) for e, (b, x) in source.objects.items()}
    on_1 = {m: tags.join(u, *image(u, x, alpha)) for m, (u, x, alpha) in source.one_cells.items()}
    on_2 = {}
    for theta, (delta, x, beta) in source.two_cells.items():
        on_2[theta] = tags.join(delta, *image(base.tgt2(delta), x, beta))
    return TwoFunctor(source.total, target.total, on_obj, on_1, on_2)


def elements_2map(theta: Modification) -> Transformation:
    """The strict transformation with component (1_B, (Theta_B)_X) at (B, X)."""
    phi, psi = theta.src, theta.tgt
    top, bottom = elements_map(phi), elements_map(psi)
    source, target = elements_op(phi.src), elements_op(phi.tgt)
    base = phi.base
    total = target.total
    components = {}
    for e, (b, x) in source.objects.items():
        components[e] = tags.join(base.units[b], phi.components[b].obj(x), theta.components[b].components[x])
    cells = two_cells_of(total)
    structure = {}
    for m, (e, e2) in source.total.one_cells.items():
        structure[m] = cells.identity2(cells.compose1(bottom.one(m), components[e]))
    return Transformation(Flavor.STRICT, top, bottom, components, structure)


def canonical_lambda(f, elements: ElementsResult = None) -> Transformation:
    """The marked-lax transformation from the constant terminal diagram to f . projection."""
    elements = elements or elements_op(f)
    one = terminal_category()
    total = elements.total
    source = constant_diagram(total, one)
    target = precompose(f, elements.projection)
    components = {e: point(f.obj(b), x, one) for e, (b, x) in elements.objects.items()}
    structure = {}
    for m, (u, x, alpha) in elements.one_cells.items():
        e, e2 = total.one_cells[m]
        top = f.one(u).after(components[e])
        bottom = components[e2].after(identity_functor(one))
        structure[m] = NaturalTransformation(top, bottom, {"*": alpha})
    return Transformation(Flavor.MARKED_LAX, source, target, components, structure, elements.marking)
