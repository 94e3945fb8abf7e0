"""Whiskering and pasting of transformations.

Pasting two transformations yields the weakest of their flavors. Lax and
oplax transformations never paste together; pseudo and strict ones adapt
to either orientation.
"""

import logging
from typing import Dict, Optional, Tuple

from ..errors import FlavorMismatch, ShapeMismatch
from ..kernel.twocategory import TwoFunctor
from .diagram import Diagram, precompose
from .transformation import Flavor, Marking, Modification, Transformation, check_modification

logger = logging.getLogger(__name__)

_LAX_FAMILY = (Flavor.LAX, Flavor.MARKED_LAX)
_OPLAX_FAMILY = (Flavor.OPLAX, Flavor.MARKED_OPLAX)


def join_flavors(
    x: Flavor, mx: Optional[Marking], y: Flavor, my: Optional[Marking]
) -> Tuple[Flavor, Optional[Marking]]:
    """Weakest flavor satisfied by a composite of an x- and a y-transformation."""
    if (x in _LAX_FAMILY and y in _OPLAX_FAMILY) or (x in _OPLAX_FAMILY and y in _LAX_FAMILY):
        raise ShapeMismatch("cannot paste a lax and an oplax transformation")
    if x is Flavor.STRICT:
        return y, my
    if y is Flavor.STRICT:
        return x, mx
    if x is Flavor.PSEUDO and y is Flavor.PSEUDO:
        return Flavor.PSEUDO, None
    oplax = x.oplax or y.oplax
    unmarked = Flavor.OPLAX if oplax else Flavor.LAX
    if x.marked and y.marked and mx == my:
        return x, mx
    return unmarked, None


def _oriented(t: Transformation, oplax: bool) -> Dict[str, object]:
    """Structure cells of t in the requested orientation."""
    if t.flavor.oplax == oplax or t.flavor not in (Flavor.STRICT, Flavor.PSEUDO):
        return t.structure
    a = t.algebra
    flipped = {}
    for u, s in t.structure.items():
        inverse = a.inverse2(s)
        if inverse is None:
            raise FlavorMismatch(f"structure at {u} is not invertible")
        flipped[u] = inverse
    return flipped


def vertical(s: Transformation, t: Transformation) -> Transformation:
    """s . t, where t: M => N and s: N => P."""
    if t.tgt != s.src:
        raise ShapeMismatch("transformations are not vertically composable")
    flavor, marking = join_flavors(s.flavor, s.marking, t.flavor, t.marking)
    a = t.algebra
    base = t.base
    s_str, t_str = _oriented(s, flavor.oplax), _oriented(t, flavor.oplax)
    structure = {}
    for u, (b, c) in base.one_cells.items():
        upper = a.whisker_right(s_str[u], t.components[b])
        lower = a.whisker_left(s.components[c], t_str[u])
        structure[u] = a.vcompose(upper, lower) if flavor.oplax else a.vcompose(lower, upper)
    return Transformation(
        flavor,
        t.src,
        s.tgt,
        {b: a.compose1(s.components[b], t.components[b]) for b in base.objects},
        structure,
        marking,
    )


def precompose_transformation(t: Transformation, h: TwoFunctor) -> Transformation:
    """t . h: restrict t along a 2-functor into its base."""
    if h.tgt != t.base:
        raise ShapeMismatch("2-functor does not land in the transformation's base")
    marking = None
    if t.marking is not None:
        marking = Marking(h.src, frozenset(u for u in h.src.one_cells if h.one(u) in t.marking.marked))
    return Transformation(
        t.flavor,
        precompose(t.src, h),
        precompose(t.tgt, h),
        {b: t.components[h.obj(b)] for b in h.src.objects},
        {u: t.structure[h.one(u)] for u in h.src.one_cells},
        marking,
    )


def postcompose_transformation(d: Diagram, t: Transformation) -> Transformation:
    """d . t for a transformation t between 2-functors into d's base."""
    if not isinstance(t.src, TwoFunctor) or t.src.tgt != d.base:
        raise ShapeMismatch("transformation does not land in the diagram's base")
    return Transformation(
        t.flavor,
        precompose(d, t.src),
        precompose(d, t.tgt),
        {b: d.one(x) for b, x in t.components.items()},
        {u: d.two(s) for u, s in t.structure.items()},
        t.marking,
    )


def paste(t: Transformation, at, side: str) -> Transformation:
    """Paste t with a 2-functor or transformation placed before (pre) or after (post) it."""
    if side not in ("pre", "post"):
        raise ValueError(f"unknown side: {side}")
    if isinstance(at, TwoFunctor):
        return precompose_transformation(t, at) if side == "pre" else postcompose_transformation(at, t)
    if isinstance(at, Transformation):
        return vertical(t, at) if side == "pre" else vertical(at, t)
    raise ShapeMismatch(f"cannot paste with {type(at).__name__}")


def interchange_modification(nu: Transformation, lam: Transformation) -> Modification:
    """The lax interchange cell between the two pastings of nu: V => W and lam: H => K.

    Its component at m is lam's structure cell at nu_m.
    """
    if nu.flavor.oplax or lam.flavor.oplax:
        raise FlavorMismatch("interchange is defined for lax-oriented transformations")
    if not isinstance(nu.src, TwoFunctor) or nu.src.tgt != lam.base:
        raise ShapeMismatch("nu must be a transformation between 2-functors into lam's base")
    source = vertical(postcompose_transformation(lam.tgt, nu), precompose_transformation(lam, nu.src))
    target = vertical(precompose_transformation(lam, nu.tgt), postcompose_transformation(lam.src, nu))
    modification = Modification(source, target, {m: lam.structure[x] for m, x in nu.components.items()})
    report = check_modification(modification)
    if not report.passed:
        raise ShapeMismatch(f"interchange cell fails the modification axiom at {report.violations[0].witness}")
    return modification

