"""Named fixtures and seeded generators of small diagrams.

Generated examples stay inside the acceptance bounds: bases have at most
three objects and four 2-cells per hom, fibers at most four objects and
eight morphisms. Generation is deterministic in the seed.
"""

import logging
import random
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .config import get_settings
from .diagrams.algebra import CAT
from .diagrams.diagram import CatValued2Functor, constant_diagram
from .diagrams.transformation import Flavor, Marking, Transformation, structure_ends
from .elements.construction import elements_op
from .elements.opfibration import SplitDiscrete2Opfib
from .errors import NoInstance
from .kan.twovar import pair_hom_diagram
from .kernel import tags
from .kernel.category import (
    FiniteCategory,
    Functor,
    NaturalTransformation,
    arrow_category,
    commutative_square,
    discrete,
    identity_functor,
    identity_transformation,
    point,
    walking_iso,
)
from .kernel.enumeration import enumerate_functors, enumerate_natural_transformations, functor_category
from .kernel.search import Constraint, solve
from .kernel.twocategory import (
    Duality,
    Finite2Category,
    dualize,
    locally_discrete,
    terminal_2category,
    terminal_category,
    walking_2cell,
)
from .limits.colimits import hom_into, opposite_marking

logger = logging.getLogger(__name__)


# fixtures


def one() -> FiniteCategory:
    return terminal_category()


def two() -> FiniteCategory:
    return arrow_category()


def composable_pair() -> FiniteCategory:
    """0 -> 1 -> 2 with its composite."""
    objects = ["0", "1", "2"]
    ids = {x: tags.identity(x) for x in objects}
    morphisms = {ids[x]: (x, x) for x in objects}
    morphisms.update({"p": ("0", "1"), "q": ("1", "2"), "qp": ("0", "2")})
    composition = {(ids[x], ids[x]): ids[x] for x in objects}
    for m, (s, t) in morphisms.items():
        if s != t:
            composition[(m, ids[s])] = m
            composition[(ids[t], m)] = m
    composition[("q", "p")] = "qp"
    return FiniteCategory.build(objects, morphisms, ids, composition, name="Three")


def cell() -> Finite2Category:
    return walking_2cell()


def f0() -> CatValued2Functor:
    """Over the walking arrow f: a -> b, a -> One, b -> Two and f picks 0."""
    base = locally_discrete(arrow_category("a", "b", "f"), name="Two")
    c1, c2 = one(), two()
    pick = point(c2, "0", c1)
    on_1 = {"id_a": identity_functor(c1), "id_b": identity_functor(c2), "f": pick}
    on_2 = {tags.identity(u): identity_transformation(g) for u, g in on_1.items()}
    return CatValued2Functor(base, {"a": c1, "b": c2}, on_1, on_2, name="F0")


def chaotic_two_cocone() -> Tuple[Marking, CatValued2Functor, CatValued2Functor, FiniteCategory, Transformation]:
    """Two as the oplax colimit of Δ1 over Two with the chaotic marking, and its tautological cocone."""
    c1, c2 = one(), two()
    carrier = locally_discrete(two())
    marking = Marking.chaotic(carrier)
    f = constant_diagram(carrier, c1)
    w = constant_diagram(dualize(carrier, Duality.OP), c1)
    target = hom_into(f, c2)
    points = functor_category(c1, c2).category
    components = {}
    for x in carrier.objects:
        picked = point(c2, x, c1).tag
        components[x] = Functor(c1, points, {"*": picked}, {c1.identity("*"): points.identity(picked)})
    structure = {}
    for u, (b, c) in w.base.one_cells.items():
        src, tgt = structure_ends(CAT, w, target, Flavor.MARKED_OPLAX, u, components[b], components[c])
        (cell_tag,) = points.hom(src.obj("*"), tgt.obj("*"))
        structure[u] = NaturalTransformation(src, tgt, {"*": cell_tag})
    mu = Transformation(
        Flavor.MARKED_OPLAX, w, target, components, structure, opposite_marking(marking), name="tautological"
    )
    return marking, w, f, c2, mu


# generators


def _fibers() -> List[FiniteCategory]:
    return [one(), two(), discrete(["0", "1"], name="D2"), walking_iso()]


def _bases() -> List[Finite2Category]:
    return [
        terminal_2category(),
        locally_discrete(arrow_category(), name="Two"),
        locally_discrete(discrete(["0", "1"]), name="D2"),
        walking_2cell(),
        locally_discrete(composable_pair()),
    ]


def _shuffled(rng_seed: str, values: Sequence) -> List:
    values = list(values)
    random.Random(rng_seed).shuffle(values)
    return values


def random_base(seed: int) -> Finite2Category:
    rng = random.Random(seed)
    return rng.choice(_bases())


def random_diagram(seed: int, base: Optional[Finite2Category] = None) -> CatValued2Functor:
    """A Cat-valued 2-functor with randomly chosen fibers and a randomly ordered search for the rest."""
    rng = random.Random(seed)
    base = base if base is not None else rng.choice(_bases())
    categories = {x: rng.choice(_fibers()) for x in base.objects}

    moving1 = [u for u in base.one_cells if not base.is_unit(u)]
    moving2 = [g for g in base.two_cells if not base.is_identity2(g)]
    slots: List[Hashable] = [("1", u) for u in moving1] + [("2", g) for g in moving2]

    def one_cell(u, s) -> Functor:
        if base.is_unit(u):
            return identity_functor(categories[base.src1(u)])
        return s[("1", u)]

    def two_cell(gamma, s) -> NaturalTransformation:
        if base.is_identity2(gamma):
            return identity_transformation(one_cell(base.src2(gamma), s))
        return s[("2", gamma)]

    def dep1(u):
        return () if base.is_unit(u) else (("1", u),)

    def dep2(gamma):
        return dep1(base.src2(gamma)) if base.is_identity2(gamma) else (("2", gamma),)

    def candidates(slot, s):
        kind, name = slot
        if kind == "1":
            a, b = base.one_cells[name]
            found = list(enumerate_functors(categories[a], categories[b]))
        else:
            u, v = base.two_cells[name]
            found = list(enumerate_natural_transformations(one_cell(u, s), one_cell(v, s)))
        return _shuffled(f"{seed}:{name}", found)

    constraints = []
    for (g, f), gf in base.comp1.items():
        depends = tuple(set(dep1(g) + dep1(f) + dep1(gf)))
        constraints.append(
            Constraint(depends, lambda s, g=g, f=f, gf=gf: one_cell(gf, s) == one_cell(g, s).after(one_cell(f, s)))
        )
    for (c, d), cd in base.comp2.items():
        depends = tuple(set(dep2(c) + dep2(d) + dep2(cd)))
        constraints.append(
            Constraint(
                depends, lambda s, c=c, d=d, cd=cd: two_cell(cd, s) == CAT.hcompose(two_cell(c, s), two_cell(d, s))
            )
        )
    for hom in base.hom.values():
        for (c, d), cd in hom.composition.items():
            depends = tuple(set(dep2(c) + dep2(d) + dep2(cd)))
            constraints.append(
                Constraint(depends, lambda s, c=c, d=d, cd=cd: two_cell(cd, s) == two_cell(c, s).after(two_cell(d, s)))
            )

    for s in solve(slots, candidates, constraints, f"random diagram {seed}"):
        return CatValued2Functor(
            base,
            categories,
            {u: one_cell(u, s) for u in base.one_cells},
            {g: two_cell(g, s) for g in base.two_cells},
            name=f"R{seed}",
        )
    raise NoInstance("diagram", seed)


def random_pair(seed: int) -> Tuple[CatValued2Functor, CatValued2Functor]:
    """Two diagrams over the same randomly chosen base."""
    base = random_base(seed)
    return random_diagram(2 * seed + 1, base), random_diagram(2 * seed + 2, base)


def yoneda_instance(seed: int) -> Tuple[SplitDiscrete2Opfib, CatValued2Functor]:
    """K the projection of the elements of a random diagram, F = [P-, U-] for constant P and random U."""
    g = random_diagram(seed)
    p = elements_op(g).opfib
    rng = random.Random(seed)
    weight = constant_diagram(p.k.src, rng.choice([one(), two()]))
    values = random_diagram(seed + 7919, p.k.tgt)
    return p, pair_hom_diagram(weight, values)


def weight_instance(seed: int) -> Tuple[CatValued2Functor, CatValued2Functor]:
    """Z a random weight and F a random diagram over the elements of Z."""
    z = random_diagram(2 * seed + 1)
    return z, random_diagram(seed + 7919, elements_op(z).total)


def corpus(size: Optional[int] = None, start: int = 0) -> List[CatValued2Functor]:
    """The first `size` generated diagrams, together with F0."""
    size = get_settings().corpus_size if size is None else size
    found = [f0()] + [random_diagram(seed) for seed in range(start, start + size - 1)]
    logger.debug("corpus of %d diagrams", len(found))
    return found


FIXTURES: Dict[str, object] = {
    "One": one,
    "Two": two,
    "Iso": walking_iso,
    "Square": commutative_square,
    "Three": composable_pair,
    "Cell": cell,
    "F0": f0,
}
