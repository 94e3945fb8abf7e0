"""Cell algebras for the targets of diagrams.

Transformations and modifications are written once against the small
interface below. Diagrams valued in Cat use CatCells, whose 1-cells are
functors and 2-cells natural transformations; 2-functors into a finite
2-category use TwoCells, whose cells are identifiers.
"""

from functools import lru_cache
from typing import Any, List, Optional

from ..kernel.category import (
    FiniteCategory,
    Functor,
    NaturalTransformation,
    identity_functor,
    identity_transformation,
)
from ..kernel.enumeration import enumerate_functors, enumerate_natural_transformations
from ..kernel.twocategory import Finite2Category, TwoFunctor


class CatCells:
    """Cells of Cat restricted to finite categories."""

    name = "Cat"

    def compose1(self, g: Functor, f: Functor) -> Functor:
        return g.after(f)

    def identity1(self, x: FiniteCategory) -> Functor:
        return identity_functor(x)

    def identity2(self, u: Functor) -> NaturalTransformation:
        return identity_transformation(u)

    def vcompose(self, a: NaturalTransformation, b: NaturalTransformation) -> NaturalTransformation:
        return a.after(b)

    def whisker_left(self, g: Functor, a: NaturalTransformation) -> NaturalTransformation:
        return a.whisker_left(g)

    def whisker_right(self, a: NaturalTransformation, f: Functor) -> NaturalTransformation:
        return a.whisker_right(f)

    def hcompose(self, a: NaturalTransformation, b: NaturalTransformation) -> NaturalTransformation:
        return self.vcompose(self.whisker_right(a, b.tgt), self.whisker_left(a.src, b))

    def src1(self, u: Functor) -> FiniteCategory:
        return u.src

    def tgt1(self, u: Functor) -> FiniteCategory:
        return u.tgt

    def src2(self, a: NaturalTransformation) -> Functor:
        return a.src

    def tgt2(self, a: NaturalTransformation) -> Functor:
        return a.tgt

    def one_cells(self, x: FiniteCategory, y: FiniteCategory) -> List[Functor]:
        return _functors(x, y)

    def two_cells(self, u: Functor, v: Functor) -> List[NaturalTransformation]:
        return _transformations(u, v)

    def is_identity2(self, a: NaturalTransformation) -> bool:
        return a.src == a.tgt and all(a.category.is_identity(m) for m in a.components.values())

    def inverse2(self, a: NaturalTransformation) -> Optional[NaturalTransformation]:
        return a.inverse()

    def key1(self, u: Functor) -> str:
        return u.tag

    def key2(self, a: NaturalTransformation) -> str:
        return a.tag


@lru_cache(maxsize=1024)
def _functors(x: FiniteCategory, y: FiniteCategory) -> List[Functor]:
    return list(enumerate_functors(x, y))


@lru_cache(maxsize=4096)
def _transformations(u: Functor, v: Functor) -> List[NaturalTransformation]:
    return list(enumerate_natural_transformations(u, v))


class TwoCells:
    """Cells of one finite 2-category, addressed by identifier."""

    def __init__(self, k: Finite2Category):
        self.k = k
        self.name = k.name

    def compose1(self, g: str, f: str) -> str:
        return self.k.compose1(g, f)

    def identity1(self, x: str) -> str:
        return self.k.units[x]

    def identity2(self, u: str) -> str:
        return self.k.identity2(u)

    def vcompose(self, a: str, b: str) -> str:
        return self.k.vcompose(a, b)

    def whisker_left(self, g: str, a: str) -> str:
        return self.k.whisker_left(g, a)

    def whisker_right(self, a: str, f: str) -> str:
        return self.k.whisker_right(a, f)

    def hcompose(self, a: str, b: str) -> str:
        return self.k.compose2(a, b)

    def src1(self, u: str) -> str:
        return self.k.src1(u)

    def tgt1(self, u: str) -> str:
        return self.k.tgt1(u)

    def src2(self, a: str) -> str:
        return self.k.src2(a)

    def tgt2(self, a: str) -> str:
        return self.k.tgt2(a)

    def one_cells(self, x: str, y: str) -> List[str]:
        return list(self.k.hom[(x, y)].objects)

    def two_cells(self, u: str, v: str) -> List[str]:
        return self.k.hom_of(u).hom(u, v) if self.k.one_cells[u] == self.k.one_cells[v] else []

    def is_identity2(self, a: str) -> bool:
        return self.k.is_identity2(a)

    def inverse2(self, a: str) -> Optional[str]:
        return self.k.inverse2(a)

    def key1(self, u: str) -> str:
        return u

    def key2(self, a: str) -> str:
        return a


CAT = CatCells()


@lru_cache(maxsize=256)
def two_cells_of(k: Finite2Category) -> TwoCells:
    return TwoCells(k)


def algebra_of(diagram: Any):
    """The cell algebra of a diagram's target."""
    if isinstance(diagram, TwoFunctor):
        return two_cells_of(diagram.tgt)
    return CAT
