"""Finite categories, functors and natural transformations.

A FiniteCategory stores its composition as a total table over composable
pairs, so every law is decidable by lookup. Values are immutable once
built; derived indexes are computed lazily and cached on the instance.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..errors import ShapeMismatch
from . import tags
from .search import guard

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteCategory:
    objects: Tuple[str, ...]
    morphisms: Dict[str, Tuple[str, str]]
    identities: Dict[str, str]
    composition: Dict[Tuple[str, str], str]
    name: str = field(default="", compare=False)

    def __hash__(self) -> int:
        return hash(self.key)

    @cached_property
    def key(self) -> tuple:
        return (
            self.objects,
            tuple(sorted(self.morphisms.items())),
            tuple(sorted(self.identities.items())),
            tuple(sorted(self.composition.items())),
        )

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        morphisms: Mapping[str, Tuple[str, str]],
        identities: Mapping[str, str],
        composition: Mapping[Tuple[str, str], str],
        name: str = "",
    ) -> "FiniteCategory":
        guard(f"category {name or '(anonymous)'}", len(morphisms))
        return cls(
            objects=tuple(sorted(objects)),
            morphisms=dict(sorted(morphisms.items())),
            identities=dict(sorted(identities.items())),
            composition=dict(composition),
            name=name,
        )

    # lookups

    def src(self, m: str) -> str:
        return self.morphisms[m][0]

    def tgt(self, m: str) -> str:
        return self.morphisms[m][1]

    def identity(self, x: str) -> str:
        return self.identities[x]

    def compose(self, g: str, f: str) -> str:
        """g after f."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise ShapeMismatch(f"{g} and {f} are not composable in {self.name or 'category'}") from None

    def compose_path(self, path: Sequence[str]) -> str:
        """Compose morphisms given in diagrammatic order (first applied first)."""
        result = path[0]
        for m in path[1:]:
            result = self.compose(m, result)
        return result

    @cached_property
    def identity_set(self) -> frozenset:
        return frozenset(self.identities.values())

    def is_identity(self, m: str) -> bool:
        return m in self.identity_set

    @cached_property
    def _homs(self) -> Dict[Tuple[str, str], List[str]]:
        homs: Dict[Tuple[str, str], List[str]] = {}
        for m, (a, b) in self.morphisms.items():
            homs.setdefault((a, b), []).append(m)
        return {key: sorted(value) for key, value in homs.items()}

    def hom(self, a: str, b: str) -> List[str]:
        return self._homs.get((a, b), [])

    def out_of(self, a: str) -> List[str]:
        return sorted(m for m, (s, _) in self.morphisms.items() if s == a)

    def into(self, b: str) -> List[str]:
        return sorted(m for m, (_, t) in self.morphisms.items() if t == b)

    def inverse(self, m: str) -> Optional[str]:
        a, b = self.morphisms[m]
        for n in self.hom(b, a):
            if self.composition.get((n, m)) == self.identities[a] and self.composition.get((m, n)) == self.identities[b]:
                return n
        return None

    def is_iso(self, m: str) -> bool:
        return self.inverse(m) is not None

    # constructions

    def op(self) -> "FiniteCategory":
        return FiniteCategory(
            objects=self.objects,
            morphisms={m: (b, a) for m, (a, b) in self.morphisms.items()},
            identities=dict(self.identities),
            composition={(g, f): h for (f, g), h in self.composition.items()},
            name=f"{self.name}^op" if self.name else "",
        )

    def full_subcategory(self, objects: Iterable[str], name: str = "") -> "FiniteCategory":
        keep = set(objects)
        morphisms = {m: st for m, st in self.morphisms.items() if st[0] in keep and st[1] in keep}
        return FiniteCategory(
            objects=tuple(sorted(keep)),
            morphisms=morphisms,
            identities={x: i for x, i in self.identities.items() if x in keep},
            composition={gf: h for gf, h in self.composition.items() if gf[0] in morphisms and gf[1] in morphisms},
            name=name,
        )

    def __repr__(self) -> str:
        return f"FiniteCategory({self.name or '?'}: {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def discrete(objects: Iterable[str], name: str = "") -> FiniteCategory:
    objects = sorted(set(objects))
    ids = {x: tags.identity(x) for x in objects}
    return FiniteCategory.build(
        objects,
        {ids[x]: (x, x) for x in objects},
        ids,
        {(ids[x], ids[x]): ids[x] for x in objects},
        name=name,
    )


def empty_category() -> FiniteCategory:
    return FiniteCategory((), {}, {}, {}, name="0")


def arrow_category(a: str = "0", b: str = "1", f: str = "s", name: str = "Two") -> FiniteCategory:
    """The walking arrow f: a -> b."""
    ia, ib = tags.identity(a), tags.identity(b)
    return FiniteCategory.build(
        [a, b],
        {ia: (a, a), ib: (b, b), f: (a, b)},
        {a: ia, b: ib},
        {(ia, ia): ia, (ib, ib): ib, (f, ia): f, (ib, f): f},
        name=name,
    )


def walking_iso() -> FiniteCategory:
    """i: 0 -> 1 and its inverse j."""
    return FiniteCategory.build(
        ["0", "1"],
        {"id_0": ("0", "0"), "id_1": ("1", "1"), "i": ("0", "1"), "j": ("1", "0")},
        {"0": "id_0", "1": "id_1"},
        {
            ("id_0", "id_0"): "id_0",
            ("id_1", "id_1"): "id_1",
            ("i", "id_0"): "i",
            ("id_1", "i"): "i",
            ("j", "id_1"): "j",
            ("id_0", "j"): "j",
            ("j", "i"): "id_0",
            ("i", "j"): "id_1",
        },
        name="Iso",
    )


def commutative_square() -> FiniteCategory:
    """f: a -> b, g: b -> d, h: a -> c, k: c -> d with g.f = k.h = diagonal."""
    objects = ["a", "b", "c", "d"]
    ids = {x: tags.identity(x) for x in objects}
    morphisms = {ids[x]: (x, x) for x in objects}
    morphisms.update({"f": ("a", "b"), "g": ("b", "d"), "h": ("a", "c"), "k": ("c", "d"), "diagonal": ("a", "d")})
    composition = {(ids[x], ids[x]): ids[x] for x in objects}
    for m, (s, t) in morphisms.items():
        if s != t:
            composition[(m, ids[s])] = m
            composition[(ids[t], m)] = m
    composition[("g", "f")] = "diagonal"
    composition[("k", "h")] = "diagonal"
    return FiniteCategory.build(objects, morphisms, ids, composition, name="Square")


def product(c: FiniteCategory, d: FiniteCategory, name: str = "") -> FiniteCategory:
    """Product category; cells are tagged by the ordered pair of factor cells."""
    guard(f"product {c.name} x {d.name}", len(c.morphisms) * len(d.morphisms))
    morphisms = {
        tags.pair(f, g): (tags.pair(c.src(f), d.src(g)), tags.pair(c.tgt(f), d.tgt(g)))
        for f in c.morphisms
        for g in d.morphisms
    }
    composition = {}
    for (f2, f1), f in c.composition.items():
        for (g2, g1), g in d.composition.items():
            composition[(tags.pair(f2, g2), tags.pair(f1, g1))] = tags.pair(f, g)
    return FiniteCategory.build(
        [tags.pair(x, y) for x in c.objects for y in d.objects],
        morphisms,
        {tags.pair(x, y): tags.pair(c.identity(x), d.identity(y)) for x in c.objects for y in d.objects},
        composition,
        name=name,
    )


def slice_category(c: FiniteCategory, x: str) -> FiniteCategory:
    """Objects are arrows into x; a morphism k: a1 -> a2 (a2 . k = a1) is tagged k/a2."""
    objects = c.into(x)
    morphisms = {}
    for a2 in objects:
        for a1 in objects:
            for k in c.hom(c.src(a1), c.src(a2)):
                if c.compose(a2, k) == a1:
                    morphisms[tags.over(k, a2)] = (a1, a2)
    composition = {}
    for m2, (b1, b2) in morphisms.items():
        k2 = m2.rsplit("/", 1)[0]
        for m1, (a1, a2) in morphisms.items():
            if a2 == b1:
                composition[(m2, m1)] = tags.over(c.compose(k2, m1.rsplit("/", 1)[0]), b2)
    return FiniteCategory.build(
        objects,
        morphisms,
        {a: tags.over(c.identity(c.src(a)), a) for a in objects},
        composition,
        name=f"{c.name}/{x}",
    )


def coslice_category(c: FiniteCategory, x: str) -> FiniteCategory:
    """Objects are arrows out of x; a morphism k: a1 -> a2 (k . a1 = a2) is tagged k/a1."""
    objects = c.out_of(x)
    morphisms = {}
    for a1 in objects:
        for a2 in objects:
            for k in c.hom(c.tgt(a1), c.tgt(a2)):
                if c.compose(k, a1) == a2:
                    morphisms[tags.over(k, a1)] = (a1, a2)
    composition = {}
    for m2, (b1, b2) in morphisms.items():
        k2 = m2.rsplit("/", 1)[0]
        for m1, (a1, a2) in morphisms.items():
            if a2 == b1:
                composition[(m2, m1)] = tags.over(c.compose(k2, m1.rsplit("/", 1)[0]), a1)
    return FiniteCategory.build(
        objects,
        morphisms,
        {a: tags.over(c.identity(c.tgt(a)), a) for a in objects},
        composition,
        name=f"{x}/{c.name}",
    )


@dataclass(frozen=True)
class Functor:
    src: FiniteCategory
    tgt: FiniteCategory
    on_obj: Dict[str, str]
    on_mor: Dict[str, str]

    def __hash__(self) -> int:
        return hash(self.tag)

    @cached_property
    def tag(self) -> str:
        return tags.functor(self.on_obj, self.on_mor, self.src.identity_set)

    def obj(self, x: str) -> str:
        return self.on_obj[x]

    def mor(self, m: str) -> str:
        return self.on_mor[m]

    def after(self, other: "Functor") -> "Functor":
        """self . other"""
        if other.tgt != self.src:
            raise ShapeMismatch("functors are not composable")
        return Functor(
            other.src,
            self.tgt,
            {x: self.on_obj[y] for x, y in other.on_obj.items()},
            {m: self.on_mor[n] for m, n in other.on_mor.items()},
        )

    def opposite(self) -> "Functor":
        return Functor(self.src.op(), self.tgt.op(), dict(self.on_obj), dict(self.on_mor))

    def __repr__(self) -> str:
        return f"Functor({self.src.name or '?'} -> {self.tgt.name or '?'}, {self.tag})"


def identity_functor(c: FiniteCategory) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms})


def point(c: FiniteCategory, x: str, one: FiniteCategory) -> Functor:
    """The functor from the terminal category `one` picking the object x."""
    (star,) = one.objects
    return Functor(one, c, {star: x}, {one.identity(star): c.identity(x)})


@dataclass(frozen=True)
class NaturalTransformation:
    src: Functor
    tgt: Functor
    components: Dict[str, str]

    def __hash__(self) -> int:
        return hash((self.src.tag, self.tgt.tag, self.tag))

    @cached_property
    def tag(self) -> str:
        return tags.components(self.components)

    @property
    def category(self) -> FiniteCategory:
        return self.src.tgt

    def after(self, other: "NaturalTransformation") -> "NaturalTransformation":
        """Vertical composite self . other."""
        if other.tgt != self.src:
            raise ShapeMismatch("natural transformations are not vertically composable")
        d = self.category
        return NaturalTransformation(
            other.src,
            self.tgt,
            {x: d.compose(self.components[x], other.components[x]) for x in other.components},
        )

    def whisker_left(self, h: Functor) -> "NaturalTransformation":
        """h * self: post-whisker by the functor h."""
        return NaturalTransformation(
            h.after(self.src),
            h.after(self.tgt),
            {x: h.on_mor[m] for x, m in self.components.items()},
        )

    def whisker_right(self, k: Functor) -> "NaturalTransformation":
        """self * k: pre-whisker by the functor k."""
        return NaturalTransformation(
            self.src.after(k),
            self.tgt.after(k),
            {y: self.components[k.on_obj[y]] for y in k.src.objects},
        )

    def inverse(self) -> Optional["NaturalTransformation"]:
        d = self.category
        inverted = {}
        for x, m in self.components.items():
            n = d.inverse(m)
            if n is None:
                return None
            inverted[x] = n
        return NaturalTransformation(self.tgt, self.src, inverted)

    def opposite(self) -> "NaturalTransformation":
        """The same components read as a transformation tgt^op => src^op."""
        return NaturalTransformation(self.tgt.opposite(), self.src.opposite(), dict(self.components))

    def __repr__(self) -> str:
        return f"NaturalTransformation({self.tag})"


def identity_transformation(f: Functor) -> NaturalTransformation:
    return NaturalTransformation(f, f, {x: f.tgt.identity(y) for x, y in f.on_obj.items()})
