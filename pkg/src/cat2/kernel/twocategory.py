"""Finite strict 2-categories and strict 2-functors.

1-cells are the objects of the hom-categories and 2-cells their morphisms;
both kinds of identifier are unique across the whole 2-category, so a cell
determines its hom. Horizontal composition is stored as two tables, one
for 1-cells and one for 2-cells.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, Mapping, Optional, Tuple

from ..errors import ShapeMismatch
from . import tags
from .category import FiniteCategory, Functor, discrete, product
from .search import guard

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]


class Duality(str, Enum):
    OP = "op"
    CO = "co"
    COOP = "coop"


@dataclass(frozen=True)
class Finite2Category:
    objects: Tuple[str, ...]
    hom: Dict[Pair, FiniteCategory]
    units: Dict[str, str]
    comp1: Dict[Pair, str]
    comp2: Dict[Pair, str]
    name: str = field(default="", compare=False)

    def __hash__(self) -> int:
        return hash(self.key)

    @cached_property
    def key(self) -> tuple:
        return (
            self.objects,
            tuple(sorted((ab, c.key) for ab, c in self.hom.items())),
            tuple(sorted(self.units.items())),
            tuple(sorted(self.comp1.items())),
            tuple(sorted(self.comp2.items())),
        )

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        hom: Mapping[Pair, FiniteCategory],
        units: Mapping[str, str],
        comp1: Mapping[Pair, str],
        comp2: Mapping[Pair, str],
        name: str = "",
    ) -> "Finite2Category":
        objects = tuple(sorted(objects))
        full = {}
        for a in objects:
            for b in objects:
                full[(a, b)] = hom.get((a, b)) or FiniteCategory((), {}, {}, {})
        guard(f"2-category {name or '(anonymous)'}", sum(len(c.morphisms) for c in full.values()))
        return cls(objects, full, dict(sorted(units.items())), dict(comp1), dict(comp2), name)

    # cells

    @cached_property
    def one_cells(self) -> Dict[str, Pair]:
        cells = {}
        for ab, c in sorted(self.hom.items()):
            for u in c.objects:
                cells[u] = ab
        return dict(sorted(cells.items()))

    @cached_property
    def two_cells(self) -> Dict[str, Pair]:
        """2-cell id -> (source 1-cell, target 1-cell)."""
        cells = {}
        for c in self.hom.values():
            cells.update(c.morphisms)
        return dict(sorted(cells.items()))

    @cached_property
    def _two_cell_hom(self) -> Dict[str, Pair]:
        return {m: ab for ab, c in self.hom.items() for m in c.morphisms}

    def src1(self, u: str) -> str:
        return self.one_cells[u][0]

    def tgt1(self, u: str) -> str:
        return self.one_cells[u][1]

    def src2(self, gamma: str) -> str:
        return self.two_cells[gamma][0]

    def tgt2(self, gamma: str) -> str:
        return self.two_cells[gamma][1]

    def hom_of(self, u: str) -> FiniteCategory:
        return self.hom[self.one_cells[u]]

    def hom_of_2cell(self, gamma: str) -> FiniteCategory:
        return self.hom[self._two_cell_hom[gamma]]

    @cached_property
    def unit_set(self) -> frozenset:
        return frozenset(self.units.values())

    def is_unit(self, u: str) -> bool:
        return u in self.unit_set

    def identity2(self, u: str) -> str:
        return self.hom_of(u).identity(u)

    def is_identity2(self, gamma: str) -> bool:
        return self.hom_of_2cell(gamma).is_identity(gamma)

    def compose1(self, g: str, f: str) -> str:
        try:
            return self.comp1[(g, f)]
        except KeyError:
            raise ShapeMismatch(f"1-cells {g} and {f} are not composable") from None

    def compose2(self, gamma: str, delta: str) -> str:
        """Horizontal composite gamma * delta."""
        try:
            return self.comp2[(gamma, delta)]
        except KeyError:
            raise ShapeMismatch(f"2-cells {gamma} and {delta} are not horizontally composable") from None

    def vcompose(self, gamma: str, delta: str) -> str:
        """Vertical composite gamma . delta (delta first)."""
        return self.hom_of_2cell(delta).compose(gamma, delta)

    def whisker_left(self, g: str, delta: str) -> str:
        """g * delta"""
        return self.compose2(self.identity2(g), delta)

    def whisker_right(self, gamma: str, f: str) -> str:
        """gamma * f"""
        return self.compose2(gamma, self.identity2(f))

    def inverse2(self, gamma: str) -> Optional[str]:
        return self.hom_of_2cell(gamma).inverse(gamma)

    def hcomp_functor(self, a: str, b: str, c: str) -> Functor:
        """Horizontal composition hom(b,c) x hom(a,b) -> hom(a,c) as a functor."""
        left, right = self.hom[(b, c)], self.hom[(a, b)]
        return Functor(
            product(left, right),
            self.hom[(a, c)],
            {tags.pair(g, f): self.comp1[(g, f)] for g in left.objects for f in right.objects},
            {tags.pair(x, y): self.comp2[(x, y)] for x in left.morphisms for y in right.morphisms},
        )

    def underlying(self) -> FiniteCategory:
        return FiniteCategory(
            objects=self.objects,
            morphisms=dict(self.one_cells),
            identities=dict(self.units),
            composition=dict(self.comp1),
            name=self.name,
        )

    def __repr__(self) -> str:
        return (
            f"Finite2Category({self.name or '?'}: {len(self.objects)} objects, "
            f"{len(self.one_cells)} 1-cells, {len(self.two_cells)} 2-cells)"
        )


def locally_discrete(c: FiniteCategory, name: str = "") -> Finite2Category:
    hom = {(a, b): discrete(c.hom(a, b)) for a in c.objects for b in c.objects}
    comp2 = {(tags.identity(g), tags.identity(f)): tags.identity(gf) for (g, f), gf in c.composition.items()}
    return Finite2Category.build(c.objects, hom, c.identities, c.composition, comp2, name=name or c.name)


def dualize(k: Finite2Category, mode: Duality) -> Finite2Category:
    mode = Duality(mode)
    if mode is Duality.COOP:
        return dualize(dualize(k, Duality.CO), Duality.OP)
    suffix = f"^{mode.value}"
    if mode is Duality.OP:
        return Finite2Category(
            objects=k.objects,
            hom={(a, b): k.hom[(b, a)] for (a, b) in k.hom},
            units=dict(k.units),
            comp1={(f, g): h for (g, f), h in k.comp1.items()},
            comp2={(d, c): h for (c, d), h in k.comp2.items()},
            name=k.name + suffix if k.name else "",
        )
    return Finite2Category(
        objects=k.objects,
        hom={ab: c.op() for ab, c in k.hom.items()},
        units=dict(k.units),
        comp1=dict(k.comp1),
        comp2=dict(k.comp2),
        name=k.name + suffix if k.name else "",
    )


def product_2category(a: Finite2Category, b: Finite2Category, name: str = "") -> Finite2Category:
    hom = {
        (tags.pair(x, y), tags.pair(x2, y2)): product(a.hom[(x, x2)], b.hom[(y, y2)])
        for x in a.objects
        for x2 in a.objects
        for y in b.objects
        for y2 in b.objects
    }
    comp1 = {
        (tags.pair(g, g2), tags.pair(f, f2)): tags.pair(gf, gf2)
        for (g, f), gf in a.comp1.items()
        for (g2, f2), gf2 in b.comp1.items()
    }
    comp2 = {
        (tags.pair(c, c2), tags.pair(d, d2)): tags.pair(cd, cd2)
        for (c, d), cd in a.comp2.items()
        for (c2, d2), cd2 in b.comp2.items()
    }
    units = {tags.pair(x, y): tags.pair(a.units[x], b.units[y]) for x in a.objects for y in b.objects}
    objects = [tags.pair(x, y) for x in a.objects for y in b.objects]
    return Finite2Category.build(objects, hom, units, comp1, comp2, name=name)


def terminal_category() -> FiniteCategory:
    return discrete(["*"], name="1")


def terminal_2category() -> Finite2Category:
    return locally_discrete(terminal_category(), name="1")


def walking_2cell() -> Finite2Category:
    """Two parallel 1-cells f, g: a -> b and one 2-cell delta: f => g."""
    hom_ab = FiniteCategory.build(
        ["f", "g"],
        {"id_f": ("f", "f"), "id_g": ("g", "g"), "delta": ("f", "g")},
        {"f": "id_f", "g": "id_g"},
        {
            ("id_f", "id_f"): "id_f",
            ("id_g", "id_g"): "id_g",
            ("delta", "id_f"): "delta",
            ("id_g", "delta"): "delta",
        },
    )
    hom = {
        ("a", "a"): discrete(["id_a"]),
        ("b", "b"): discrete(["id_b"]),
        ("a", "b"): hom_ab,
    }
    comp1 = {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b"}
    comp2 = {("id_id_a", "id_id_a"): "id_id_a", ("id_id_b", "id_id_b"): "id_id_b"}
    for u in ("f", "g"):
        comp1[(u, "id_a")] = u
        comp1[("id_b", u)] = u
    for gamma in hom_ab.morphisms:
        comp2[(gamma, "id_id_a")] = gamma
        comp2[("id_id_b", gamma)] = gamma
    return Finite2Category.build(["a", "b"], hom, {"a": "id_a", "b": "id_b"}, comp1, comp2, name="Cell")


@dataclass(frozen=True)
class TwoFunctor:
    src: Finite2Category
    tgt: Finite2Category
    on_obj: Dict[str, str]
    on_1: Dict[str, str]
    on_2: Dict[str, str]

    def __hash__(self) -> int:
        return hash(self.tag)

    @cached_property
    def tag(self) -> str:
        ones = tags.mapping(self.on_1, [u for u in self.on_1 if not self.src.is_unit(u)])
        twos = tags.mapping(self.on_2, [g for g in self.on_2 if not self.src.is_identity2(g)])
        return "{" + tags.mapping(self.on_obj) + "|" + ones + "|" + twos + "}"

    @property
    def base(self) -> Finite2Category:
        return self.src

    def obj(self, x: str) -> str:
        return self.on_obj[x]

    def one(self, u: str) -> str:
        return self.on_1[u]

    def two(self, gamma: str) -> str:
        return self.on_2[gamma]

    def underlying(self) -> Functor:
        return Functor(self.src.underlying(), self.tgt.underlying(), dict(self.on_obj), dict(self.on_1))

    def local(self, a: str, b: str) -> Functor:
        source = self.src.hom[(a, b)]
        return Functor(
            source,
            self.tgt.hom[(self.on_obj[a], self.on_obj[b])],
            {u: self.on_1[u] for u in source.objects},
            {g: self.on_2[g] for g in source.morphisms},
        )

    def after(self, other: "TwoFunctor") -> "TwoFunctor":
        """self . other"""
        if other.tgt != self.src:
            raise ShapeMismatch("2-functors are not composable")
        return TwoFunctor(
            other.src,
            self.tgt,
            {x: self.on_obj[y] for x, y in other.on_obj.items()},
            {u: self.on_1[v] for u, v in other.on_1.items()},
            {g: self.on_2[d] for g, d in other.on_2.items()},
        )

    def inverse(self) -> Optional["TwoFunctor"]:
        """The strict inverse, when every component map is a bijection."""
        maps = (self.on_obj, self.on_1, self.on_2)
        sizes = (len(self.tgt.objects), len(self.tgt.one_cells), len(self.tgt.two_cells))
        if any(len(set(m.values())) != len(m) or len(m) != n for m, n in zip(maps, sizes)):
            return None
        return TwoFunctor(
            self.tgt,
            self.src,
            {v: k for k, v in self.on_obj.items()},
            {v: k for k, v in self.on_1.items()},
            {v: k for k, v in self.on_2.items()},
        )

    def __repr__(self) -> str:
        return f"TwoFunctor({self.src.name or '?'} -> {self.tgt.name or '?'})"


def identity_two_functor(k: Finite2Category) -> TwoFunctor:
    return TwoFunctor(
        k,
        k,
        {x: x for x in k.objects},
        {u: u for u in k.one_cells},
        {g: g for g in k.two_cells},
    )


def constant_two_functor(src: Finite2Category, tgt: Finite2Category, x: str) -> TwoFunctor:
    unit = tgt.units[x]
    return TwoFunctor(
        src,
        tgt,
        {a: x for a in src.objects},
        {u: unit for u in src.one_cells},
        {g: tgt.identity2(unit) for g in src.two_cells},
    )


def assemble(
    objects: Iterable[str],
    one_cells: Mapping[str, Pair],
    two_cells: Mapping[str, Pair],
    identities2: Mapping[str, str],
    vertical: Mapping[Pair, str],
    units: Mapping[str, str],
    comp1: Mapping[Pair, str],
    comp2: Mapping[Pair, str],
    name: str = "",
) -> Finite2Category:
    """Group globally listed cells into hom-categories."""
    guard(f"2-category {name or '(anonymous)'}", len(two_cells))
    objects = sorted(objects)
    grouped = {(a, b): ([], {}, {}, {}) for a in objects for b in objects}
    for u, ab in one_cells.items():
        grouped[ab][0].append(u)
        grouped[ab][2][u] = identities2[u]
    for gamma, (u, v) in two_cells.items():
        grouped[one_cells[u]][1][gamma] = (u, v)
    for (gamma, delta), composite in vertical.items():
        grouped[one_cells[two_cells[delta][0]]][3][(gamma, delta)] = composite
    hom = {ab: FiniteCategory.build(*parts) for ab, parts in grouped.items()}
    return Finite2Category.build(objects, hom, units, comp1, comp2, name=name)
