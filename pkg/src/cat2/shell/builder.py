"""Turning Document declarations into kernel entities.

Declarations are built on first use, so they may refer to each other in
any order. Anything that names an entity may also be an expression such as
elements(F0).projection; names not declared in the document fall back to
the built-in fixtures. Maps list images of generators only: images of
units, identities and composites are filled in from the composition tables.
"""

import json
import logging
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Set, Tuple, Union

from lark import Token

from ..comma.lax_comma import lax_comma, lax_comma_point, oplax_comma
from ..corpus import FIXTURES
from ..diagrams.algebra import CAT
from ..diagrams.diagram import CatValued2Functor, constant_diagram, fiber_op, hom_weight, representable
from ..diagrams.transformation import Flavor, Marking, Transformation, composite_structure, structure_ends
from ..elements.construction import ElementsResult, elements_cov, elements_op
from ..elements.opfibration import SplitDiscrete2Opfib, extract_cleavage
from ..elements.reconstruct import reconstruct
from ..errors import DanglingReference, ParseError, ShapeMismatch
from ..kan.twovar import hom_profunctor, pair_hom_diagram
from ..kernel.category import (
    FiniteCategory,
    Functor,
    NaturalTransformation,
    identity_functor,
    identity_transformation,
)
from ..kernel.twocategory import Duality, Finite2Category, TwoFunctor, assemble, dualize, locally_discrete
from ..limits.weights import weight_laxn
from .dsl import parse_expression
from .schema import (
    CategorySpec,
    DiagramSpec,
    Document,
    FunctorSpec,
    MarkingSpec,
    NatSpec,
    OpfibrationSpec,
    TransformationSpec,
    TwoCategorySpec,
    TwoFunctorSpec,
)

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]
Spec = Union[
    CategorySpec,
    TwoCategorySpec,
    FunctorSpec,
    NatSpec,
    DiagramSpec,
    TwoFunctorSpec,
    MarkingSpec,
    TransformationSpec,
    OpfibrationSpec,
]


def _dual(x, mode: Duality):
    if isinstance(x, FiniteCategory):
        if mode is Duality.CO:
            raise ShapeMismatch("co applies to 2-categories")
        return x.op()
    if isinstance(x, Finite2Category):
        return dualize(x, mode)
    raise ShapeMismatch(f"cannot dualize {type(x).__name__}")


def as_opfibration(x) -> SplitDiscrete2Opfib:
    """An opfibration from an opfibration, an elements result or a 2-functor (least split cleavage)."""
    if isinstance(x, SplitDiscrete2Opfib):
        return x
    if isinstance(x, ElementsResult):
        return x.opfib
    if isinstance(x, TwoFunctor):
        return extract_cleavage(x)
    raise ShapeMismatch(f"{type(x).__name__} is not an opfibration")


Kind = Union[type, Tuple[type, ...]]
OPFIBRATIONS = (SplitDiscrete2Opfib, ElementsResult, TwoFunctor)


def _checked(name: str, fn: Callable[..., Any], *kinds: Kind) -> Tuple[str, Callable[..., Any]]:
    """fn behind a check of its argument count and kinds."""

    def call(*args: Any) -> Any:
        if len(args) != len(kinds):
            raise ParseError(f"{name} takes {len(kinds)} argument(s), got {len(args)}")
        for i, (value, kind) in enumerate(zip(args, kinds), start=1):
            if not isinstance(value, kind):
                raise ShapeMismatch(f"argument {i} of {name} cannot be a {type(value).__name__}")
        return fn(*args)

    return name, call


FUNCTIONS: Dict[str, Callable[..., Any]] = dict(
    [
        _checked("elements", elements_op, CatValued2Functor),
        _checked("elements_cov", elements_cov, CatValued2Functor),
        _checked("lax_comma", lax_comma, TwoFunctor, TwoFunctor),
        _checked("oplax_comma", oplax_comma, TwoFunctor, TwoFunctor),
        _checked("lax_comma_point", lax_comma_point, CatValued2Functor),
        _checked("constant", constant_diagram, Finite2Category, FiniteCategory),
        _checked("representable", representable, Finite2Category, str),
        _checked("hom_weight", hom_weight, TwoFunctor, str),
        _checked("fiber_op", fiber_op, CatValued2Functor),
        _checked("weight_laxn", weight_laxn, CatValued2Functor),
        _checked(
            "hom_profunctor",
            lambda k: hom_profunctor(k if isinstance(k, TwoFunctor) else as_opfibration(k).k),
            OPFIBRATIONS,
        ),
        _checked("pair_hom", pair_hom_diagram, CatValued2Functor, CatValued2Functor),
        _checked("opfib", as_opfibration, OPFIBRATIONS),
        _checked("reconstruct", lambda p: reconstruct(as_opfibration(p))[0], OPFIBRATIONS),
        _checked("locally_discrete", locally_discrete, FiniteCategory),
        _checked("underlying", lambda k: k.underlying(), (Finite2Category, TwoFunctor)),
        _checked("op", lambda x: _dual(x, Duality.OP), (FiniteCategory, Finite2Category)),
        _checked("co", lambda x: _dual(x, Duality.CO), (FiniteCategory, Finite2Category)),
        _checked("coop", lambda x: _dual(x, Duality.COOP), (FiniteCategory, Finite2Category)),
    ]
)

ATTRIBUTES = frozenset(
    {"total", "projection", "opfib", "marking", "base", "d0", "d1", "lam", "k", "diagram", "limit", "src", "tgt"}
)


def complete(values: Dict[str, Any], tables: Iterable[Tuple[Mapping[Pair, str], Callable[[Any, Any], Any]]]) -> Dict[str, Any]:
    """Fill in composites from the images of their factors until nothing changes."""
    tables = list(tables)
    changed = True
    while changed:
        changed = False
        for table, combine in tables:
            for (second, first), composite in table.items():
                if composite not in values and second in values and first in values:
                    values[composite] = combine(values[second], values[first])
                    changed = True
    return values


def resolve_path(c: FiniteCategory, path: str, where: str = "") -> str:
    """A morphism named directly, or a "then"-ordered dotted path composed in c."""
    if path in c.morphisms:
        return path
    result = None
    for part in path.split("."):
        if part not in c.morphisms:
            raise DanglingReference(part, where or c.name)
        if result is None:
            result = part
        elif (part, result) in c.composition:
            result = c.composition[(part, result)]
        else:
            raise ParseError(f"path {path} is not composable in {c.name or where}")
    return result


def _vertical_tables(k: Finite2Category):
    for hom in k.hom.values():
        yield hom.composition


class Environment:
    """Entities of one document, built lazily by name."""

    def __init__(self, document: Document):
        self.document = document
        self.specs: Dict[str, Tuple[str, Spec]] = {spec.name: (kind, spec) for kind, spec in document.declarations()}
        self.entities: Dict[str, Any] = {}
        self._building: Set[str] = set()

    def declared(self, kind: Optional[str] = None):
        """Names of declarations, optionally of one kind, in document order."""
        return [name for name, (k, _) in self.specs.items() if kind is None or k == kind]

    def lookup(self, name: str) -> Any:
        if name in self.entities:
            return self.entities[name]
        if name in self.specs:
            if name in self._building:
                raise ParseError(f"'{name}' refers to itself")
            self._building.add(name)
            try:
                kind, spec = self.specs[name]
                entity = getattr(self, f"_build_{kind}")(spec)
            finally:
                self._building.discard(name)
            self.entities[name] = entity
            logger.debug("built %s %s", kind, name)
            return entity
        if name in FIXTURES:
            entity = FIXTURES[name]()
            self.entities[name] = entity
            return entity
        raise DanglingReference(name)

    # expressions

    def evaluate(self, text: str) -> Any:
        if text in self.specs or text in self.entities:
            return self.lookup(text)
        return self._eval(parse_expression(text))

    def _eval(self, tree) -> Any:
        if isinstance(tree, Token):
            return self.lookup(str(tree))
        if tree.data == "ref":
            return self.lookup(str(tree.children[0]))
        if tree.data == "literal":
            return json.loads(str(tree.children[0]))
        if tree.data == "call":
            name, *args = tree.children
            if str(name) not in FUNCTIONS:
                raise DanglingReference(str(name), "expression")
            return FUNCTIONS[str(name)](*(self._eval(a) for a in args if a is not None))
        head, *attrs = tree.children
        value = self._eval(head)
        for attr in attrs:
            if str(attr) not in ATTRIBUTES or not hasattr(value, str(attr)):
                raise ParseError(f"{type(value).__name__} has no attribute '{attr}'")
            value = getattr(value, str(attr))
        return value

    def _typed(self, text: str, kind: type, what: str) -> Any:
        value = self.evaluate(text)
        if not isinstance(value, kind):
            raise ShapeMismatch(f"{text} is not a {what}")
        return value

    def category(self, text: str) -> FiniteCategory:
        return self._typed(text, FiniteCategory, "category")

    def two_category(self, text: str) -> Finite2Category:
        return self._typed(text, Finite2Category, "2-category")

    def functor(self, text: str) -> Functor:
        return self._typed(text, Functor, "functor")

    def diagram(self, text: str) -> CatValued2Functor:
        return self._typed(text, CatValued2Functor, "Cat-valued 2-functor")

    # declarations

    def _build_categories(self, spec: CategorySpec) -> FiniteCategory:
        arrows = {a.name: (a.src, a.tgt) for a in spec.arrows}
        for name, (a, b) in arrows.items():
            for x in (a, b):
                if x not in spec.objects:
                    raise DanglingReference(x, f"category {spec.name}")
        return FiniteCategory.build(
            spec.objects, arrows, spec.identities, {(g, f): gf for g, f, gf in spec.composition}, name=spec.name
        )

    def _build_two_categories(self, spec: TwoCategorySpec) -> Finite2Category:
        where = f"2-category {spec.name}"
        one_cells = {a.name: (a.src, a.tgt) for a in spec.one_cells}
        two_cells = {a.name: (a.src, a.tgt) for a in spec.two_cells}
        for a, b in one_cells.values():
            for x in (a, b):
                if x not in spec.objects:
                    raise DanglingReference(x, where)
        for u, v in two_cells.values():
            for x in (u, v):
                if x not in one_cells:
                    raise DanglingReference(x, where)
        for u in one_cells:
            if u not in spec.identities2:
                raise DanglingReference(f"id of {u}", where)
        return assemble(
            spec.objects,
            one_cells,
            two_cells,
            spec.identities2,
            {(g, f): gf for g, f, gf in spec.vertical},
            spec.units,
            {(g, f): gf for g, f, gf in spec.comp1},
            {(g, f): gf for g, f, gf in spec.comp2},
            name=spec.name,
        )

    def _build_functors(self, spec: FunctorSpec) -> Functor:
        where = f"functor {spec.name}"
        c, d = self.category(spec.src), self.category(spec.tgt)
        on_obj = dict(spec.on_obj)
        for x in c.objects:
            if x not in on_obj:
                raise ShapeMismatch(f"{where} leaves object {x} unassigned")
        on_mor = {c.identity(x): d.identity(on_obj[x]) for x in c.objects}
        on_mor.update({m: resolve_path(d, path, where) for m, path in spec.on_arrows.items()})
        complete(on_mor, [(c.composition, lambda g, f: d.compose(g, f))])
        missing = sorted(set(c.morphisms) - set(on_mor))
        if missing:
            raise ShapeMismatch(f"{where} leaves arrow {missing[0]} unassigned")
        return Functor(c, d, on_obj, on_mor)

    def _build_natural_transformations(self, spec: NatSpec) -> NaturalTransformation:
        f, g = self.functor(spec.src), self.functor(spec.tgt)
        where = f"nat {spec.name}"
        components = {x: resolve_path(f.tgt, path, where) for x, path in spec.components.items()}
        for x in f.src.objects:
            if x not in components:
                raise ShapeMismatch(f"{where} has no component at {x}")
        return NaturalTransformation(f, g, components)

    def _nat_at(self, value, src: Functor, tgt: Functor, where: str) -> NaturalTransformation:
        if isinstance(value, str):
            nat = self._typed(value, NaturalTransformation, "natural transformation")
            if nat.src != src or nat.tgt != tgt:
                raise ShapeMismatch(f"{value} has the wrong boundary in {where}")
            return nat
        return NaturalTransformation(src, tgt, {x: resolve_path(tgt.tgt, p, where) for x, p in value.items()})

    def _build_diagrams(self, spec: DiagramSpec) -> CatValued2Functor:
        where = f"diagram {spec.name}"
        base = self.two_category(spec.base)
        on_obj = {}
        for b in base.objects:
            if b not in spec.on_obj:
                raise ShapeMismatch(f"{where} leaves object {b} unassigned")
            on_obj[b] = self.category(spec.on_obj[b])
        on_1 = {u: identity_functor(on_obj[b]) for b, u in base.units.items()}
        on_1.update({u: self.functor(name) for u, name in spec.on_1.items()})
        complete(on_1, [(base.comp1, lambda g, f: g.after(f))])
        missing = sorted(set(base.one_cells) - set(on_1))
        if missing:
            raise ShapeMismatch(f"{where} leaves 1-cell {missing[0]} unassigned")

        on_2 = {base.identity2(u): identity_transformation(on_1[u]) for u in base.one_cells}
        for gamma, value in spec.on_2.items():
            u, v = base.two_cells[gamma]
            on_2[gamma] = self._nat_at(value, on_1[u], on_1[v], where)
        tables = [(t, lambda a, b: a.after(b)) for t in _vertical_tables(base)]
        tables.append((base.comp2, CAT.hcompose))
        complete(on_2, tables)
        missing = sorted(set(base.two_cells) - set(on_2))
        if missing:
            raise ShapeMismatch(f"{where} leaves 2-cell {missing[0]} unassigned")
        return CatValued2Functor(base, on_obj, on_1, on_2, name=spec.name)

    def _build_two_functors(self, spec: TwoFunctorSpec) -> TwoFunctor:
        where = f"2-functor {spec.name}"
        a, b = self.two_category(spec.src), self.two_category(spec.tgt)
        on_obj = dict(spec.on_obj)
        for x in a.objects:
            if x not in on_obj:
                raise ShapeMismatch(f"{where} leaves object {x} unassigned")
        underlying = b.underlying()
        on_1 = {u: b.units[on_obj[x]] for x, u in a.units.items()}
        on_1.update({u: resolve_path(underlying, path, where) for u, path in spec.on_1.items()})
        complete(on_1, [(a.comp1, b.compose1)])
        on_2 = {a.identity2(u): b.identity2(on_1[u]) for u in a.one_cells if u in on_1}
        for gamma, path in spec.on_2.items():
            on_2[gamma] = resolve_path(b.hom_of(on_1[a.src2(gamma)]), path, where)
        tables = [(t, b.vcompose) for t in _vertical_tables(a)]
        tables.append((a.comp2, b.compose2))
        complete(on_2, tables)
        for cells, known, kind in ((a.one_cells, on_1, "1-cell"), (a.two_cells, on_2, "2-cell")):
            missing = sorted(set(cells) - set(known))
            if missing:
                raise ShapeMismatch(f"{where} leaves {kind} {missing[0]} unassigned")
        return TwoFunctor(a, b, on_obj, on_1, on_2)

    def _build_markings(self, spec: MarkingSpec) -> Marking:
        carrier = self.two_category(spec.carrier)
        for u in spec.marked:
            if u not in carrier.one_cells:
                raise DanglingReference(u, f"marking {spec.name}")
        marked = set(spec.marked) | set(carrier.units.values())
        changed = True
        while changed:
            changed = False
            for (g, f), gf in carrier.comp1.items():
                if g in marked and f in marked and gf not in marked:
                    marked.add(gf)
                    changed = True
        return Marking(carrier, frozenset(marked))

    def _build_transformations(self, spec: TransformationSpec) -> Transformation:
        where = f"transformation {spec.name}"
        m, n = self.diagram(spec.src), self.diagram(spec.tgt)
        if m.base != n.base:
            raise ShapeMismatch(f"{where} joins diagrams over different bases")
        base, flavor = m.base, Flavor(spec.flavor)
        marking = self._typed(spec.marking, Marking, "marking") if spec.marking else None
        components = {b: self.functor(name) for b, name in spec.components.items()}
        for b in base.objects:
            if b not in components:
                raise ShapeMismatch(f"{where} has no component at {b}")

        def ends(u: str):
            b, c = base.one_cells[u]
            return structure_ends(CAT, m, n, flavor, u, components[b], components[c])

        structure = {u: identity_transformation(ends(u)[0]) for u in base.units.values()}
        for u, value in spec.structure.items():
            if u not in base.one_cells:
                raise DanglingReference(u, where)
            structure[u] = self._nat_at(value, *ends(u), where)
        changed = True
        while changed:
            changed = False
            for (v, u), vu in base.comp1.items():
                if vu not in structure and u in structure and v in structure:
                    structure[vu] = composite_structure(CAT, m, n, flavor, v, u, structure[v], structure[u])
                    changed = True
        for u in base.one_cells:
            if u not in structure:
                src, tgt = ends(u)
                if src != tgt:
                    raise ShapeMismatch(f"{where} needs a structure cell at {u}")
                structure[u] = identity_transformation(src)
        return Transformation(flavor, m, n, components, structure, marking, name=spec.name)

    def _build_opfibrations(self, spec: OpfibrationSpec) -> SplitDiscrete2Opfib:
        value = self.evaluate(spec.functor)
        if spec.cleavage is None:
            return as_opfibration(value)
        k = value if isinstance(value, TwoFunctor) else as_opfibration(value).k
        return SplitDiscrete2Opfib(k, {(e, u): m for e, u, m in spec.cleavage})
