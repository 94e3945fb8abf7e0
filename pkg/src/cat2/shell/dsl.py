"""The line-oriented declaration language.

    category Two { objects: a b; arrows: f: a -> b }
    category Iso { objects: a b; arrows: i: a -> b, j: b -> a; relations: i.j = id_a, j.i = id_b }
    twocategory Cell { objects: a b; arrows: f: a -> b, g: a -> b; cells: m: f => g }
    functor P : One -> Two { * = 0 }
    nat N : P => Q { * = s }
    diagram F0 : B -> Cat { on a = One; on b = Two; on f = P }
    twofunctor K : E -> B { e = a; u = f }
    marking M on B { f }
    transformation T : D1 => DTwo as marked_lax by M { a = P; b = Q; on f = [*: s] }
    opfibration P = elements(F0).projection
    task check-opfib (k = elements(F0).projection)

"." in a path means "then": f.g is g after f. Lines starting with # are
comments.
"""

import logging
from typing import Dict, List, Set, Tuple

from lark import Lark, Token, Transformer, Tree, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from ..corpus import FIXTURES
from ..diagrams.transformation import Flavor
from ..errors import Cat2Error, DanglingReference, ParseError
from ..kernel.category import FiniteCategory
from ..kernel.twocategory import Finite2Category
from .presentation import Presentation, Relation, close_category, close_two_category
from .schema import (
    DiagramSpec,
    Document,
    FunctorSpec,
    MarkingSpec,
    NatSpec,
    OpfibrationSpec,
    TaskSpec,
    TransformationSpec,
    TwoFunctorSpec,
)

logger = logging.getLogger(__name__)

GRAMMAR = r"""
start: decl*

?decl: category | twocategory | functor | nat | diagram | twofunctor
     | marking | transformation | opfibration | task

category: "category" NAME "{" [items] "}"
twocategory: "twocategory" NAME "{" [items] "}"
items: item (";" item)* ";"?
?item: "objects" ":" NAME* -> objects
     | "arrows" ":" arrow_decl ("," arrow_decl)* -> arrows
     | "relations" ":" relation ("," relation)* -> relations
     | "cells" ":" cell_decl ("," cell_decl)* -> cells
arrow_decl: NAME ":" NAME "->" NAME
relation: path "=" path
cell_decl: NAME ":" path "=>" path
path: NAME ("." NAME)*

functor: "functor" NAME ":" NAME "->" NAME "{" [assignments] "}"
nat: "nat" NAME ":" NAME "=>" NAME "{" [assignments] "}"
twofunctor: "twofunctor" NAME ":" NAME "->" NAME "{" [assignments] "}"
assignments: assignment (";" assignment)* ";"?
assignment: NAME "=" path

diagram: "diagram" NAME ":" NAME "->" "Cat" "{" [ons] "}"
transformation: "transformation" NAME ":" NAME "=>" NAME "as" NAME ["by" NAME] "{" [ons] "}"
ons: on (";" on)* ";"?
on: "on" NAME "=" value
  | NAME "=" value -> component
value: NAME -> named
     | "[" [inline ("," inline)*] "]" -> inline_components
inline: NAME ":" path

marking: "marking" NAME "on" NAME "{" [NAME ("," NAME)*] "}"
opfibration: "opfibration" NAME "=" expr

task: "task" NAME "(" [arg ("," arg)*] ")"
arg: NAME "=" expr

expr: atom ("." NAME)*
atom: NAME -> ref
    | ESCAPED_STRING -> literal
    | NAME "(" [expr ("," expr)*] ")" -> call

NAME: /[A-Za-z0-9_*](?:[A-Za-z0-9_'*]|-(?!>))*/
COMMENT: /#[^\n]*/

%import common.ESCAPED_STRING
%import common.WS
%ignore WS
%ignore COMMENT
"""

_parser = Lark(GRAMMAR, start=["start", "expr"], parser="earley", propagate_positions=True)


def _path(tree: Tree) -> List[str]:
    return [str(t) for t in tree.children]


def _dotted(tree: Tree) -> str:
    return ".".join(_path(tree))


def unparse(tree) -> str:
    """Canonical text of an expression tree."""
    if isinstance(tree, Token):
        return str(tree)
    if tree.data in ("ref", "literal"):
        return str(tree.children[0])
    if tree.data == "call":
        name, *args = tree.children
        return f"{name}(" + ", ".join(unparse(a) for a in args if a is not None) + ")"
    head, *attrs = tree.children
    return ".".join([unparse(head)] + [str(a) for a in attrs])


class _Collect(Transformer):
    """Closes presentations as they are read and keeps the other declarations raw."""

    def __init__(self):
        super().__init__()
        self.found: Dict[str, list] = {}
        self.raw: List[tuple] = []

    def _add(self, kind: str, spec) -> None:
        self.found.setdefault(kind, []).append(spec)

    def objects(self, children):
        return ("objects", [str(c) for c in children])

    def arrows(self, children):
        return ("arrows", [tuple(str(t) for t in a.children) for a in children])

    def relations(self, children):
        return ("relations", [Relation(_path(r.children[0]), _path(r.children[1]), r.meta.line) for r in children])

    def cells(self, children):
        return ("cells", [(str(c.children[0]), _path(c.children[1]), _path(c.children[2])) for c in children])

    def items(self, children):
        return children

    @staticmethod
    def _presentation(name: Token, items, line: int) -> Presentation:
        p = Presentation(str(name), [], {}, line=line)
        for kind, values in items or []:
            if kind == "objects":
                p.objects.extend(values)
            elif kind == "arrows":
                for g, a, b in values:
                    p.generators[g] = (a, b)
            elif kind == "relations":
                p.relations.extend(values)
            else:
                for cell, src, tgt in values:
                    p.cells[cell] = (src, tgt)
        return p

    @v_args(meta=True)
    def category(self, meta, children):
        name, items = children
        p = self._presentation(name, items, meta.line)
        if p.cells:
            raise ParseError(f"category {name} declares cells; use twocategory", meta.line)
        self._add("categories", close_category(p))

    @v_args(meta=True)
    def twocategory(self, meta, children):
        name, items = children
        self._add("two_categories", close_two_category(self._presentation(name, items, meta.line)))

    def assignments(self, children):
        return {str(a.children[0]): _dotted(a.children[1]) for a in children}

    @v_args(meta=True)
    def functor(self, meta, children):
        name, src, tgt, mapping = children
        self.raw.append(("functor", str(name), str(src), str(tgt), mapping or {}, meta.line))

    def nat(self, children):
        name, src, tgt, mapping = children
        self._add("natural_transformations", NatSpec(name=str(name), src=str(src), tgt=str(tgt), components=mapping or {}))

    @v_args(meta=True)
    def twofunctor(self, meta, children):
        name, src, tgt, mapping = children
        self.raw.append(("twofunctor", str(name), str(src), str(tgt), mapping or {}, meta.line))

    def named(self, children):
        return str(children[0])

    def inline_components(self, children):
        return {str(i.children[0]): _dotted(i.children[1]) for i in children if i is not None}

    def on(self, children):
        return ("on", str(children[0]), children[1])

    def component(self, children):
        return ("component", str(children[0]), children[1])

    def ons(self, children):
        return children

    @v_args(meta=True)
    def diagram(self, meta, children):
        name, base, entries = children
        mapping = {}
        for kind, key, value in entries or []:
            if kind != "on":
                raise ParseError(f"entries of diagram {name} start with 'on'", meta.line)
            mapping[key] = value
        self.raw.append(("diagram", str(name), str(base), None, mapping, meta.line))

    @v_args(meta=True)
    def transformation(self, meta, children):
        name, src, tgt, flavor, marking, entries = children
        try:
            flavor = Flavor(str(flavor).replace("_", "-"))
        except ValueError:
            raise ParseError(f"unknown flavor '{flavor}'", meta.line) from None
        components, structure = {}, {}
        for kind, key, value in entries or []:
            if kind == "on":
                structure[key] = value
            elif isinstance(value, str):
                components[key] = value
            else:
                raise ParseError(f"component {key} of {name} must name a functor", meta.line)
        spec = TransformationSpec(
            name=str(name),
            flavor=flavor,
            src=str(src),
            tgt=str(tgt),
            marking=str(marking) if marking is not None else None,
            components=components,
            structure=structure,
        )
        self._add("transformations", spec)

    def marking(self, children):
        name, carrier, *marked = children
        marked = [str(m) for m in marked if m is not None]
        self._add("markings", MarkingSpec(name=str(name), carrier=str(carrier), marked=marked))

    def opfibration(self, children):
        name, expr = children
        self._add("opfibrations", OpfibrationSpec(name=str(name), functor=unparse(expr)))

    def arg(self, children):
        return str(children[0]), unparse(children[1])

    def task(self, children):
        op, *args = children
        self._add("tasks", TaskSpec(op=str(op), args=dict(a for a in args if a is not None)))


Shape = Tuple[Set[str], Set[str], Set[str]]


def _shapes(found: Dict[str, list]) -> Dict[str, Shape]:
    """Objects, 1-cells and 2-cells of every category-like name in scope."""
    shapes: Dict[str, Shape] = {}
    for name, make in FIXTURES.items():
        value = make()
        if isinstance(value, FiniteCategory):
            shapes[name] = (set(value.objects), set(value.morphisms), set())
        elif isinstance(value, Finite2Category):
            shapes[name] = (set(value.objects), set(value.one_cells), set(value.two_cells))
    for c in found.get("categories", []):
        shapes[c.name] = ({*c.objects}, {a.name for a in c.arrows}, set())
    for k in found.get("two_categories", []):
        shapes[k.name] = ({*k.objects}, {a.name for a in k.one_cells}, {a.name for a in k.two_cells})
    return shapes


def _route(mapping: dict, shape: Shape, where: str, line: int) -> Tuple[dict, dict, dict]:
    objects, ones, twos = shape
    routed: Tuple[dict, dict, dict] = ({}, {}, {})
    for key, value in mapping.items():
        if key in objects:
            routed[0][key] = value
        elif key in ones:
            routed[1][key] = value
        elif key in twos:
            routed[2][key] = value
        else:
            raise DanglingReference(key, where)
    for key, value in list(routed[0].items()) + list(routed[1].items()):
        if not isinstance(value, str):
            raise ParseError(f"{key} in {where} must name a single entity", line)
    return routed


def _finish(collect: _Collect) -> Document:
    found = collect.found
    shapes = _shapes(found)
    for kind, name, src, tgt, mapping, line in collect.raw:
        if src not in shapes:
            raise DanglingReference(src, f"{kind} {name}")
        on_obj, on_1, on_2 = _route(mapping, shapes[src], f"{kind} {name}", line)
        if kind == "functor":
            collect._add("functors", FunctorSpec(name=name, src=src, tgt=tgt, on_obj=on_obj, on_arrows=on_1))
        elif kind == "twofunctor":
            spec = TwoFunctorSpec(name=name, src=src, tgt=tgt, on_obj=on_obj, on_1=on_1, on_2=on_2)
            collect._add("two_functors", spec)
        else:
            collect._add("diagrams", DiagramSpec(name=name, base=src, on_obj=on_obj, on_1=on_1, on_2=on_2))
    return Document(**found)


def _expected(e: UnexpectedInput) -> List[str]:
    if isinstance(e, (UnexpectedToken, UnexpectedEOF)):
        return sorted(e.expected)
    if isinstance(e, UnexpectedCharacters):
        return sorted(e.allowed or [])
    return []


def _parse_error(message: str, e: UnexpectedInput) -> ParseError:
    return ParseError(message, getattr(e, "line", 0) or 0, getattr(e, "column", 0) or 0, _expected(e))


def parse_dsl(text: str) -> Document:
    """Parse DSL text into a Document, closing every presentation."""
    try:
        tree = _parser.parse(text, start="start")
    except UnexpectedInput as e:
        raise _parse_error("unexpected input", e) from None
    collect = _Collect()
    try:
        collect.transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, Cat2Error):
            raise e.orig_exc from None
        raise
    document = _finish(collect)
    logger.debug("parsed %d declarations and %d tasks", sum(1 for _ in document.declarations()), len(document.tasks))
    return document


def parse_expression(text: str) -> Tree:
    """The tree of a task argument or opfibration expression."""
    try:
        return _parser.parse(text, start="expr")
    except UnexpectedInput as e:
        raise _parse_error(f"bad expression '{text}'", e) from None
