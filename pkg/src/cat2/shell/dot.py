"""DOT export of categories, 2-categories and 2-categories of elements.

Objects are nodes and non-identity 1-cells are edges. A 1-cell that bounds
a non-identity 2-cell is drawn through a point node at its midpoint, and
the 2-cell is a dashed edge between the two midpoints. Marked 1-cells are
bold.
"""

from typing import Dict, FrozenSet, List, Optional, Set, Tuple, Union

from ..comma.lax_comma import CommaResult
from ..elements.construction import ElementsResult
from ..kernel.category import FiniteCategory
from ..kernel.twocategory import Finite2Category

Exportable = Union[FiniteCategory, Finite2Category, ElementsResult, CommaResult]

MARKED_STYLE = 'style=bold, color="#1f5fbf"'


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _anchor(u: str) -> str:
    return _q(f"{u}@mid")


def export_dot(entity: Exportable, name: Optional[str] = None, marked: FrozenSet[str] = frozenset()) -> str:
    if isinstance(entity, ElementsResult):
        marked = marked | entity.marking.marked
        entity = entity.total
    elif isinstance(entity, CommaResult):
        entity = entity.total

    if isinstance(entity, FiniteCategory):
        objects = list(entity.objects)
        one_cells: Dict[str, Tuple[str, str]] = dict(entity.morphisms)
        units = set(entity.identities.values())
        two_cells: Dict[str, Tuple[str, str]] = {}
    else:
        objects = list(entity.objects)
        one_cells = dict(entity.one_cells)
        units = set(entity.units.values())
        two_cells = {g: uv for g, uv in entity.two_cells.items() if not entity.is_identity2(g)}

    anchored: Set[str] = {u for uv in two_cells.values() for u in uv}
    title = name or entity.name or "cat2"
    lines: List[str] = [f"digraph {_q(title)} {{"]
    for x in sorted(objects):
        lines.append(f"  {_q(x)};")
    for u in sorted(anchored):
        lines.append(f'  {_anchor(u)} [shape=point, label=""];')
    for u, (a, b) in sorted(one_cells.items(), key=lambda item: (item[1], item[0])):
        if u in units and u not in anchored:
            continue
        style = f", {MARKED_STYLE}" if u in marked and u not in units else ""
        if u in anchored:
            lines.append(f"  {_q(a)} -> {_anchor(u)} [label={_q(u)}, arrowhead=none{style}];")
            lines.append(f"  {_anchor(u)} -> {_q(b)} [{style.lstrip(', ')}];" if style else f"  {_anchor(u)} -> {_q(b)};")
        else:
            lines.append(f"  {_q(a)} -> {_q(b)} [label={_q(u)}{style}];")
    for g, (u, v) in sorted(two_cells.items()):
        lines.append(f"  {_anchor(u)} -> {_anchor(v)} [label={_q(g)}, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
