"""Closing free presentations into explicit composition tables.

A presentation is a set of objects, generating arrows and relations between
paths. Paths are tuples of generators in the order they are applied. The
relations are oriented by shortlex order and completed into a confluent
rewriting system; the irreducible paths are then the morphisms. A path is
named by its generators joined with ".", an empty path at x by id_x.

Declared 2-cells are closed into a locally posetal 2-category: there is at
most one 2-cell between two 1-cells, and one exists whenever the declared
cells, their whiskerings and their composites connect them.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Set, Tuple

from ..config import current_limits
from ..errors import ClosureDiverged, DanglingReference, ParseError
from ..kernel import tags
from .schema import ArrowSpec, CategorySpec, TwoCategorySpec

logger = logging.getLogger(__name__)

Word = Tuple[str, ...]
Rule = Tuple[Word, Word]


@dataclass
class Relation:
    lhs: List[str]
    rhs: List[str]
    line: int = 0


@dataclass
class Presentation:
    name: str
    objects: List[str]
    generators: Dict[str, Tuple[str, str]]
    relations: List[Relation] = field(default_factory=list)
    cells: Dict[str, Tuple[List[str], List[str]]] = field(default_factory=dict)
    line: int = 0


def _shortlex(word: Word) -> Tuple[int, Word]:
    return (len(word), word)


def _orient(a: Word, b: Word) -> Rule:
    return (a, b) if _shortlex(a) > _shortlex(b) else (b, a)


def _find(word: Word, part: Word) -> int:
    n = len(part)
    for i in range(len(word) - n + 1):
        if word[i : i + n] == part:
            return i
    return -1


def rewrite(word: Word, rules: Sequence[Rule]) -> Word:
    """Normal form of a word; terminates since every rule decreases shortlex order."""
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules:
            i = _find(word, lhs)
            if i >= 0:
                word = word[:i] + rhs + word[i + len(lhs) :]
                changed = True
                break
    return word


def _critical_pairs(first: Rule, second: Rule) -> List[Tuple[Word, Word]]:
    (l1, r1), (l2, r2) = first, second
    pairs = []
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            pairs.append((r1 + l2[k:], l1[:-k] + r2))
    if first != second:
        i = _find(l1, l2)
        if i >= 0:
            pairs.append((r1, l1[:i] + r2 + l1[i + len(l2) :]))
    return pairs


def complete(relations: Sequence[Tuple[Word, Word]], name: str) -> List[Rule]:
    """Knuth-Bendix completion, bounded by the closure cap."""
    cap = current_limits().max_closure
    rules: List[Rule] = []
    queue = list(relations)
    steps = 0
    while queue:
        steps += 1
        if steps > cap * cap:
            raise ClosureDiverged(name, cap)
        a, b = queue.pop(0)
        a, b = rewrite(a, rules), rewrite(b, rules)
        if a == b:
            continue
        rule = _orient(a, b)
        rules.append(rule)
        if len(rules) > cap:
            raise ClosureDiverged(name, cap)
        for other in rules:
            queue.extend(_critical_pairs(rule, other))
            if other is not rule:
                queue.extend(_critical_pairs(other, rule))
    logger.debug("%s: %d rewrite rules after completion", name, len(rules))
    return rules


class ClosedCategory:
    """The category presented by generators and relations, with paths resolved to morphism names."""

    def __init__(self, p: Presentation):
        self.p = p
        where = f"category {p.name}"
        for g, (a, b) in sorted(p.generators.items()):
            for x in (a, b):
                if x not in p.objects:
                    raise DanglingReference(x, where)
        relations = []
        for r in p.relations:
            left, right = self.typed(r.lhs, r.line), self.typed(r.rhs, r.line)
            if left[1:] != right[1:]:
                raise ParseError(f"relation sides are not parallel in {p.name}", r.line)
            relations.append((left[0], right[0]))
        self.rules = complete(relations, p.name)
        self.normal: Dict[Tuple[str, Word], Tuple[str, str]] = {}
        self._enumerate()

    def typed(self, path: Sequence[str], line: int = 0) -> Tuple[Word, str, str]:
        """Word, source and target of a path in "then" order; id_x stands for the empty path at x."""
        word: List[str] = []
        src = tgt = None
        for token in path:
            if token in self.p.generators:
                a, b = self.p.generators[token]
                if tgt is not None and tgt != a:
                    raise ParseError(f"path {'.'.join(path)} is not composable in {self.p.name}", line)
                src = a if src is None else src
                tgt = b
                word.append(token)
            elif token.startswith("id_") and token[3:] in self.p.objects:
                x = token[3:]
                if tgt is not None and tgt != x:
                    raise ParseError(f"path {'.'.join(path)} is not composable in {self.p.name}", line)
                src = x if src is None else src
                tgt = x
            else:
                raise DanglingReference(token, f"category {self.p.name}")
        return tuple(word), src, tgt

    def _enumerate(self) -> None:
        cap = current_limits().max_closure
        frontier = []
        for x in self.p.objects:
            self.normal[(x, ())] = (x, x)
            frontier.append((x, ()))
        while frontier:
            following = []
            for x, word in frontier:
                end = self.normal[(x, word)][1]
                for g, (a, b) in sorted(self.p.generators.items()):
                    if a != end:
                        continue
                    extended = word + (g,)
                    if rewrite(extended, self.rules) != extended or (x, extended) in self.normal:
                        continue
                    self.normal[(x, extended)] = (x, b)
                    if len(self.normal) > cap:
                        raise ClosureDiverged(self.p.name, cap)
                    following.append((x, extended))
            frontier = following

    @staticmethod
    def name_of(x: str, word: Word) -> str:
        return ".".join(word) if word else tags.identity(x)

    def resolve(self, path: Sequence[str], line: int = 0) -> str:
        word, src, _ = self.typed(path, line)
        return self.name_of(src, rewrite(word, self.rules))

    def compose_words(self, x: str, first: Word, second: Word) -> str:
        return self.name_of(x, rewrite(first + second, self.rules))

    def spec(self) -> CategorySpec:
        arrows = [ArrowSpec(name=self.name_of(x, w), src=a, tgt=b) for (x, w), (a, b) in self.normal.items()]
        composition = []
        for (x, first), (_, mid) in self.normal.items():
            for (y, second), _ in self.normal.items():
                if y == mid:
                    composition.append(
                        (self.name_of(y, second), self.name_of(x, first), self.compose_words(x, first, second))
                    )
        return CategorySpec(
            name=self.p.name,
            objects=list(self.p.objects),
            arrows=arrows,
            identities={x: tags.identity(x) for x in self.p.objects},
            composition=composition,
        )


def close_category(p: Presentation) -> CategorySpec:
    return ClosedCategory(p).spec()


def close_two_category(p: Presentation) -> TwoCategorySpec:
    """The locally posetal 2-category generated by the declared cells over the closed 1-category."""
    closed = ClosedCategory(p)
    c = closed.spec()
    cap = current_limits().max_closure
    ends = {a.name: (a.src, a.tgt) for a in c.arrows}
    compose = {(g, f): gf for g, f, gf in c.composition}

    named: Dict[Tuple[str, str], str] = {}
    related: Set[Tuple[str, str]] = set()
    for cell, (src, tgt) in sorted(p.cells.items()):
        u, v = closed.resolve(src, p.line), closed.resolve(tgt, p.line)
        if ends[u] != ends[v]:
            raise ParseError(f"cell {cell} joins 1-cells that are not parallel", p.line)
        if u == v or (u, v) in named:
            raise ParseError(f"cell {cell} collapses with another cell in the locally posetal closure", p.line)
        named[(u, v)] = cell
        related.add((u, v))

    def outer(u: str) -> List[Tuple[str, str]]:
        """(x, y) with y . u . x defined."""
        a, b = ends[u]
        before = [x for x, (_, t) in ends.items() if t == a]
        after = [y for y, (s, _) in ends.items() if s == b]
        return [(x, y) for x in before for y in after]

    changed = True
    while changed:
        changed = False
        for u, v in sorted(related):
            for x, y in outer(u):
                pair = (compose[(y, compose[(u, x)])], compose[(y, compose[(v, x)])])
                if pair[0] != pair[1] and pair not in related:
                    related.add(pair)
                    changed = True
        for u, v in sorted(related):
            for v2, w in sorted(related):
                if v2 == v and u != w and (u, w) not in related:
                    related.add((u, w))
                    changed = True
        if len(related) > cap:
            raise ClosureDiverged(p.name, cap)

    def cell_name(u: str, v: str) -> str:
        if u == v:
            return tags.identity(u)
        return named.get((u, v), f"{u}=>{v}")

    pairs = sorted(related | {(u, u) for u in ends})
    cells = [ArrowSpec(name=cell_name(u, v), src=u, tgt=v) for u, v in pairs]
    vertical = []
    for u, v in pairs:
        for v2, w in pairs:
            if v2 == v:
                vertical.append((cell_name(v, w), cell_name(u, v), cell_name(u, w)))
    comp2 = []
    for u, v in pairs:
        for u2, v2 in pairs:
            if ends[u2][0] == ends[u][1]:
                comp2.append((cell_name(u2, v2), cell_name(u, v), cell_name(compose[(u2, u)], compose[(v2, v)])))
    return TwoCategorySpec(
        name=p.name,
        objects=c.objects,
        one_cells=c.arrows,
        units=c.identities,
        comp1=c.composition,
        two_cells=cells,
        identities2={u: tags.identity(u) for u in ends},
        vertical=vertical,
        comp2=comp2,
    )
