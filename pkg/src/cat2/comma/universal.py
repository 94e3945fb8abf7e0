"""The universal property of a lax comma object, checked against probe 2-categories.

For a probe M the check enumerates every datum of each dimension and
counts the cells of the comma that factor it:

  1-cells:  lax gamma: L P => R Q against strict V: M -> comma
  2-cells:  (Gamma, Delta, Xi) against lax nu: V => W
  3-cells:  (Phi, Psi) satisfying the compatibility with lam, against Theta: nu => omega

Each datum needs exactly one factorization. Passing is relative to the probes.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from ..diagrams.diagram import precompose
from ..diagrams.pasting import (
    interchange_modification,
    postcompose_transformation,
    precompose_transformation,
    vertical,
)
from ..diagrams.transformation import (
    Flavor,
    Modification,
    Transformation,
    enumerate_modifications,
    enumerate_transformations,
)
from ..errors import FlavorMismatch, NoFactorization, NonUnique
from ..kernel.category import arrow_category
from ..kernel.enumeration import enumerate_two_functors
from ..kernel.twocategory import (
    Finite2Category,
    TwoFunctor,
    locally_discrete,
    terminal_2category,
    walking_2cell,
)
from ..kernel.validation import ValidationReport, Violation, violation
from ..limits.colimits import PROBE_RELATIVE
from .lax_comma import CommaResult

logger = logging.getLogger(__name__)

Key = Tuple[str, ...]


def default_comma_probes() -> List[Finite2Category]:
    return [terminal_2category(), locally_discrete(arrow_category()), walking_2cell()]


def _tally(
    data: Dict[Key, str], images: Dict[Key, List[str]], probe: str, dimension: str
) -> List[Violation]:
    found = []
    for key, datum in sorted(data.items()):
        hits = sorted(images.get(key, []))
        if not hits:
            found.append(violation("no-factorization", probe, dimension, datum))
        elif len(hits) > 1:
            found.append(violation("non-unique", probe, dimension, hits[0], hits[1]))
    return found


def _project(d: TwoFunctor, t: Transformation) -> Transformation:
    return postcompose_transformation(d, t)


def _one_dimensional(c: CommaResult, m: Finite2Category, name: str) -> Tuple[List[Violation], int]:
    a_base, b_base = c.d0.tgt, c.d1.tgt
    data: Dict[Key, str] = {}
    for p in enumerate_two_functors(m, a_base):
        for q in enumerate_two_functors(m, b_base):
            for gamma in enumerate_transformations(precompose(c.left, p), precompose(c.right, q), Flavor.LAX):
                data[(p.tag, q.tag, gamma.tag)] = gamma.tag
    images: Dict[Key, List[str]] = {}
    for v in enumerate_two_functors(m, c.total):
        key = (c.d0.after(v).tag, c.d1.after(v).tag, precompose_transformation(c.lam, v).tag)
        images.setdefault(key, []).append(v.tag)
    return _tally(data, images, name, "1-cells"), len(data)


def _is_strict(t: Transformation) -> bool:
    return all(t.algebra.is_identity2(s) for s in t.structure.values())


def _is_pseudo(t: Transformation) -> bool:
    return all(t.algebra.inverse2(s) is not None for s in t.structure.values())


def _two_dimensional(
    c: CommaResult, m: Finite2Category, maps: Sequence[TwoFunctor], name: str
) -> Tuple[List[Violation], int]:
    found: List[Violation] = []
    total = 0
    for v in maps:
        for w in maps:
            data: Dict[Key, str] = {}
            kinds: Dict[Key, Tuple[bool, bool]] = {}
            before, after = c.d0.after(v), c.d0.after(w)
            for gamma in enumerate_transformations(before, after, Flavor.LAX):
                for delta in enumerate_transformations(c.d1.after(v), c.d1.after(w), Flavor.LAX):
                    source = vertical(
                        postcompose_transformation(c.right, delta), precompose_transformation(c.lam, v)
                    )
                    target = vertical(precompose_transformation(c.lam, w), postcompose_transformation(c.left, gamma))
                    for xi in enumerate_modifications(source, target):
                        key = (gamma.tag, delta.tag, xi.tag)
                        data[key] = "|".join(key)
                        kinds[key] = (
                            _is_strict(gamma) and _is_strict(delta),
                            _is_pseudo(gamma) and _is_pseudo(delta),
                        )
            images: Dict[Key, List[str]] = {}
            factors: Dict[Key, Transformation] = {}
            for nu in enumerate_transformations(v, w, Flavor.LAX):
                key = (_project(c.d0, nu).tag, _project(c.d1, nu).tag, interchange_modification(nu, c.lam).tag)
                images.setdefault(key, []).append(nu.tag)
                factors[key] = nu
            found.extend(_tally(data, images, name, "2-cells"))
            for key, (strict, pseudo) in sorted(kinds.items()):
                nu = factors.get(key)
                if nu is None:
                    continue
                if strict and not _is_strict(nu):
                    found.append(violation("strictness-clause", name, nu.tag))
                if pseudo and not _is_pseudo(nu):
                    found.append(violation("pseudo-clause", name, nu.tag))
            total += len(data)
    return found, total


def _third_holds(
    c: CommaResult, nu: Transformation, omega: Transformation, phi: Modification, psi: Modification
) -> bool:
    """lam_omega . (R Psi * lam V) = (lam W * L Phi) . lam_nu, objectwise."""
    alg = c.lam.algebra
    v, w = nu.src, nu.tgt
    for x in v.src.objects:
        lam_v, lam_w = c.lam.components[v.obj(x)], c.lam.components[w.obj(x)]
        lhs = alg.vcompose(
            c.lam.structure[omega.components[x]], alg.whisker_right(c.right.two(psi.components[x]), lam_v)
        )
        rhs = alg.vcompose(alg.whisker_left(lam_w, c.left.two(phi.components[x])), c.lam.structure[nu.components[x]])
        if lhs != rhs:
            return False
    return True


def _three_dimensional(c: CommaResult, maps: Sequence[TwoFunctor], name: str) -> Tuple[List[Violation], int]:
    found: List[Violation] = []
    total = 0
    for v in maps:
        for w in maps:
            cells = enumerate_transformations(v, w, Flavor.LAX)
            for nu in cells:
                for omega in cells:
                    first0, second0 = _project(c.d0, nu), _project(c.d0, omega)
                    first1, second1 = _project(c.d1, nu), _project(c.d1, omega)
                    data: Dict[Key, str] = {}
                    for phi in enumerate_modifications(first0, second0):
                        for psi in enumerate_modifications(first1, second1):
                            if _third_holds(c, nu, omega, phi, psi):
                                data[(phi.tag, psi.tag)] = f"{phi.tag}|{psi.tag}"
                    images: Dict[Key, List[str]] = {}
                    for theta in enumerate_modifications(nu, omega):
                        key = (
                            Modification(first0, second0, {x: c.d0.two(g) for x, g in theta.components.items()}).tag,
                            Modification(first1, second1, {x: c.d1.two(g) for x, g in theta.components.items()}).tag,
                        )
                        images.setdefault(key, []).append(theta.tag)
                    found.extend(_tally(data, images, name, "3-cells"))
                    total += len(data)
    return found, total


def check_lax_comma_object(
    c: CommaResult,
    probes: Optional[Sequence[Finite2Category]] = None,
    raise_on_failure: bool = False,
) -> ValidationReport:
    """Unique factorization in every dimension, for every probe 2-category."""
    if c.lam.flavor is not Flavor.LAX:
        raise FlavorMismatch("the universal property is stated for the lax comma")
    probes = default_comma_probes() if probes is None else probes
    found: List[Violation] = []
    counts: Dict[str, int] = {}
    for m in probes:
        name = m.name or "probe"
        maps = list(enumerate_two_functors(m, c.total))
        ones, n1 = _one_dimensional(c, m, name)
        twos, n2 = _two_dimensional(c, m, maps, name)
        threes, n3 = _three_dimensional(c, maps, name)
        counts[f"{name}:1-cells"] = n1
        counts[f"{name}:2-cells"] = n2
        counts[f"{name}:3-cells"] = n3
        found.extend(ones + twos + threes)
    report = ValidationReport.of(found, counts, [PROBE_RELATIVE])
    if raise_on_failure and not report.passed:
        first = report.violations[0]
        if first.law == "non-unique":
            raise NonUnique(f"{first.witness[1]} factor twice on probe {first.witness[0]}", *first.witness[2:4])
        if first.law == "no-factorization":
            message = f"{first.witness[1]} datum does not factor on probe {first.witness[0]}"
            raise NoFactorization(message, first.witness[2])
    logger.info("lax comma object check over %d probes: %s", len(probes), "pass" if report.passed else "fail")
    return report
