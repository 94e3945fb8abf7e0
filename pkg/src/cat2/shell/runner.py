"""Running the tasks of a document.

Each task names an operation and its arguments, checked against the kinds
the operation expects. A task that raises is recorded as failed with the
error's type and message; later tasks still run. Anything other than a
Cat2Error is also logged with its traceback.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from ..comma.fibred import elements_lax_comma_iso, equivalence_check
from ..comma.lax_comma import CommaResult, lax_comma, lax_comma_point
from ..comma.universal import check_lax_comma_object
from ..diagrams.diagram import CatValued2Functor
from ..diagrams.transformation import Flavor, Marking, Transformation, hom_data
from ..elements.construction import ElementsResult, elements_cov, elements_op
from ..elements.opfibration import SplitDiscrete2Opfib, certify, is_discrete_2opfibration
from ..elements.reconstruct import reconstruct, relabel_fibers
from ..errors import Cat2Error, ParseError, ShapeMismatch
from ..kan.extension import KanReport, default_u_probes, lan_delta1_check, pointwise_kan_check, weak_kan_check
from ..kan.yoneda import yoneda_check
from ..kernel.category import FiniteCategory
from ..kernel.twocategory import Finite2Category, TwoFunctor
from ..kernel.validation import ValidationReport, iso_of_2categories, validate, violation
from ..limits.colimits import is_marked_oplax_colimit
from ..limits.weighted import LimitResult, conicalization_check, marked_lax_conical_limit, weighted_limit
from ..limits.weights import weight_laxn_equivalence_check
from .builder import OPFIBRATIONS, Environment, Kind, as_opfibration
from .schema import Document, ErrorInfo, Report, TaskResult, TaskSpec

logger = logging.getLogger(__name__)

Outcome = Union[ValidationReport, KanReport]


@dataclass
class Probes:
    """Probe families; None keeps each check's default family."""

    categories: Optional[List[FiniteCategory]] = None
    two_categories: Optional[List[Finite2Category]] = None


@dataclass
class TaskContext:
    env: Environment
    task: TaskSpec
    probes: Probes
    exports: Dict[str, Any] = field(default_factory=dict)

    def ref(self, key: str, kind: Kind = object) -> Any:
        if key not in self.task.args:
            raise ParseError(f"task {self.task.op} needs the argument '{key}'")
        value = self.env.evaluate(self.task.args[key])
        if not isinstance(value, kind):
            raise ShapeMismatch(f"argument '{key}' of {self.task.op} cannot be a {type(value).__name__}")
        return value

    def has(self, key: str) -> bool:
        return key in self.task.args

    def flavor(self, default: Flavor = Flavor.LAX) -> Flavor:
        raw = self.task.args.get("flavor")
        try:
            return Flavor(raw.replace("_", "-")) if raw else default
        except ValueError:
            raise ParseError(f"unknown flavor '{raw}'") from None

    def flag(self, key: str) -> bool:
        return self.task.args.get(key, "false").lower() in ("true", "yes", "1")


def _counted(report: ValidationReport, **counts: int) -> ValidationReport:
    return ValidationReport.of(report.violations, {**report.counts, **counts}, report.notes)


def _category_counts(c: FiniteCategory) -> Dict[str, int]:
    return {"objects": len(c.objects), "morphisms": len(c.morphisms)}


def _two_category_counts(k: Finite2Category) -> Dict[str, int]:
    return {"objects": len(k.objects), "morphisms": len(k.one_cells), "2-cells": len(k.two_cells)}


def _validate(ctx: TaskContext) -> Outcome:
    x = ctx.ref("x")
    if isinstance(x, ElementsResult):
        x = x.total
    if isinstance(x, SplitDiscrete2Opfib):
        return certify(x)
    if isinstance(x, (FiniteCategory, Finite2Category)):
        ctx.exports["result"] = x
    return validate(x)


def _elements(construction: Callable[[CatValued2Functor], ElementsResult]) -> Callable[[TaskContext], Outcome]:
    def run(ctx: TaskContext) -> Outcome:
        result = construction(ctx.ref("f", CatValued2Functor))
        ctx.exports["result"] = result
        return _counted(validate(result.total), **_two_category_counts(result.total))

    return run


def _check_opfib(ctx: TaskContext) -> Outcome:
    k = ctx.ref("k", OPFIBRATIONS)
    if isinstance(k, TwoFunctor):
        return is_discrete_2opfibration(k)
    return certify(as_opfibration(k))


def _reconstruct(ctx: TaskContext) -> Outcome:
    if ctx.has("f"):
        f = ctx.ref("f", CatValued2Functor)
        g, iso = reconstruct(elements_op(f).opfib)
        found = [] if g == relabel_fibers(f) else [violation("roundtrip", f.name or "F")]
        report = ValidationReport.of(found)
    else:
        g, iso = reconstruct(as_opfibration(ctx.ref("k", OPFIBRATIONS)))
        report = ValidationReport.of([])
    report = report.merge(validate(g)).merge(iso_of_2categories(iso))
    return _counted(report, **{f"fiber:{b}": len(g.obj(b).objects) for b in g.base.objects})


def _hom(ctx: TaskContext) -> Outcome:
    marking = ctx.ref("marking", Marking) if ctx.has("marking") else None
    data = hom_data(ctx.ref("f", CatValued2Functor), ctx.ref("g", CatValued2Functor), ctx.flavor(), marking)
    ctx.exports["result"] = data.category
    return _counted(validate(data.category), **_category_counts(data.category))


def _limit(result: LimitResult, ctx: TaskContext) -> Outcome:
    ctx.exports["result"] = result.limit
    report = result.report.merge(validate(result.limit))
    return _counted(report, **_category_counts(result.limit))


def _weighted_limit(ctx: TaskContext) -> Outcome:
    return _limit(weighted_limit(ctx.ref("w", CatValued2Functor), ctx.ref("f", CatValued2Functor)), ctx)


def _conical_limit(ctx: TaskContext) -> Outcome:
    return _limit(marked_lax_conical_limit(ctx.ref("marking", Marking), ctx.ref("f", CatValued2Functor)), ctx)


def _conicalization(ctx: TaskContext) -> Outcome:
    return _limit(conicalization_check(ctx.ref("w", CatValued2Functor), ctx.ref("f", CatValued2Functor)), ctx)


def _weight_laxn(ctx: TaskContext) -> Outcome:
    return _limit(weight_laxn_equivalence_check(ctx.ref("z", CatValued2Functor), ctx.ref("f", CatValued2Functor)), ctx)


def _colimit(ctx: TaskContext) -> Outcome:
    return is_marked_oplax_colimit(
        ctx.ref("marking", Marking),
        ctx.ref("w", CatValued2Functor),
        ctx.ref("f", CatValued2Functor),
        ctx.ref("candidate", FiniteCategory),
        ctx.ref("mu", Transformation),
        ctx.probes.categories,
    )


def _lan_delta1(ctx: TaskContext) -> Outcome:
    return lan_delta1_check(ctx.ref("f", CatValued2Functor), ctx.probes.categories)


def _pointwise_kan(ctx: TaskContext) -> Outcome:
    p = as_opfibration(ctx.ref("p", OPFIBRATIONS))
    f, l = ctx.ref("f", CatValued2Functor), ctx.ref("l", CatValued2Functor)
    return pointwise_kan_check(p, f, l, ctx.ref("lam", Transformation), ctx.probes.categories)


def _weak_kan(ctx: TaskContext) -> Outcome:
    k = ctx.ref("k", OPFIBRATIONS)
    k = k if isinstance(k, TwoFunctor) else as_opfibration(k).k
    f, l = ctx.ref("f", CatValued2Functor), ctx.ref("l", CatValued2Functor)
    probes_u = None if ctx.probes.categories is None else default_u_probes(l, ctx.probes.categories)
    return weak_kan_check(k, f, l, ctx.ref("lam", Transformation), probes_u, restricted=ctx.flag("restricted"))


def _yoneda(ctx: TaskContext) -> Outcome:
    return yoneda_check(as_opfibration(ctx.ref("p", OPFIBRATIONS)), ctx.ref("f", CatValued2Functor))


def _equivalence(ctx: TaskContext) -> Outcome:
    return equivalence_check(ctx.ref("f", CatValued2Functor), ctx.ref("g", CatValued2Functor), ctx.flavor())


def _lax_comma(ctx: TaskContext) -> Outcome:
    if ctx.has("g"):
        comma: CommaResult = lax_comma(ctx.ref("f", TwoFunctor), ctx.ref("g", TwoFunctor))
    else:
        comma = lax_comma_point(ctx.ref("f", CatValued2Functor))
    ctx.exports["result"] = comma.total
    report = check_lax_comma_object(comma, ctx.probes.two_categories)
    return _counted(report, **_two_category_counts(comma.total))


def _elements_comma(ctx: TaskContext) -> Outcome:
    return elements_lax_comma_iso(ctx.ref("f", CatValued2Functor))


OPERATIONS: Dict[str, Callable[[TaskContext], Outcome]] = {
    "validate": _validate,
    "elements": _elements(elements_op),
    "elements-cov": _elements(elements_cov),
    "check-opfib": _check_opfib,
    "reconstruct": _reconstruct,
    "hom": _hom,
    "weighted-limit": _weighted_limit,
    "conical-limit": _conical_limit,
    "conicalization": _conicalization,
    "weight-laxn": _weight_laxn,
    "colimit": _colimit,
    "lan-delta1": _lan_delta1,
    "pointwise-kan": _pointwise_kan,
    "weak-kan": _weak_kan,
    "yoneda": _yoneda,
    "equivalence": _equivalence,
    "lax-comma": _lax_comma,
    "elements-comma": _elements_comma,
}


def _result(task: TaskSpec, outcome: Outcome) -> TaskResult:
    if isinstance(outcome, KanReport):
        return TaskResult(
            op=task.op,
            args=task.args,
            passed=outcome.passed,
            notes=outcome.notes,
            per_object=outcome.per_object or None,
            per_probe=outcome.per_probe or None,
        )
    return TaskResult(
        op=task.op,
        args=task.args,
        passed=outcome.passed,
        counts=outcome.counts,
        violations=outcome.violations,
        notes=outcome.notes,
    )


def _failed(task: TaskSpec, e: Exception) -> TaskResult:
    return TaskResult(op=task.op, args=task.args, passed=False, error=ErrorInfo(type=type(e).__name__, message=str(e)))


def run_task(env: Environment, task: TaskSpec, probes: Probes) -> Tuple[TaskResult, Dict[str, Any]]:
    ctx = TaskContext(env, task, probes)
    try:
        if task.op not in OPERATIONS:
            raise ParseError(f"unknown operation '{task.op}'", expected=sorted(OPERATIONS))
        result = _result(task, OPERATIONS[task.op](ctx))
    except Cat2Error as e:
        logger.info("task %s failed: %s", task.op, e)
        result = _failed(task, e)
    except Exception as e:
        logger.exception("task %s crashed", task.op)
        result = _failed(task, e)
    return result, ctx.exports


def run(
    document: Document, probes: Optional[Probes] = None, timing: bool = True
) -> Tuple[Report, Dict[str, Any]]:
    """Run every task in order; returns the report and the entities worth exporting, by name."""
    probes = probes or Probes()
    env = Environment(document)
    results: List[TaskResult] = []
    seconds: Dict[str, float] = {}
    exports: Dict[str, Any] = {}
    for i, task in enumerate(document.tasks):
        started = time.perf_counter()
        result, produced = run_task(env, task, probes)
        seconds[f"{i}:{task.op}"] = round(time.perf_counter() - started, 6)
        results.append(result)
        for entity in produced.values():
            exports[f"task{i}-{task.op}"] = entity
    for kind in ("categories", "two_categories"):
        for name in env.declared(kind):
            try:
                exports[name] = env.lookup(name)
            except Cat2Error as e:
                logger.warning("cannot export %s: %s", name, e)
    report = Report(passed=all(r.passed for r in results), tasks=results, timing=seconds if timing else None)
    return report, exports
