"""Documents and reports exchanged by the shell.

A Document holds declarations with explicit composition tables plus an
ordered task list. Declarations are kept sorted by name so the JSON form is
canonical; tasks keep their order.
"""

from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..diagrams.transformation import Flavor
from ..kernel.validation import ValidationReport, Violation

Triple = Tuple[str, str, str]
Components = Dict[str, str]


class Spec(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ArrowSpec(Spec):
    name: str
    src: str
    tgt: str


class CategorySpec(Spec):
    name: str
    objects: List[str]
    arrows: List[ArrowSpec] = Field(description="Every morphism, identities included")
    identities: Dict[str, str]
    composition: List[Triple] = Field(default_factory=list, description="(second, first, composite)")

    @model_validator(mode="after")
    def canonical(self) -> "CategorySpec":
        self.objects = sorted(self.objects)
        self.arrows = sorted(self.arrows, key=lambda a: a.name)
        self.composition = sorted(self.composition)
        return self


class TwoCategorySpec(Spec):
    name: str
    objects: List[str]
    one_cells: List[ArrowSpec]
    units: Dict[str, str]
    comp1: List[Triple] = Field(default_factory=list)
    two_cells: List[ArrowSpec] = Field(default_factory=list, description="src and tgt are 1-cells")
    identities2: Dict[str, str]
    vertical: List[Triple] = Field(default_factory=list)
    comp2: List[Triple] = Field(default_factory=list)

    @model_validator(mode="after")
    def canonical(self) -> "TwoCategorySpec":
        self.objects = sorted(self.objects)
        self.one_cells = sorted(self.one_cells, key=lambda a: a.name)
        self.two_cells = sorted(self.two_cells, key=lambda a: a.name)
        for table in ("comp1", "vertical", "comp2"):
            setattr(self, table, sorted(getattr(self, table)))
        return self


class FunctorSpec(Spec):
    """Images of objects and of generating arrows; arrow images are paths in the target."""

    name: str
    src: str
    tgt: str
    on_obj: Dict[str, str]
    on_arrows: Dict[str, str] = Field(default_factory=dict)


class NatSpec(Spec):
    name: str
    src: str
    tgt: str
    components: Components


class DiagramSpec(Spec):
    """A Cat-valued 2-functor: categories, functor names and 2-cell images (a nat name or inline components)."""

    name: str
    base: str
    on_obj: Dict[str, str]
    on_1: Dict[str, str] = Field(default_factory=dict)
    on_2: Dict[str, Union[str, Components]] = Field(default_factory=dict)


class TwoFunctorSpec(Spec):
    name: str
    src: str
    tgt: str
    on_obj: Dict[str, str]
    on_1: Dict[str, str] = Field(default_factory=dict)
    on_2: Dict[str, str] = Field(default_factory=dict)


class MarkingSpec(Spec):
    name: str
    carrier: str
    marked: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def canonical(self) -> "MarkingSpec":
        self.marked = sorted(set(self.marked))
        return self


class TransformationSpec(Spec):
    name: str
    flavor: Flavor
    src: str
    tgt: str
    marking: Optional[str] = None
    components: Components
    structure: Dict[str, Union[str, Components]] = Field(default_factory=dict)


class OpfibrationSpec(Spec):
    """A 2-functor with an explicit cleavage (e, u, lift), or the least split one when omitted."""

    name: str
    functor: str
    cleavage: Optional[List[Triple]] = None

    @model_validator(mode="after")
    def canonical(self) -> "OpfibrationSpec":
        if self.cleavage is not None:
            self.cleavage = sorted(self.cleavage)
        return self


class TaskSpec(Spec):
    op: str
    args: Dict[str, str] = Field(default_factory=dict)


DECLARATION_KINDS = (
    "categories",
    "two_categories",
    "functors",
    "natural_transformations",
    "diagrams",
    "two_functors",
    "markings",
    "transformations",
    "opfibrations",
)


class Document(Spec):
    categories: List[CategorySpec] = Field(default_factory=list)
    two_categories: List[TwoCategorySpec] = Field(default_factory=list)
    functors: List[FunctorSpec] = Field(default_factory=list)
    natural_transformations: List[NatSpec] = Field(default_factory=list)
    diagrams: List[DiagramSpec] = Field(default_factory=list)
    two_functors: List[TwoFunctorSpec] = Field(default_factory=list)
    markings: List[MarkingSpec] = Field(default_factory=list)
    transformations: List[TransformationSpec] = Field(default_factory=list)
    opfibrations: List[OpfibrationSpec] = Field(default_factory=list)
    tasks: List[TaskSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def canonical(self) -> "Document":
        seen = set()
        for kind in DECLARATION_KINDS:
            entries = sorted(getattr(self, kind), key=lambda d: d.name)
            for entry in entries:
                if entry.name in seen:
                    raise ValueError(f"'{entry.name}' is declared twice")
                seen.add(entry.name)
            setattr(self, kind, entries)
        return self

    def declarations(self):
        for kind in DECLARATION_KINDS:
            for entry in getattr(self, kind):
                yield kind, entry


class ErrorInfo(BaseModel):
    type: str
    message: str


class TaskResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    op: str
    args: Dict[str, str] = Field(default_factory=dict)
    passed: bool = Field(alias="pass")
    counts: Dict[str, int] = Field(default_factory=dict)
    violations: List[Violation] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    per_object: Optional[Dict[str, ValidationReport]] = None
    per_probe: Optional[Dict[str, ValidationReport]] = None
    error: Optional[ErrorInfo] = None


class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    passed: bool = Field(alias="pass")
    tasks: List[TaskResult] = Field(default_factory=list)
    timing: Optional[Dict[str, float]] = None

    def to_json(self) -> dict:
        return self.model_dump(by_alias=True, exclude_none=True)
