"""Finite categories, finite strict 2-categories and their validation."""

from .category import (
    FiniteCategory,
    Functor,
    NaturalTransformation,
    arrow_category,
    commutative_square,
    coslice_category,
    discrete,
    empty_category,
    identity_functor,
    identity_transformation,
    point,
    product,
    slice_category,
    walking_iso,
)
from .enumeration import (
    FunctorCategory,
    enumerate_functors,
    enumerate_natural_transformations,
    enumerate_two_functors,
    functor_category,
)
from .twocategory import (
    Duality,
    Finite2Category,
    TwoFunctor,
    constant_two_functor,
    dualize,
    identity_two_functor,
    locally_discrete,
    product_2category,
    terminal_2category,
    terminal_category,
    walking_2cell,
)
from .validation import ValidationReport, Violation, iso_of_2categories, iso_of_categories, validate

__all__ = [
    "Duality",
    "Finite2Category",
    "FiniteCategory",
    "Functor",
    "FunctorCategory",
    "NaturalTransformation",
    "TwoFunctor",
    "ValidationReport",
    "Violation",
    "arrow_category",
    "commutative_square",
    "constant_two_functor",
    "coslice_category",
    "discrete",
    "dualize",
    "empty_category",
    "enumerate_functors",
    "enumerate_natural_transformations",
    "enumerate_two_functors",
    "functor_category",
    "identity_functor",
    "identity_transformation",
    "identity_two_functor",
    "iso_of_2categories",
    "iso_of_categories",
    "locally_discrete",
    "point",
    "product",
    "product_2category",
    "slice_category",
    "terminal_2category",
    "terminal_category",
    "validate",
    "walking_2cell",
    "walking_iso",
]
