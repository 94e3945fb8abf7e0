"""Lax commas, their universal property and the elements construction as a comma."""

from .fibred import (
    SliceArrow,
    cartesian_functor_check,
    cleavage_preserving_check,
    elements_lax_comma_iso,
    equivalence_check,
    slice_hom,
)
from .lax_comma import CommaResult, lax_comma, lax_comma_point, oplax_comma, point_diagram
from .universal import check_lax_comma_object, default_comma_probes
