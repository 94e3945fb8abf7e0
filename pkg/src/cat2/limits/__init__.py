"""Weighted 2-limits, marked conical limits, their weights and marked oplax colimits."""

from .colimits import (
    PROBE_RELATIVE,
    cocylinder_data,
    cocylinder_image,
    default_probes,
    hom_into,
    is_marked_oplax_colimit,
    marked_oplax_cocylinder_category,
    opposite_marking,
    postcompose_with,
)
from .weighted import (
    LimitResult,
    conicalization_check,
    marked_lax_conical_limit,
    power_diagram,
    weighted_limit,
)
from .weights import weight_laxn, weight_laxn_equivalence_check, weight_oplaxn
