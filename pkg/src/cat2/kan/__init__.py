"""Two-variable transformations, the parametrized Yoneda correspondence and lax Kan extensions."""

from .extension import (
    KanReport,
    default_u_probes,
    kan_cocylinder,
    lan_delta1_check,
    pointwise_kan_check,
    weak_kan_check,
)
from .twovar import (
    TwoVarModification,
    TwoVarTransformation,
    cartesian_marking,
    check_two_var,
    check_two_var_modification,
    enumerate_two_var,
    enumerate_two_var_modifications,
    hom_profunctor,
    pair_hom_diagram,
    two_var_hom_data,
)
from .yoneda import (
    ExtraordinaryLaxTransformation,
    ExtraordinaryModification,
    check_extraordinary,
    check_extraordinary_modification,
    enumerate_extraordinary,
    enumerate_extraordinary_modifications,
    extraordinary_hom_data,
    yoneda_check,
    yoneda_from_extraordinary,
    yoneda_modifications,
    yoneda_to_extraordinary,
)
