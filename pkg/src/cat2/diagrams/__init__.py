"""Cat-valued 2-functors, transformations of every flavor, modifications and pasting."""

from .algebra import CAT, CatCells, TwoCells, algebra_of, two_cells_of
from .diagram import (
    CatValued2Functor,
    Diagram,
    constant_diagram,
    fiber_op,
    hom_weight,
    precompose,
    representable,
)
from .pasting import (
    interchange_modification,
    join_flavors,
    paste,
    postcompose_transformation,
    precompose_transformation,
    vertical,
)
from .transformation import (
    Flavor,
    HomData,
    Marking,
    Modification,
    Transformation,
    check_marking,
    check_modification,
    category_of,
    check_transformation,
    enumerate_modifications,
    enumerate_transformations,
    hom_category,
    hom_data,
    hom_data_of,
    identity_modification,
    identity_transformation_of,
    sigma_hom_data,
)
