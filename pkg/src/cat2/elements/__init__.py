"""The 2-category of elements, discrete 2-opfibrations and reconstruction."""

from .construction import ElementsResult, elements_cov, elements_op
from .functoriality import canonical_lambda, elements_2map, elements_map
from .opfibration import (
    SplitDiscrete2Opfib,
    certify,
    extract_cleavage,
    is_discrete_2opfibration,
    is_discrete_fibration,
    is_opcartesian,
    is_opfibration,
    opcartesian_lifts,
)
from .reconstruct import fibers, reconstruct, relabel_fibers
