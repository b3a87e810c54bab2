"""doe-forge: design-of-experiments point sets, metrics, and export.

Classical designs (factorial, central composite, Box-Behnken, Doehlert,
orthogonal arrays), random and quasi-random samplers (Latin hypercube,
CVT, Sobol, Halton, Hammersley, Faure), hierarchical sparse grids with
interpolation and quadrature, plus space-filling metrics and a CLI.
"""

from .classical import (
    CcdVariant,
    OrthogonalArray,
    box_behnken,
    builtin_arrays,
    central_composite,
    doehlert,
    fractional_factorial,
    full_factorial,
    load_oa_csv,
    oa_lhs,
    oa_verify,
)
from .core import (
    CODED,
    UNIT_CUBE,
    DesignSpace,
    RandomStream,
    SampleSet,
    make_stream,
    scale_to_domain,
    to_unit_cube,
)
from .grids import (
    GridLevelSpec,
    NodeSet1D,
    QuadratureWeights,
    RotationSpec,
    cgl_nodes,
    cgl_weights,
    full_grid,
    lagrange_interpolate,
    optimize_rotation,
    rotate_points,
    rotation_matrix,
    smolyak_interpolate,
    sparse_grid,
    sparse_quadrature,
)
from .io import TOOL_VERSION as __version__
from .io import read_points, regenerate, write_points
from .metrics import (
    MetricReport,
    centered_l2_discrepancy,
    maximin_distance,
    mse,
    star_discrepancy_smallcase,
)
from .quasirandom import (
    CvtConfig,
    SobolParams,
    cvt,
    faure,
    halton,
    hammersley,
    lhs_basic,
    lhs_maximin,
    sobol,
)
from .randoms import MhConfig, metropolis_hastings, uniform_random

__all__ = [
    "CODED",
    "UNIT_CUBE",
    "CcdVariant",
    "CvtConfig",
    "DesignSpace",
    "GridLevelSpec",
    "MetricReport",
    "MhConfig",
    "NodeSet1D",
    "OrthogonalArray",
    "QuadratureWeights",
    "RandomStream",
    "RotationSpec",
    "SampleSet",
    "SobolParams",
    "box_behnken",
    "builtin_arrays",
    "central_composite",
    "centered_l2_discrepancy",
    "cgl_nodes",
    "cgl_weights",
    "cvt",
    "doehlert",
    "faure",
    "fractional_factorial",
    "full_factorial",
    "full_grid",
    "halton",
    "hammersley",
    "lagrange_interpolate",
    "lhs_basic",
    "lhs_maximin",
    "load_oa_csv",
    "make_stream",
    "maximin_distance",
    "metropolis_hastings",
    "mse",
    "oa_lhs",
    "oa_verify",
    "optimize_rotation",
    "read_points",
    "regenerate",
    "rotate_points",
    "rotation_matrix",
    "scale_to_domain",
    "smolyak_interpolate",
    "sobol",
    "sparse_grid",
    "sparse_quadrature",
    "star_discrepancy_smallcase",
    "to_unit_cube",
    "uniform_random",
    "write_points",
]
