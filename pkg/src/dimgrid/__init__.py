"""Grid-based intrinsic dimension estimation for point clouds.

The library quantizes a cloud onto a cubic grid, counts Moore-neighbor
interactions between occupied cells, and reads the intrinsic dimension
off the resulting connectivity statistics: either against closed-form
bounds, against theoretical full-grid neighbor counts, or against
anchors calibrated from matched synthetic hyperspheres.  Classical
nearest-neighbor baselines, dataset generators and fractal boundary
analysis round out the toolbox.
"""

__version__ = "0.1.0"

from .bounds import (
    classify_lmu,
    lmu_table,
    lower_cf,
    middle_cf,
    upper_cf,
)
from .datagen import (
    AffineIFS,
    ManifoldSpec,
    gen_circles,
    gen_hypersphere,
    gen_ifs,
    gen_manifold,
    gen_sinusoids,
)
from .estimators import (
    EstimateReport,
    MembershipAnchors,
    adaptive_target,
    dcf_estimate,
    edcf_estimate,
    estimate_noise,
    generate_reference_model,
    membership,
    mle_estimate,
    theoretical_anchors,
    twonn_estimate,
)
from .fractal import (
    BoundaryReport,
    boundary_report,
    box_dimension,
    extract_boundary,
    knn_label_grid,
)
from .gridding import (
    GriddedCloud,
    find_spacing,
    information_percentage,
    normalize_global,
    read_points_csv,
    snap_to_grid,
    write_points_csv,
)
from .neighborhood import (
    connectivity_factor,
    count_neighbors,
    space_convert_cf,
)
from .refcache import ReferenceCache

__all__ = [
    "__version__",
    "classify_lmu",
    "lmu_table",
    "lower_cf",
    "middle_cf",
    "upper_cf",
    "AffineIFS",
    "ManifoldSpec",
    "gen_circles",
    "gen_hypersphere",
    "gen_ifs",
    "gen_manifold",
    "gen_sinusoids",
    "EstimateReport",
    "MembershipAnchors",
    "adaptive_target",
    "dcf_estimate",
    "edcf_estimate",
    "estimate_noise",
    "generate_reference_model",
    "membership",
    "mle_estimate",
    "theoretical_anchors",
    "twonn_estimate",
    "BoundaryReport",
    "boundary_report",
    "box_dimension",
    "extract_boundary",
    "knn_label_grid",
    "GriddedCloud",
    "find_spacing",
    "information_percentage",
    "normalize_global",
    "read_points_csv",
    "snap_to_grid",
    "write_points_csv",
    "connectivity_factor",
    "count_neighbors",
    "space_convert_cf",
    "ReferenceCache",
]
