"""Closed-range diagnostics for Carleson embeddings on the Hardy and Bergman spaces of the disk."""

from .diagnostics import (
    CLOSED,
    INCONCLUSIVE,
    NOT_CLOSED,
    ClosedRangeVerdict,
    Evidence,
    HorowitzReport,
    Thresholds,
    diagnose_bergman,
    diagnose_hardy,
    horowitz_threshold_report,
)
from .disk import (
    HorowitzSpec,
    Space,
    TruncatedProductValue,
    blaschke_eval,
    blaschke_factor,
    disk_point,
    horowitz_eval,
    mobius,
    norm_quadrature,
    pseudo_dist,
)
from .measures import (
    DiscreteMeasure,
    DyadicArc,
    GridMeasure,
    blaschke_sum,
    build_mu_Z,
    build_nu_Z,
    build_sigma_grid,
    carleson_constant,
    dyadic_arcs,
    weight_equivalence_ratio,
)
from .sequences import (
    PointSequence,
    double_sequence,
    gen_radial,
    horowitz_zeros,
    interpolation_constant,
    separation_constant,
)
from .spectral import (
    GramMatrix,
    HardyInterpolant,
    IllConditionedError,
    SpectralReport,
    finite_interpolant_hardy,
    kernel_gram,
    least_norm_margin,
    reverse_witness,
    riesz_bounds,
    section_matrix,
    section_matrix_spectrum,
)

__version__ = "0.1.0"
