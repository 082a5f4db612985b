"""Homogeneous vector bundles on P^2: Schur combinatorics, quiver supports,
exact slopes, and two-term free resolutions."""

from .quiver import (
    EnumerationBoundError,
    QArrow,
    QSupport,
    QVertex,
    Rectangle,
    Staircase,
    arrows_from,
    cokernel_support,
    enumerate_staircases,
    image_support,
    kernel_support,
    step_anatomy,
    support_diff,
    support_intersect,
    support_of_schur,
    support_tensor_SlQ,
)
from .resolution import (
    BlockMatrix,
    ElementarySpec,
    FreeTerm,
    ResolutionSpec,
    classify_1regular,
    classify_fibomsem,
    classify_pinco,
    cokernel_invariants,
    is_valid_minimal_resolution_map,
    shape_admits_injection,
    shape_admits_minimal_resolution,
    verify_stable_theorem,
)
from .schur import Partition3, QTensorTerm, TwistedSchur, clebsch_gordan, dim3, dual, hom_dim, pieri, ssyt_count
from .slopecalc import (
    SlopeValue,
    check_rectangle_inequalities,
    check_segment_inequality,
    is_multistable_rect,
    is_multistable_staircase,
    is_semistable_rect,
    rectangle_slope_closed_form,
    slope_of_support,
)

__version__ = "0.1.0"
