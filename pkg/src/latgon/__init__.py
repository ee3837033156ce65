"""Exact-arithmetic search and verification for sublattice-free convex
lattice polygons: canonical sublattice forms, polygon/segment predicates,
boundary slopes with witness searches, a type classification with lift and
reduction pipelines, and exhaustive verification campaigns."""

from .lattice import (
    AffineMap,
    InvariantFactors,
    Lattice2,
    StepProfile,
    UnimodularMap,
    apply_affine,
    contains,
    hnf_canonicalize,
    invariant_factors,
    rectangular_lattice,
    scaled_lattice,
    shear_lattice,
    shear_residue,
    snf_transform,
    span_of_points,
    standard_lattice,
    step_profile,
)
from .polygon import (
    CardinalProfile,
    LatticePolygon,
    Segment,
    area2_and_pick,
    cardinal_profile,
    contains_point,
    from_points,
    is_free_of,
    is_minimal,
    lattice_points_in,
    line_side_range,
    meets_line,
    splits_by_line,
    splits_by_ray,
    splits_by_segment,
    transform,
)
from .slope import (
    Frame,
    MaximalSlopes,
    SignedBasis,
    Slope,
    SlopeError,
    WitnessNotFound,
    check_slp_witness,
    check_th36_witness,
    forms_small_angle,
    frame_splits,
    frame_splits_polygon_slope,
    maximal_slopes,
    run_fuzz_suite,
    validate_slope,
)
from .typeclass import (
    TAG_ORDER,
    PolygonType,
    ReductionStep,
    ReductionTrace,
    classify,
    lift,
    polygon_types,
    reduce_type_iv,
    reduce_type_v,
    reduce_type_vi,
    type_predicate,
)
from .verify import (
    REGION_PRESETS,
    BoundReport,
    BudgetExceededError,
    SearchRegion,
    capture_threshold,
    check_main_theorem,
    check_vertex_bound,
    empty_residue_classes,
    enumerate_convex_polygons,
    find_sharpness_witness,
    node_budget,
    verify_reduction_corpus,
)

__version__ = "0.1.0"
