"""Numerical semigroup invariants via exact oracles and staircase carving."""

from .core import (
    AperySet,
    EmptyGenerators,
    FactorizationSet,
    GcdNotOne,
    ModulusNotInSemigroup,
    NoGaps,
    NumericalSemigroup,
    apery_set,
    contains,
    factorizations,
    frobenius,
    genus,
    mk_semigroup,
    submonoid_contains,
)
from .relations import (
    Arrangement,
    ArrangementMode,
    ArrangementNotFound,
    NotEmbeddingDim3,
    NotEmbeddingDim4,
    NotPairwiseCoprime,
    Relation,
    d0_positive_relation,
    frobenius_3gen,
    minimal_relation,
    select_arrangement,
)
from .lshape import (
    CardinalityMismatch,
    CarvePoint,
    Figure,
    LabelSetMismatch,
    LShape,
    LShapeStats,
    NonIntegralGenus,
    arranged_generators,
    confirm_minimal_relations,
    export_voxels,
    figure_R,
    is_unique_lshape,
    lshape_auto,
    lshape_stats,
    lshape_via_propnottrick,
    lshape_via_proptrick,
    minimal_carve_points,
)
from .factorization import (
    NOT_BETTI,
    AssumptionViolated,
    BettiReport,
    HypothesisNotMet,
    LengthMismatch,
    NotInSemigroup,
    PresentationPair,
    RClassPartition,
    betti_candidates_remark,
    betti_candidates_U,
    betti_elements,
    catenary_degree,
    catenary_of_element,
    classify_relation_value,
    distance,
    minimal_presentation,
    r_classes,
)
from .families import (
    CarvingSchema,
    IdentityViolated,
    InvariantBundle,
    OutOfTabulatedRange,
    OutOfValidity,
    Report,
    ReportRow,
    carve_schema,
    family_schema,
    lower_bound_check,
    schema_arrangement,
    schema_claimed_relations,
    squares_generators,
    squares_invariants,
    triangular_generators,
    triangular_invariants,
    verify_family,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
