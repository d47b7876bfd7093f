"""Pseudo-ordered sets, bounded trellises and nullnorms on them."""

from .core import (
    BoundedTrellis,
    ClassificationError,
    NotATrellisError,
    Psoset,
    PsosetError,
    TransitivityReport,
    ZeroClassification,
    as_bounded_trellis,
    build_psoset,
    classify_around,
    transitivity_report,
)
from .optable import (
    CheckReport,
    OpTable,
    check_axioms,
    check_block_structure,
    is_nullnorm,
    is_tconorm,
    is_tnorm,
    zero_elements,
)
from .constructions import (
    ConstructionError,
    ConstructionSpec,
    construct,
    construct_checked,
    drastic_tconorm,
    drastic_tnorm,
    validate_preconditions,
)

__all__ = [
    "BoundedTrellis",
    "ClassificationError",
    "NotATrellisError",
    "Psoset",
    "PsosetError",
    "TransitivityReport",
    "ZeroClassification",
    "as_bounded_trellis",
    "build_psoset",
    "classify_around",
    "transitivity_report",
    "CheckReport",
    "OpTable",
    "check_axioms",
    "check_block_structure",
    "is_nullnorm",
    "is_tconorm",
    "is_tnorm",
    "zero_elements",
    "ConstructionError",
    "ConstructionSpec",
    "construct",
    "construct_checked",
    "drastic_tconorm",
    "drastic_tnorm",
    "validate_preconditions",
]

__version__ = "0.1.0"
