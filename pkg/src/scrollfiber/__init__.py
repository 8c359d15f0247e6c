"""Exact combinatorial engine for fiber cones of rational normal scrolls.

Builds the initial complex of the fiber cone from a scroll type, certifies
that the Alexander dual of its Stanley-Reisner ideal has linear quotients,
derives regularity, a-invariant, reduction number, and Gorensteinness from
the resulting h-vector, and verifies everything against an independent
linear-algebra rank oracle on products of the defining 2x2 minors.
"""

from .dual_quotients import (
    MUTATIONS,
    ColonReport,
    VerificationResult,
    colon_generators,
    dual_support,
    precedes,
    predict_LG,
    verify_linear_quotients,
)
from .errors import (
    CapacityError,
    DomainError,
    InternalError,
    InvalidVertexError,
    PreconditionError,
    ScrollError,
    StructuralError,
    UnsupportedRegimeError,
    VerificationError,
)
from .facet_complex import (
    Facet,
    FacetTree,
    Vertex,
    enumerate_facets,
    facet_tree,
    first_facet,
    is_facet,
    vertex_set,
)
from .invariants import (
    HilbertData,
    HVector,
    InvariantReport,
    closed_form,
    face_counts,
    full_report,
    h_vector_from_quotients,
    hilbert_data,
    hilbert_function_by_faces,
    hilbert_function_from_h,
    numerator_from_face_counts,
)
from .oracle import (
    DEFAULT_MODULUS,
    CrossCheckResult,
    CrossCheckRow,
    ExpandedPolynomial,
    RankProblem,
    build_rank_problem,
    cross_check,
    fiber_hilbert_function,
    rank_mod_prime,
    rank_rational,
)
from .scroll_model import (
    Column,
    EntryName,
    LeavesProfile,
    MinorPolynomial,
    ScrollMatrix,
    ScrollSpec,
    build_matrix,
    leaves_profile,
    minor,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "Column",
    "ColonReport",
    "CrossCheckResult",
    "CrossCheckRow",
    "DEFAULT_MODULUS",
    "DomainError",
    "EntryName",
    "ExpandedPolynomial",
    "Facet",
    "FacetTree",
    "HVector",
    "HilbertData",
    "InternalError",
    "InvalidVertexError",
    "InvariantReport",
    "LeavesProfile",
    "MinorPolynomial",
    "MUTATIONS",
    "PreconditionError",
    "RankProblem",
    "ScrollError",
    "ScrollMatrix",
    "ScrollSpec",
    "StructuralError",
    "UnsupportedRegimeError",
    "VerificationError",
    "VerificationResult",
    "Vertex",
    "build_matrix",
    "build_rank_problem",
    "closed_form",
    "colon_generators",
    "cross_check",
    "dual_support",
    "enumerate_facets",
    "face_counts",
    "facet_tree",
    "fiber_hilbert_function",
    "first_facet",
    "full_report",
    "h_vector_from_quotients",
    "hilbert_data",
    "hilbert_function_by_faces",
    "hilbert_function_from_h",
    "is_facet",
    "leaves_profile",
    "minor",
    "numerator_from_face_counts",
    "precedes",
    "predict_LG",
    "rank_mod_prime",
    "rank_rational",
    "vertex_set",
    "verify_linear_quotients",
]
