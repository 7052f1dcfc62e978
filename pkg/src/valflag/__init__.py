"""Exact classification of valuated term preorders on tropical Laurent
polynomial semirings: canonical defining matrices, equality decisions with
witness terms, flags of polyhedra, filter membership, and multiplicative
Farkas certificates."""

from .errors import (
    CapacityError,
    DimensionError,
    DomainError,
    ParseError,
    ValflagError,
)
from .scalars import Scalar, format_scalar, parse_scalar, simplest_between
from .tropical import (
    NEG_INF,
    ExponentVector,
    TropPolynomial,
    format_exponent,
    format_poly,
    parse_poly,
    parse_term,
)
from .prime import (
    COEFFICIENT_BLIND,
    CONT,
    EQUAL,
    GREATER,
    LESS,
    NON_CONTINUOUS,
    DefiningMatrix,
    EqualityVerdict,
    KernelSubgroup,
    Prime,
    canonicalize,
    classify,
    compare,
    compare_terms,
    decide_equal,
    final_kernel,
    height,
    is_order,
    min_filter_dim,
    phi,
    row_op_normal_form,
)
from .polyhedra import (
    Flag,
    GammaPolyhedralSet,
    GammaPolyhedron,
    IneqSystem,
    flag_from_matrix,
    fm_feasible,
    in_cone,
    is_neighborhood,
    locally_equivalent,
    matrix_from_flag,
    rational_set,
    relative_interior_matrix,
    simplicialize,
)
from .filters import (
    CounterexamplePoint,
    FarkasCertificate,
    MembershipAnswer,
    farkas_certify,
    filter_member,
    halfspace_member,
    halfspace_polyhedron,
    mindim_witness,
    reconstruct_preorder,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DimensionError",
    "DomainError",
    "ParseError",
    "ValflagError",
    "Scalar",
    "format_scalar",
    "parse_scalar",
    "simplest_between",
    "NEG_INF",
    "ExponentVector",
    "TropPolynomial",
    "format_exponent",
    "format_poly",
    "parse_poly",
    "parse_term",
    "COEFFICIENT_BLIND",
    "CONT",
    "EQUAL",
    "GREATER",
    "LESS",
    "NON_CONTINUOUS",
    "DefiningMatrix",
    "EqualityVerdict",
    "KernelSubgroup",
    "Prime",
    "canonicalize",
    "classify",
    "compare",
    "compare_terms",
    "decide_equal",
    "final_kernel",
    "height",
    "is_order",
    "min_filter_dim",
    "phi",
    "row_op_normal_form",
    "Flag",
    "GammaPolyhedralSet",
    "GammaPolyhedron",
    "IneqSystem",
    "flag_from_matrix",
    "fm_feasible",
    "in_cone",
    "is_neighborhood",
    "locally_equivalent",
    "matrix_from_flag",
    "rational_set",
    "relative_interior_matrix",
    "simplicialize",
    "CounterexamplePoint",
    "FarkasCertificate",
    "MembershipAnswer",
    "farkas_certify",
    "filter_member",
    "halfspace_member",
    "halfspace_polyhedron",
    "mindim_witness",
    "reconstruct_preorder",
    "__version__",
]
