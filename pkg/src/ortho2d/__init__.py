"""Exact construction and verification of bivariate orthogonal polynomial
systems built from a radical factor and a ladder of univariate families,
together with the banded matrix coefficients of their two vector
three-term relations."""

from .catalog import (
    FAMILY_PARAMS,
    CatalogId,
    CrossCheckReport,
    Mismatch,
    catalog_id,
    closed_form_first,
    closed_form_second,
    closed_form_ttr,
    cross_check,
    make_system,
    positive_definite,
)
from .construction import (
    CASE_I,
    CASE_II,
    BivariateSystem,
    GramBlock,
    RhoSpec,
    assemble,
)
from .numerics import (
    EXACT,
    FLOAT,
    BandMatrix,
    ModeError,
    Scalar,
    SparsePoly2,
    parse_rational,
    pochhammer,
    poly_mul,
    rank_exact,
)
from .ttr import (
    RankReport,
    TTRSet,
    build_ttr,
    first_ttr,
    rank_conditions,
    second_ttr,
    ttr_from_gram,
)
from .univariate import (
    AdjacentDown,
    AdjacentUp,
    LeadingPair,
    QuasiDefinitenessError,
    RecurrenceFamily,
    adjacent_down,
    adjacent_up,
    bessel,
    jacobi_shift,
    jacobi_std,
    laguerre,
)
from .verify import (
    CheckResult,
    NotPositiveDefiniteError,
    VerifyReport,
    run_suite,
    verify_central_symmetry,
    verify_orthogonality,
    verify_orthonormal_transpose,
    verify_relation,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacentDown",
    "AdjacentUp",
    "BandMatrix",
    "BivariateSystem",
    "CASE_I",
    "CASE_II",
    "CatalogId",
    "CheckResult",
    "CrossCheckReport",
    "EXACT",
    "FAMILY_PARAMS",
    "FLOAT",
    "GramBlock",
    "LeadingPair",
    "Mismatch",
    "ModeError",
    "NotPositiveDefiniteError",
    "QuasiDefinitenessError",
    "RankReport",
    "RecurrenceFamily",
    "RhoSpec",
    "Scalar",
    "SparsePoly2",
    "TTRSet",
    "VerifyReport",
    "adjacent_down",
    "adjacent_up",
    "assemble",
    "bessel",
    "build_ttr",
    "catalog_id",
    "closed_form_first",
    "closed_form_second",
    "closed_form_ttr",
    "cross_check",
    "first_ttr",
    "jacobi_shift",
    "jacobi_std",
    "laguerre",
    "make_system",
    "parse_rational",
    "pochhammer",
    "poly_mul",
    "positive_definite",
    "rank_conditions",
    "rank_exact",
    "second_ttr",
    "ttr_from_gram",
    "verify_central_symmetry",
    "verify_orthogonality",
    "verify_orthonormal_transpose",
    "verify_relation",
    "__version__",
]
