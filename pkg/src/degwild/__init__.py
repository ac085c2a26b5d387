"""Degree functions on polynomial rings, degrees of derivations, and two
wild degree functions with computable witnesses."""

from .degfun import (
    DegreeFunction,
    DerivationDegree,
    GradedDegree,
    LaurentDegree,
    LndDegree,
    LocalizedDegree,
    LocalizedDerivation,
    LocalizedElem,
    check_axioms,
    deg_of_derivation_graded,
    deg_of_derivation_laurent_sandwich,
    deg_of_derivation_lnd,
    degree,
    degree_localized,
    delta,
    gr,
    gr_derivation,
)
from .errors import (
    ConstructionError,
    DegwildError,
    ParseError,
    PrecisionExhausted,
    PreconditionError,
    StructuralError,
)
from .fields import MultiQuad, RatFunc, Rational, mq_inv, mq_lift, mq_mul
from .groupvalue import NEG_INF, GroupValue
from .laurent import LaurentSeries, SeriesEvaluator, ord, substitute
from .parsing import format_derivation, format_poly, parse_derivation, parse_poly
from .poly import Derivation, Poly, Weighting, apply_derivation, homogeneous_component
from .wild import (
    ConstructionA,
    ConstructionB,
    Expansion,
    constructA_witness,
    constructB_build,
    constructB_monoid_check,
    constructB_negative_degree_element,
    constructB_witness,
    expand,
)


__all__ = [
    "apply_derivation",
    "check_axioms",
    "constructA_witness",
    "constructB_build",
    "constructB_monoid_check",
    "constructB_negative_degree_element",
    "constructB_witness",
    "ConstructionA",
    "ConstructionB",
    "ConstructionError",
    "deg_of_derivation_graded",
    "deg_of_derivation_laurent_sandwich",
    "deg_of_derivation_lnd",
    "degree",
    "degree_localized",
    "DegreeFunction",
    "DegwildError",
    "delta",
    "Derivation",
    "DerivationDegree",
    "expand",
    "Expansion",
    "format_derivation",
    "format_poly",
    "gr",
    "gr_derivation",
    "GradedDegree",
    "GroupValue",
    "homogeneous_component",
    "LaurentDegree",
    "LaurentSeries",
    "LndDegree",
    "LocalizedDegree",
    "LocalizedDerivation",
    "LocalizedElem",
    "mq_inv",
    "mq_lift",
    "mq_mul",
    "MultiQuad",
    "NEG_INF",
    "ord",
    "parse_derivation",
    "parse_poly",
    "ParseError",
    "Poly",
    "PrecisionExhausted",
    "PreconditionError",
    "RatFunc",
    "Rational",
    "SeriesEvaluator",
    "StructuralError",
    "substitute",
    "Weighting",
]

__version__ = "0.1.0"
