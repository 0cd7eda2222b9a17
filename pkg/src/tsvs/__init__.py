"""Exact computations with two-sided vector spaces over number fields and Q(t).

The public surface re-exports the main types and entry points of each
module; see the submodules for the full set of operations.
"""

__version__ = "0.1.0"

from .bimod import MatrixHom, classify, endomorphism_basis, hom_eval, hom_similar, hom_validate, simple_from_orbit
from .canonical import (
    HigherDerivation,
    commutant_shape_check,
    hasse_hs,
    homogeneous_structure,
    hs_product,
    jordan_order_conjugate,
    leibniz_check,
    scaled_derivation_similar,
    toeplitz_hom,
    triangularize_commuting,
)
from .errors import ParseError, TsvsError
from .factor import factor_over_Q
from .funcfield import DiffOperator, FunctionField, RatFunc, fit_operator, hasse_apply
from .matrix import Matrix, jcf, similarity_solve
from .numfield import NumberField, RelativeExtension, factor_over_K
from .poly import QQ, Poly, poly_gcd
from .tensor import decompose, k0_presentation, kronecker_compose

__all__ = [
    "DiffOperator", "FunctionField", "HigherDerivation", "Matrix", "MatrixHom", "NumberField",
    "ParseError", "Poly", "QQ", "RatFunc", "RelativeExtension", "TsvsError", "classify",
    "commutant_shape_check", "decompose", "endomorphism_basis", "factor_over_K", "factor_over_Q",
    "fit_operator", "hasse_apply", "hasse_hs", "hom_eval", "hom_similar", "hom_validate",
    "homogeneous_structure", "hs_product", "jcf", "jordan_order_conjugate", "k0_presentation",
    "kronecker_compose", "leibniz_check", "poly_gcd", "scaled_derivation_similar", "similarity_solve",
    "simple_from_orbit", "toeplitz_hom", "triangularize_commuting",
]
