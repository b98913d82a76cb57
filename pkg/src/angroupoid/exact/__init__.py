"""Exact scalar, Laurent, rational-function and prime-field arithmetic."""

from .field import DEFAULT_PRIME, Dual, Fp, SingularPoint, check_prime, is_probable_prime, sqrt_fp
from .laurent import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    FractionalExponent,
    LaurentPoly,
    MissingVariable,
    Ring,
    budget,
    term_budget,
)
from .ratfunc import NotSubtractionFree, RatFunc, trop_degree
from .special import (
    NotDivisible,
    NotPalindromic,
    chebyshev_F,
    chebyshev_coeffs,
    eval_coeffs,
    palindromic_to_t,
)
from .verify import Sampler, lp_eval, lp_derivative

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_PRIME",
    "BudgetExceeded",
    "Dual",
    "Fp",
    "FractionalExponent",
    "LaurentPoly",
    "MissingVariable",
    "NotDivisible",
    "NotPalindromic",
    "NotSubtractionFree",
    "RatFunc",
    "Ring",
    "Sampler",
    "SingularPoint",
    "budget",
    "chebyshev_F",
    "chebyshev_coeffs",
    "check_prime",
    "eval_coeffs",
    "is_probable_prime",
    "lp_derivative",
    "lp_eval",
    "palindromic_to_t",
    "sqrt_fp",
    "term_budget",
    "trop_degree",
]
