"""Hilbert-Samuel, limit-closure and tight Hilbert coefficients of parameter ideals over F_p."""

__version__ = "0.1.0"

from .fieldpoly import GREVLEX, LEX, PolyRing, Polynomial, block, frobenius_pow, parse_poly
from .groebner import INFINITE, BudgetExceeded, Ideal, groebner_basis, ideal_quotient, saturation
from .quotient import IdealInR, ParameterIdeal, PresentedRing, is_superficial
from .closures import limit_closure, tight_closure_candidate, contracted_closure
from .hilbert import extract_coefficients, length_sequence, predict_buchsbaum
from .semigroup import SemigroupRing

__all__ = [
    "GREVLEX",
    "LEX",
    "block",
    "PolyRing",
    "Polynomial",
    "frobenius_pow",
    "parse_poly",
    "INFINITE",
    "BudgetExceeded",
    "Ideal",
    "groebner_basis",
    "ideal_quotient",
    "saturation",
    "IdealInR",
    "ParameterIdeal",
    "PresentedRing",
    "is_superficial",
    "limit_closure",
    "tight_closure_candidate",
    "contracted_closure",
    "extract_coefficients",
    "length_sequence",
    "predict_buchsbaum",
    "SemigroupRing",
]
