"""Groebner bases over small prime fields via the monomial-oriented GVW algorithm.

Two engines compute the same lead-term ideal: a stepwise engine that
mutual-reduces one lifted labeled monomial at a time, and a matrix engine
that lifts a whole degree and eliminates with signature-respecting linear
algebra.  An independent Buchberger implementation serves as the
verification oracle.
"""

from .buchberger import OracleGB, buchberger, minimal_generators, normal_form, s_polynomial, verify_gb
from .errors import CapacityError, DivisibilityError, ParseError, ZeroPolynomialError
from .estimator import GroebnerSolver, NotFittedError, check_system
from .gf import PrimeField
from .labeled import BasisState, LabeledMonomial, lift_by_var, resolve_collision, signature_of
from .matrix import MatrixOptions, MatrixResult, groebner_matrix
from .monomials import Monomial, Signature, cmp_mono, cmp_sig, mono_div, mono_divides, mono_lcm, mono_mul
from .poly import Polynomial, preprocess_inputs
from .ring import Ring
from .stepwise import StepOptions, StepResult, groebner_step
from .sysio import System, format_system, gen_random_square, parse_poly, parse_system

__version__ = "0.1.0"

__all__ = [
    "BasisState",
    "CapacityError",
    "DivisibilityError",
    "GroebnerSolver",
    "LabeledMonomial",
    "MatrixOptions",
    "MatrixResult",
    "Monomial",
    "NotFittedError",
    "OracleGB",
    "ParseError",
    "Polynomial",
    "PrimeField",
    "Ring",
    "Signature",
    "StepOptions",
    "StepResult",
    "System",
    "ZeroPolynomialError",
    "buchberger",
    "check_system",
    "cmp_mono",
    "cmp_sig",
    "format_system",
    "gen_random_square",
    "groebner_matrix",
    "groebner_step",
    "lift_by_var",
    "minimal_generators",
    "mono_div",
    "mono_divides",
    "mono_lcm",
    "mono_mul",
    "normal_form",
    "parse_poly",
    "parse_system",
    "preprocess_inputs",
    "resolve_collision",
    "s_polynomial",
    "signature_of",
    "verify_gb",
    "__version__",
]
