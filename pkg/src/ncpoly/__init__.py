"""Exact polynomials over quaternions and octonions with tensor coefficients."""

from .algebra import (AlgebraError, AlgebraSpec, Element, NonAssociativeError, algebra_by_name,
                      octonions, quaternions, sqrt)
from .division import divide_linear, divide_monic, factor_chain
from .nonassoc import BracketPolynomial, bchain_apply, bdivide_monic, bfactor_chain
from .ore import LeftPolynomial, left_eval, left_mul, solve_left_linear, weierstrass_step_check
from .parser import ParseError, parse, parse_value
from .poly import Polynomial, equals_as_map, mul, solve_map_combination
from .tensor import SingularTensorError, TensorSum, matrix_of, solve, tensor_of

__all__ = [
    "AlgebraError", "AlgebraSpec", "Element", "NonAssociativeError", "algebra_by_name", "octonions",
    "quaternions", "sqrt", "divide_linear", "divide_monic", "factor_chain", "BracketPolynomial",
    "bchain_apply", "bdivide_monic", "bfactor_chain", "LeftPolynomial", "left_eval", "left_mul",
    "solve_left_linear", "weierstrass_step_check", "ParseError", "parse", "parse_value", "Polynomial",
    "equals_as_map", "mul", "solve_map_combination", "SingularTensorError", "TensorSum", "matrix_of",
    "solve", "tensor_of",
]

__version__ = "0.1.0"
