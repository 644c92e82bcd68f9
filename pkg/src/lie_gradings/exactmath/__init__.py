"""Exact arithmetic kernel: rationals, polynomials, matrices, normal forms, LP and ILP."""
from .ilp import ILPResult, IntegerProgram, ilp_solve
from .lp import EQ, GE, INFEASIBLE, LE, OPTIMAL, UNBOUNDED, Constraint, LinearProgram, LPResult, simplex_solve
from .normalforms import hnf, invariant_factors, is_saturated, lattice_key, snf
from .poly import Poly, poly_gcd, rational_roots, squarefree_part
from .rational import format_rat, to_rat

__all__ = [
    "Constraint", "EQ", "GE", "ILPResult", "INFEASIBLE", "IntegerProgram", "LE", "LPResult",
    "LinearProgram", "OPTIMAL", "Poly", "UNBOUNDED", "format_rat", "hnf", "ilp_solve",
    "invariant_factors", "is_saturated", "lattice_key", "poly_gcd", "rational_roots",
    "simplex_solve", "snf", "squarefree_part", "to_rat",
]
