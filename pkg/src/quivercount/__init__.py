"""Counting quiver representations over finite fields.

Closed-form counting polynomials, factorization identities in the quantum
torus, brute-force enumeration over F_p, and extraction of the absolutely
simple and absolutely indecomposable counts from conservative counts.
"""

from .counts import CountKind, count_poly, e_poly, gl_poly, h_func, m_poly, n_poly, r_poly
from .exact import LaurentPoly, RatFunc, eval_at, lagrange_interpolate
from .quiver import Quiver, dim_vectors, euler_form, extend_quiver, parse_quiver
from .torus import TorusSeries, torus_inverse, torus_mul, verify_factorizations

__all__ = [
    "CountKind", "LaurentPoly", "Quiver", "RatFunc", "TorusSeries",
    "count_poly", "dim_vectors", "e_poly", "euler_form", "eval_at", "extend_quiver",
    "gl_poly", "h_func", "lagrange_interpolate", "m_poly", "n_poly", "parse_quiver",
    "r_poly", "torus_inverse", "torus_mul", "verify_factorizations",
]
