"""Primitive cubic characters over GF(q)[T] for q = 2 (mod 3).

Exact Gauss sums, L-polynomials, the double Dirichlet series A_3 and the
first moment of central values at small genus.
"""
__version__ = "0.1.0"
