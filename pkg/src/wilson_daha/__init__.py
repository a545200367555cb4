"""Exact polynomial representation of the rational DAHA of type (C^vee_n, C_n)
and multivariable Wilson polynomials."""
from .exactpoly import Q, SparsePoly, LinearForm
from .params import Params, P_STAR, P_ALT

__version__ = "0.1.0"
__all__ = ["Q", "SparsePoly", "LinearForm", "Params", "P_STAR", "P_ALT"]
