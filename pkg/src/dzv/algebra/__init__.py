"""Exact arithmetic over F_q, F_q[t], F_q[theta][t] and F_q((1/theta))."""

from .field import GF, field, prime_power
from .poly import DEG_ZERO, Poly, sup_degree
from .bipoly import BiPoly, taylor_shift

__all__ = ["GF", "field", "prime_power", "DEG_ZERO", "Poly", "sup_degree", "BiPoly", "taylor_shift"]
