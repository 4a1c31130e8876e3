"""JSON encoding of polynomials.

An F_q element becomes its list of e coordinates over F_p (each in 0..p-1).
A univariate polynomial is the list of its encoded coefficients, low degree
first.  A BiPoly is the list of its t-coefficients, each a polynomial in
theta.  The zero polynomial is ``[]``.
"""

from __future__ import annotations

from .bipoly import BiPoly
from .field import GF
from .poly import Poly


def elem_to_json(F: GF, a: int) -> list[int]:
    return [(a // F.p**i) % F.p for i in range(F.e)]


def elem_from_json(F: GF, digits) -> int:
    if len(digits) != F.e or any(not 0 <= d < F.p for d in digits):
        raise ValueError(f"bad F_{F.q} coordinates {digits!r}")
    return sum(int(d) * F.p**i for i, d in enumerate(digits))


def poly_to_json(f: Poly) -> list[list[int]]:
    return [elem_to_json(f.F, int(a)) for a in f.c]


def poly_from_json(F: GF, data, var: str = "t") -> Poly:
    return Poly(F, [elem_from_json(F, d) for d in data], var)


def bipoly_to_json(f: BiPoly) -> list:
    return [poly_to_json(c) for c in f.t_coeffs()]


def bipoly_from_json(F: GF, data) -> BiPoly:
    return BiPoly.from_t_coeffs(F, [poly_from_json(F, c, "theta") for c in data])
