"""Hypothesis strategies shared by the tests."""

from hypothesis import strategies as st

from dzv.algebra import BiPoly, Poly, field
from dzv.carlitz import TensorPoint

QS = [2, 3, 4, 5, 9]


def coeff_lists(q, max_len):
    return st.lists(st.integers(0, q - 1), max_size=max_len)


def polys(q, max_deg=8, var="t"):
    F = field(q)
    return coeff_lists(q, max_deg + 1).map(lambda c: Poly(F, c, var))


def nonzero_polys(q, max_deg=8, var="t"):
    return polys(q, max_deg, var).filter(bool)


def bipolys(q, max_t=5, max_theta=5):
    F = field(q)
    return st.lists(coeff_lists(q, max_theta + 1), max_size=max_t + 1).map(
        lambda rows: BiPoly.from_t_coeffs(F, [Poly(F, r, "theta") for r in rows]))


def points(q, n, max_deg=3):
    F = field(q)
    return st.lists(coeff_lists(q, max_deg + 1), min_size=n, max_size=n).map(
        lambda rows: TensorPoint(Poly(F, r, "theta") for r in rows))


@st.composite
def q_and(draw, make, qs=QS):
    q = draw(st.sampled_from(qs))
    return q, draw(make(q))
