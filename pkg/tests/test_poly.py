import pytest
from hypothesis import given, strategies as st

from dzv.algebra import DEG_ZERO, Poly, field, sup_degree
from dzv.algebra.ratfunc import RatFunc
from dzv.algebra.serial import poly_from_json, poly_to_json

from strategies import QS, nonzero_polys, polys, q_and


def P(q, c, var="t"):
    return Poly(field(q), c, var)


@given(st.data())
def test_ring_axioms(data):
    q = data.draw(st.sampled_from(QS))
    f, g, h = (data.draw(polys(q)) for _ in range(3))
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f and f * g == g * f
    assert f - f == Poly.zero(field(q))
    assert f * Poly.one(field(q)) == f


@given(st.data())
def test_divmod(data):
    q = data.draw(st.sampled_from(QS))
    f = data.draw(polys(q, 12))
    g = data.draw(nonzero_polys(q, 6))
    quo, rem = divmod(f, g)
    assert quo * g + rem == f
    assert rem.deg < g.deg
    assert (f * g).exact_div(g) == f


@given(st.data())
def test_gcd_divides(data):
    q = data.draw(st.sampled_from([2, 3, 4]))
    f, g, h = data.draw(nonzero_polys(q, 5)), data.draw(nonzero_polys(q, 5)), data.draw(nonzero_polys(q, 3))
    d = (f * h).gcd(g * h)
    assert (f * h) % d == Poly.zero(field(q)) and (g * h) % d == Poly.zero(field(q))
    assert (d % h.monic()) == Poly.zero(field(q))


@given(q_and(lambda q: polys(q, 6)), q_and(lambda q: polys(q, 6)), st.integers(0, 2))
def test_frobenius_is_ring_hom(fq, gq, m):
    q, f = fq
    g = gq[1] if gq[0] == q else f
    assert (f * g).frob(m) == f.frob(m) * g.frob(m)
    assert (f + g).frob(m) == f.frob(m) + g.frob(m)
    assert f.frob(1) == f**q


def test_exact_div_examples():
    # (t^2 - t) / (t - 1) = t over F_5
    assert (P(5, [0, 4, 1])).exact_div(P(5, [4, 1])) == P(5, [0, 1])
    # (t^2 + 1) / (t + 1) = t + 1 over F_2
    assert P(2, [1, 0, 1]).exact_div(P(2, [1, 1])) == P(2, [1, 1])
    with pytest.raises(ArithmeticError):
        P(2, [1, 0, 1]).exact_div(P(2, [0, 1]))


def test_degree_of_zero_is_marker():
    z = Poly.zero(field(3))
    assert z.deg == DEG_ZERO and z.deg < 0 and z.deg != -1
    assert sup_degree([z, z]) == DEG_ZERO
    assert sup_degree([P(2, [0, 0, 1], "theta"), P(2, [1, 1, 1], "theta")]) == 2


def test_int_coercion_reads_through_Fp():
    f = P(3, [1, 1])
    assert f + 2 == P(3, [0, 1])
    assert f * -1 == P(3, [2, 2])
    assert P(3, [1, 2, 1])(1) == 1


def test_coefficient_range_checked():
    with pytest.raises(ValueError):
        P(2, [0, 2])


@given(q_and(lambda q: polys(q, 10)))
def test_json_round_trip(fq):
    q, f = fq
    data = poly_to_json(f)
    assert all(0 <= d < field(q).p for c in data for d in c)
    assert poly_from_json(field(q), data) == f


@given(st.data())
def test_ratfunc_field_ops(data):
    q = data.draw(st.sampled_from([2, 3, 4]))
    a = RatFunc(data.draw(polys(q, 4)), data.draw(nonzero_polys(q, 4)))
    b = RatFunc(data.draw(nonzero_polys(q, 4)), data.draw(nonzero_polys(q, 4)))
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a.den.lc() == 1 and a.num.gcd(a.den).is_one()
    assert b * b.inverse() == RatFunc(Poly.one(field(q)))


def test_ratfunc_reduces():
    F = field(2)
    r = RatFunc(P(2, [0, 1, 1]), P(2, [0, 0, 1]))  # (t^2+t)/t^2 = (t+1)/t
    assert r.num == P(2, [1, 1]) and r.den == P(2, [0, 1])
    with pytest.raises(ZeroDivisionError):
        RatFunc(Poly.one(F), Poly.zero(F))
