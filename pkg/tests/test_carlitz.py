import math

import pytest
from hypothesis import given, strategies as st

from dzv.algebra import BiPoly, Poly, field
from dzv.algebra.laurent import LaurentSeries
from dzv.algebra.ratfunc import RatFunc
from dzv.carlitz import (CarlitzContext, TensorPoint, base_digits, carlitz_action, context,
                         lucas_binomial, sup_degree, t_step)
from dzv.numeric import pi_power, power_sum, zeta_single

from strategies import points, polys


def th(q, c):
    return Poly(field(q), c, "theta")


def tp(q, c):
    return Poly(field(q), c, "t")


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_D_two_routes_and_L(q):
    ctx = context(q)
    theta = ctx.theta
    assert ctx.D(0) == Poly.one(ctx.F, "theta") and ctx.L(0) == Poly.one(ctx.F, "theta")
    for i in range(1, 5):
        assert ctx.D(i) == ctx.D_product(i)
        assert ctx.D(i) == (theta.frob(i) - theta) * ctx.D(i - 1) ** q
        assert ctx.L(i) == (theta - theta.frob(i)) * ctx.L(i - 1)
        assert ctx.D_t(i) == ctx.D(i).with_var("t")


def test_gamma_examples():
    assert context(2).gamma(3) == th(2, [0, 1, 1])
    for q in (2, 3, 5):
        assert context(q).gamma(1).is_one()
    assert context(3).gamma(4) == th(3, [0, 2, 0, 1])
    with pytest.raises(ValueError):
        context(2).gamma(0)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_gamma_at_powers_of_q(q):
    # q^i = (q^i - 1) + 1 and q^i - 1 has all digits q-1 below i, so the
    # single factor D_i sits at index q^i + 1
    ctx = context(q)
    for i in range(4):
        assert ctx.gamma(q**i + 1) == ctx.D(i)


def test_G_examples():
    F2, F3 = field(2), field(3)
    assert context(2).G(0) == BiPoly.one(F2)
    t2 = BiPoly.from_t_poly(tp(2, [0, 0, 1]))
    assert context(2).G(1) == t2 + BiPoly.from_theta_poly(th(2, [0, 0, 1]))
    t3 = BiPoly.from_t_poly(tp(3, [0, 0, 0, 1]))
    assert context(3).G(1) == t3 - BiPoly.from_theta_poly(th(3, [0, 0, 0, 1]))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_H_small_indices(q):
    ctx = CarlitzContext(q)
    for n in range(q):  # n <= q-1: Gamma_{n+1} = 1 and H_n = 1
        assert ctx.H(n) == BiPoly.one(ctx.F)
        assert ctx.gamma(n + 1).is_one()


def test_H_examples_q2():
    F = field(2)
    ctx = CarlitzContext(2)
    assert ctx.H(1) == BiPoly.one(F)
    assert ctx.H(2) == BiPoly.t(F) + BiPoly.from_theta_poly(th(2, [0, 0, 1]))
    assert ctx.H(3) == BiPoly.from_t_poly(tp(2, [0, 1, 1]))


def _gen_identity_holds(q, N):
    """(sum H_n/Gamma_{n+1}(t) x^n) (1 - sum G_i/D_i(t) x^{q^i}) = 1 mod x^N, coefficientwise."""
    ctx = CarlitzContext(q)
    F = ctx.F
    for n in range(1, N):
        num, den = ctx.H(n), ctx.gamma_t(n + 1)
        i = 0
        while q**i <= n:
            m = n - q**i
            tnum = ctx.G(i) * ctx.H(m)
            tden = ctx.D_t(i) * ctx.gamma_t(m + 1)
            num = num * tden - tnum * den
            den = den * tden
            i += 1
        if num != BiPoly.zero(F):
            return False
    return True


@pytest.mark.parametrize("q", [2, 3])
def test_generating_identity_mod_x30(q):
    assert _gen_identity_holds(q, 30)


@pytest.mark.parametrize("q,kmax,dmax", [(2, 6, 4), (3, 5, 3)])
def test_H_interpolates_power_sums(q, kmax, dmax):
    # S_d(k) = H_{k-1}^{(d)}(t=theta) / (Gamma_k L_d^k), checked against enumeration
    ctx = context(q)
    for k in range(1, kmax + 1):
        for d in range(dmax + 1):
            lhs = power_sum(q, d, k)
            rhs = RatFunc(ctx.H(k - 1).twist(d).subs_t_eq_theta(), ctx.gamma(k) * ctx.L(d) ** k)
            assert lhs == rhs, (k, d)


def test_alpha_examples():
    assert context(2).alpha(1) == tp(2, [0, 1, 1])
    assert context(2).alpha(2) == tp(2, [0, 1, 1]) ** 2
    assert context(3).alpha(2) == tp(3, [0, 2, 0, 1])
    assert context(2).alpha_parts(2) == (1, 1)
    assert context(2).alpha_parts(6) == (2, 1)
    assert context(3).alpha_parts(24) == (2, 1)
    with pytest.raises(ValueError):
        context(3).alpha(3)


@given(st.integers(1, 60), st.sampled_from([2, 3, 4, 5]))
def test_alpha_parts_decomposition(s2, q):
    s2 *= q - 1
    ctx = context(q)
    h, ell = ctx.alpha_parts(s2)
    n1, r = divmod(s2, ctx.p**ell * (q**h - 1))
    assert r == 0 and n1 % ctx.p
    assert all(s2 % (q**k - 1) for k in range(h + 1, 12) if q**k - 1 <= s2)


def test_action_examples():
    z = TensorPoint.from_ints(2, [[0], [1]])
    assert t_step(z) == TensorPoint.from_ints(2, [[1], [0, 1]])
    assert carlitz_action(Poly.one(field(2)), z) == z
    a = tp(2, [0, 1, 1]) ** 2
    assert carlitz_action(a, z).is_zero()


@given(st.data())
def test_action_is_module_action(data):
    q = data.draw(st.sampled_from([2, 3, 4]))
    n = data.draw(st.integers(1, 4))
    a, b = data.draw(polys(q, 4)), data.draw(polys(q, 4))
    z, w = data.draw(points(q, n)), data.draw(points(q, n))
    assert carlitz_action(a + b, z) == carlitz_action(a, z) + carlitz_action(b, z)
    assert carlitz_action(a * b, z) == carlitz_action(a, carlitz_action(b, z))
    assert carlitz_action(a, z + w) == carlitz_action(a, z) + carlitz_action(a, w)


def test_point_json_and_sup_degree():
    z = TensorPoint.from_ints(3, [[0], [1, 1, 2]])
    assert TensorPoint.from_json(3, z.to_json()) == z
    assert z.sup_degree() == 2 == sup_degree(z)
    assert TensorPoint.zero(field(3), 2).sup_degree() < 0


def test_log_bottom_row_examples():
    ctx = context(2)
    assert ctx.log_bottom_row(3, 1) == [RatFunc(Poly.one(ctx.F, "theta"), ctx.L(3))]
    for q, i, n in ((2, 2, 4), (3, 1, 3)):
        c = context(q)
        assert c.log_bottom_row(i, n)[-1] == RatFunc(Poly.one(c.F, "theta"), c.L(i) ** n)
    L1 = th(2, [0, 1, 1])
    assert ctx.log_bottom_row(1, 2) == [RatFunc(th(2, [0, 1, 1]), L1**2), RatFunc(Poly.one(ctx.F, "theta"), L1**2)]


def test_euler_ratio_examples():
    ctx = context(2)
    d1 = th(2, [0, 1, 1])
    one = Poly.one(ctx.F, "theta")
    assert ctx.euler_ratio(1) == RatFunc(one, d1)
    assert ctx.euler_ratio(2) == RatFunc(one, d1**2)
    assert ctx.euler_sign == 1
    with pytest.raises(ValueError):
        context(3).euler_ratio(3)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_euler_ratio_matches_numeric_zeta(q):
    ctx = context(q)
    for m in range(q - 1, 4 * (q - 1) + 1, q - 1):
        g = ctx.euler_ratio(m)
        d_max = 3 if q > 3 else 6
        z = zeta_single(q, m, d_max)
        P = z.precision
        pv = -(m * q) // (q - 1)
        gl = LaurentSeries.from_ratio(g.num, g.den, P - pv + 5)
        val = (gl * pi_power(q, m, P + int(g.den.deg) + 5)).truncate(P)
        assert val.agrees(z.value), (q, m)


@given(st.integers(0, 400), st.integers(0, 400), st.sampled_from([2, 3, 5, 7]))
def test_lucas(n, k, p):
    assert lucas_binomial(n, k, p) == math.comb(n, k) % p


def test_base_digits():
    assert base_digits(0, 3) == []
    assert base_digits(10, 3) == [1, 0, 1]
