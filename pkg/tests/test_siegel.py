import pytest
from hypothesis import given, strategies as st

from dzv.algebra import BiPoly, Poly, field
from dzv.carlitz import TensorPoint, carlitz_action
from dzv.fmodule import special_point_vn, xi_point
from dzv.siegel import (VerificationError, assoc_poly, build_system, relation_rank, siegel_ell,
                        verify_relation_action)

from brute import annihilators, in_span, to_polys
from strategies import points, polys


def T(q, rows):
    return TensorPoint.from_ints(q, rows)


def test_assoc_poly_examples():
    F = field(2)
    assert assoc_poly(T(2, [[], [1]])) == BiPoly.one(F)
    assert assoc_poly(T(2, [[1], []])) == BiPoly.t(F) - BiPoly.theta(F)
    expect = BiPoly.t(F) + BiPoly.from_theta_poly(Poly(F, [1, 0, 1], "theta"))
    assert assoc_poly(T(2, [[1], [1, 1, 1]])) == expect


def test_build_system_small_case():
    sys_ = build_system([T(2, [[], [1]])], 2)
    assert sys_.ell == 5
    assert sys_.ncols == 6
    assert sys_.nrows == 9


@pytest.mark.parametrize("q,n", [(2, 3), (3, 2), (3, 4), (5, 3)])
def test_build_system_rows(q, n):
    F = field(q)
    sys_ = build_system([T(q, [[1]] * n)], n)
    t = Poly.gen(F)
    theta_minus = [Poly.zero(F)] * (n + 1)
    # coefficient of theta^{qk} in (t - theta^q)^n is (-1)^k C(n,k) t^{n-k}
    from math import comb
    for j in range(sys_.ell):
        for k in range(n + 1):
            row = sys_.rows[j + q * k]
            want = Poly.monomial(F, n - k, F.from_int((-1) ** k * comb(n, k)))
            if j + q * k == j * q:
                want = want - 1  # delta^{(1)} contributes -c_j at theta^{jq}
            assert row.get(j, Poly.zero(F)) == want, (j, k)
    for j in range(sys_.ell):
        # c_j appears in row jq and in rows j + qk only
        used = {r for r, row in enumerate(sys_.rows) if j in row}
        assert used <= {j * q} | {j + q * k for k in range(n + 1)}


def test_ell_formula():
    F = field(3)
    fs = [assoc_poly(T(3, [[0, 0, 0, 0, 0, 0, 0, 1], [1]]))]
    assert siegel_ell(2, 3, fs) == max(fs[0].deg_theta + 1, 2 * 3 // 2 + 1)
    assert siegel_ell(2, 3, []) == 4


def test_relation_rank_examples():
    r = relation_rank([xi_point(1, 1, 2)], 2, 2)
    assert r.rank == 0 and len(r.relations) == 1
    (a,), = r.relations.vectors
    assert carlitz_action(a, T(2, [[], [1]])).is_zero()
    assert a == Poly(field(2), [0, 0, 1, 0, 1])  # t^4 + t^2
    assert r.relations.deltas[0] == BiPoly.from_t_poly(Poly.monomial(field(2), 4)) + \
        BiPoly.from_theta_poly(Poly.monomial(field(2), 4, var="theta"))
    e = relation_rank([], 3, 2)
    assert e.rank == 0 and len(e.relations) == 0
    for n in (3, 5, 7):
        r = relation_rank([special_point_vn(n, 3)], n, 3)
        assert r.rank == 1 and len(r.relations) == 0


def _coeffs_by_theta(delta, ell, F):
    return [delta.theta_coeff(j) if delta and j <= delta.deg_theta else Poly.zero(F) for j in range(ell)]


@pytest.mark.parametrize("q,n", [(2, 2), (2, 4), (2, 6), (3, 3), (3, 6), (3, 8)])
def test_delta_witness_solves_system(q, n):
    F = field(q)
    pts = [xi_point(n - s2, s2, q) for s2 in range(q - 1, n, q - 1)]
    r = relation_rank(pts, n, q)
    sys_ = build_system(pts, n)
    for a, delta in zip(r.relations.vectors, r.relations.deltas):
        assert delta.deg_theta < sys_.ell if delta else True
        res = sys_.residual(_coeffs_by_theta(delta, sys_.ell, F), a)
        assert not any(res)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (3, 5), (3, 6)])
def test_structured_matches_direct(q, n):
    pts = [xi_point(n - s2, s2, q) for s2 in range(q - 1, n, q - 1)]
    a = relation_rank(pts, n, q)
    b = relation_rank(pts, n, q, method="direct")
    assert a.rank == b.rank
    assert all(in_span(a.relations.vectors, v, q) for v in b.relations.vectors)
    assert all(in_span(b.relations.vectors, v, q) for v in a.relations.vectors)


@given(st.data())
def test_structured_matches_direct_random(data):
    q = data.draw(st.sampled_from([2, 3]))
    n = data.draw(st.integers(1, 3))
    m = data.draw(st.integers(1, 3))
    pts = [data.draw(points(q, n, 2)) for _ in range(m)]
    a = relation_rank(pts, n, q)
    b = relation_rank(pts, n, q, method="direct")
    assert a.rank == b.rank
    assert not a.homogeneous_anomaly


@given(st.data())
def test_soundness_and_rank_identity(data):
    q = data.draw(st.sampled_from([2, 3, 4]))
    n = data.draw(st.integers(1, 4))
    pts = [data.draw(points(q, n, 3)) for _ in range(data.draw(st.integers(1, 3)))]
    r = relation_rank(pts, n, q)
    assert r.rank + len(r.relations) == len(pts)
    assert r.relations.verified
    for vec in r.relations.vectors:
        assert verify_relation_action(pts, vec)


@given(st.data())
def test_completeness_small(data):
    q = data.draw(st.sampled_from([2, 3]))
    n = data.draw(st.integers(1, 3))
    m = data.draw(st.integers(1, 2 if q == 3 else 3))
    pts = [data.draw(points(q, n, 2)) for _ in range(m)]
    r = relation_rank(pts, n, q)
    for vec in annihilators(pts, 3, q):
        assert in_span(r.relations.vectors, to_polys(vec, m, 3, q), q)


@given(st.data())
def test_scale_invariance_and_monotonicity(data):
    q = data.draw(st.sampled_from([2, 3]))
    n = data.draw(st.integers(1, 3))
    pts = [data.draw(points(q, n, 2)) for _ in range(data.draw(st.integers(1, 2)))]
    b = data.draw(polys(q, 3).filter(bool))
    base = relation_rank(pts, n, q).rank
    assert relation_rank([carlitz_action(b, v) for v in pts], n, q).rank == base
    extra = data.draw(points(q, n, 2))
    assert relation_rank(pts + [extra], n, q).rank >= base
    assert relation_rank(pts + [carlitz_action(b, pts[0])], n, q).rank == base


def test_verification_error_is_raised(monkeypatch):
    import dzv.siegel as sg
    monkeypatch.setattr(sg, "verify_relation_action", lambda points, a: False)
    with pytest.raises(VerificationError):
        sg.relation_rank([xi_point(1, 1, 2)], 2, 2)


def test_method_and_dimension_checks():
    with pytest.raises(ValueError):
        relation_rank([xi_point(1, 1, 2)], 2, 2, method="bogus")
    with pytest.raises(ValueError):
        build_system([T(2, [[1]])], 2)


def test_brute_force_finds_obvious_relations():
    q = 3
    v = T(q, [[1, 2], [0, 1]])
    tv = carlitz_action(Poly.gen(field(q)), v)
    found = annihilators([v, tv], 3, q)
    assert len(found) == 3  # (t^k * (t, -1)) for k = 0, 1, 2 at degree <= 3
    r = relation_rank([v, tv], 2, q)
    assert all(in_span(r.relations.vectors, to_polys(f, 2, 3, q), q) for f in found)
    assert not in_span([], to_polys(found[0], 2, 3, q), q)
