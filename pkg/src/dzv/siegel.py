"""Relations among integral points of the n-th tensor power of the Carlitz module.

For points v_1..v_m with associated polynomials f_i, a vector a in F_q[t]^m
satisfies sum [a_i]_n(v_i) = 0 exactly when some delta in F_q[t][theta] with
deg_theta delta < ell solves

    delta (t - theta^q)^n + F (t - theta^q)^n = delta^{(1)},   F = sum a_i f_i.

:func:`build_system` writes this out coefficient by coefficient in theta
with unknowns (c_0..c_{ell-1}, a_1..a_m), delta = sum c_j theta^j.

:func:`relation_rank` solves it through the substitution delta = (t - theta)^n G,
forced because delta^{(1)} is divisible by (t - theta^q)^n.  The equation
becomes F = G^{(1)} - (t - theta)^n G, and the coefficient of theta^{qj} has
a unit in front of G_j, so every G_j with (q-1) j > n is solved for
without division.  What remains is a small system in the a_i and the low
G_j, handled by fraction-free elimination.  ``method="direct"`` instead
eliminates the full build_system matrix and serves as a cross-check.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import BiPoly, Poly, field
from .algebra import polymat as pm
from .carlitz import TensorPoint, carlitz_action, lucas_binomial
from .fmodule import lift

log = logging.getLogger(__name__)


class VerificationError(AssertionError):
    """A candidate relation failed direct evaluation under the t-action."""


def assoc_poly(v: TensorPoint) -> BiPoly:
    """f_v = sum_j v_j (t - theta)^{n-j} in the t-power basis."""
    return lift(v)


def siegel_ell(n: int, q: int, fs) -> int:
    """Bound on deg_theta delta: max(max deg_theta f_i + 1, floor(nq/(q-1)) + 1)."""
    base = n * q // (q - 1) + 1
    degs = [f.deg_theta for f in fs if f]
    return max([base] + [d + 1 for d in degs])


def _tpow_coeffs(F, n: int):
    """[(k, c_k)] with (t - x)^n = sum_k c_k t^{n-k} x^k and c_k = (-1)^k C(n, k) mod p."""
    out = []
    for k in range(n + 1):
        b = lucas_binomial(n, k, F.p)
        if b:
            c = F.from_int(b if k % 2 == 0 else -b)
            out.append((k, c))
    return out


@dataclass
class SiegelSystem:
    """Coefficient matrix of the twisted equation, one row per power of theta.

    ``rows[r]`` maps a column index to a polynomial in t; columns 0..ell-1
    are c_0..c_{ell-1} and ell+i is a_{i+1}.
    """

    q: int
    n: int
    ell: int
    points: list
    fs: list
    rows: list

    @property
    def ncols(self):
        return self.ell + len(self.points)

    @property
    def nrows(self):
        return len(self.rows)

    def dense(self):
        F = field(self.q)
        zero = Poly.zero(F, "t")
        return [[row.get(c, zero) for c in range(self.ncols)] for row in self.rows]

    def residual(self, cs, as_):
        """Row values at the given c's and a's (all polynomials in t)."""
        F = field(self.q)
        vals = list(cs) + list(as_)
        out = []
        for row in self.rows:
            acc = Poly.zero(F, "t")
            for c, e in row.items():
                acc = acc + e * vals[c]
            out.append(acc)
        return out


def build_system(points, n: int, q: int | None = None) -> SiegelSystem:
    points = list(points)
    if q is None:
        if not points:
            raise ValueError("q is required for an empty point set")
        q = points[0].F.q
    for v in points:
        if v.n != n:
            raise ValueError("all points must have dimension n")
    F = field(q)
    fs = [assoc_poly(v) for v in points]
    ell = siegel_ell(n, q, fs)
    maxf = max([f.deg_theta for f in fs if f], default=0)
    top = max(ell - 1 + n * q, maxf + n * q, (ell - 1) * q)
    binom = _tpow_coeffs(F, n)
    rows = [dict() for _ in range(top + 1)]

    def put(r, col, poly):
        cur = rows[r].get(col)
        val = poly if cur is None else cur + poly
        if val:
            rows[r][col] = val
        else:
            rows[r].pop(col, None)

    for j in range(ell):
        for k, c in binom:
            put(j + q * k, j, Poly.monomial(F, n - k, c))
        put(j * q, j, Poly.constant(F, F.neg(1)))
    for i, f in enumerate(fs):
        col = ell + i
        for s in range(f.deg_theta + 1 if f else 0):
            fc = f.theta_coeff(s)
            if not fc:
                continue
            for k, c in binom:
                put(s + q * k, col, fc.shift(n - k).scale(c))
    return SiegelSystem(q, n, ell, points, fs, rows)


@dataclass
class RelationBasis:
    """F_q[t]-relations sum a_i [.]v_i = 0 with their delta witnesses."""

    q: int
    n: int
    vectors: list = dc_field(default_factory=list)
    deltas: list = dc_field(default_factory=list)
    verified: bool = False

    def __len__(self):
        return len(self.vectors)


@dataclass
class RankResult:
    rank: int
    relations: RelationBasis
    ell: int
    nrows: int
    homogeneous_anomaly: bool = False


def _structured_constraints(F, q, n, fs, ell):
    """Reduce F = G^{(1)} - (t-theta)^n G to a system in (a, G_0..G_J).

    Returns (constraint rows, forms for the eliminated G_j, J).
    """
    m = len(fs)
    N = ell - n
    J = min(n // (q - 1), N - 1)
    C = m + J + 1
    binom = _tpow_coeffs(F, n)
    maxf = max([f.deg_theta for f in fs if f], default=0)
    top = max(q * (N - 1), N - 1 + n, maxf)

    # coefficient of theta^r in F as a vector over (a, G_small)
    frow = {}
    for i, f in enumerate(fs):
        for s in range(f.deg_theta + 1 if f else 0):
            col = f.a[:, s] if f.a.shape[1] > s else None
            if col is None or not col.any():
                continue
            X = frow.get(s)
            if X is None:
                X = np.zeros((C, 1), dtype=np.int64)
            if X.shape[1] < len(col):
                X = np.pad(X, ((0, 0), (0, len(col) - X.shape[1])))
            X[i, : len(col)] = col
            frow[s] = X

    empty = np.zeros((C, 0), dtype=np.int64)
    G = {}
    for j in range(J + 1):
        X = np.zeros((C, 1), dtype=np.int64)
        X[m + j, 0] = 1
        G[j] = X

    def shifted_sum(r):
        # sum_k c_k t^{n-k} G_{r-k}
        acc = empty
        for k, c in binom:
            g = G.get(r - k)
            if g is not None:
                acc = pm.vadd(F, acc, pm.mul_monomial(F, g, c, n - k))
        return acc

    for j in range(N - 1, J, -1):
        # row qj: G_j - sum_k c_k t^{n-k} G_{qj-k} - F_{qj} = 0
        X = shifted_sum(q * j)
        fr = frow.get(q * j)
        if fr is not None:
            X = pm.vadd(F, X, fr)
        G[j] = pm.trim_cols(X)

    pivot_rows = {q * j for j in range(J + 1, N)}
    constraints = []
    for r in range(top + 1):
        if r in pivot_rows:
            continue
        X = F.vneg(shifted_sum(r))
        if r % q == 0 and r // q < N:
            X = pm.vadd(F, X, G[r // q])
        fr = frow.get(r)
        if fr is not None:
            X = pm.vsub(F, X, fr)
        X = pm.trim_cols(X)
        if X.shape[1] and X.any():
            constraints.append(X)
    return constraints, G, J, top + 1


def _solve_free(F, ech, ncols, free_col):
    """Polynomial nullspace vector with a nonzero entry at ``free_col`` and zeros
    at the other non-pivot columns, by fraction-free back substitution.
    Returned primitive (content removed) as a (ncols, D) array."""
    X = np.zeros((ncols, 1), dtype=np.int64)
    X[free_col, 0] = 1
    for pc, row in reversed(ech):
        S = np.zeros(0, dtype=np.int64)
        for k in np.flatnonzero(row.any(axis=1)):
            if k == pc or not X[k].any():
                continue
            S = _padd(F, S, F.conv(pm.trim_cols(row[k:k + 1])[0], pm.trim_cols(X[k:k + 1])[0]))
        u = pm.trim_cols(row[pc:pc + 1])[0]
        X = pm.mul_poly(F, u, X)
        S = F.vneg(S)
        if X.shape[1] < len(S):
            X = np.pad(X, ((0, 0), (0, len(S) - X.shape[1])))
        X[pc] = 0
        X[pc, : len(S)] = S
    return _primitive(F, pm.trim_cols(X))


def _padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] = F.vadd(out[: len(b)], b)
    return out


def _primitive(F, X):
    """Divide out the gcd of the entries and make the first nonzero entry monic."""
    g = None
    for p in pm.vec_to_polys(F, X):
        if p:
            g = p if g is None else g.gcd(p)
            if g.deg == 0:
                break
    if g is None:
        return X
    X = pm.exact_div(F, X, g.c)
    lead = next(p for p in pm.vec_to_polys(F, X) if p)
    return pm.trim_cols(F.vscale(F.inv(lead.lc()), X))


def verify_relation_action(points, a) -> bool:
    """Direct check that sum_i [a_i]_n(v_i) = 0."""
    if not points:
        return True
    F = points[0].F
    acc = TensorPoint.zero(F, points[0].n)
    for v, ai in zip(points, a):
        if ai:
            acc = acc + carlitz_action(ai, v)
    return acc.is_zero()


def _check(points, basis, verify):
    if verify:
        for vec in basis.vectors:
            if not verify_relation_action(points, vec):
                raise VerificationError(f"relation {vec!r} fails under the t-action")
        basis.verified = True


def relation_rank(points, n: int, q: int | None = None, method: str = "structured",
                  verify: bool = True) -> RankResult:
    """Rank over F_q[t] of the span of ``points`` and a basis of their relations.

    The rank equals m - (number of independent relations); relations are
    computed over F_q(t) and scaled to primitive polynomial vectors jointly
    with their delta witness.  With ``verify`` every relation is re-checked by
    direct evaluation of the t-action.
    """
    points = list(points)
    if q is None:
        if not points:
            raise ValueError("q is required for an empty point set")
        q = points[0].F.q
    if method == "direct":
        return _relation_rank_direct(points, n, q, verify)
    if method != "structured":
        raise ValueError(f"unknown method {method!r}")
    F = field(q)
    m = len(points)
    fs = [assoc_poly(v) for v in points]
    ell = siegel_ell(n, q, fs)
    rows, Gforms, J, nrows = _structured_constraints(F, q, n, fs, ell)
    g = J + 1
    C = m + g
    # G columns first: the rows that pivot on an a-column then involve the a's only
    order = list(range(m, C)) + list(range(m))
    ech = pm.bareiss_echelon(F, rows, C, col_order=order)
    pivots = {c for c, _ in ech}
    anomaly = any(c not in pivots for c in range(m, C))
    if anomaly:
        log.warning("homogeneous solution of the delta equation at n=%d, q=%d", n, q)
    basis = RelationBasis(q, n)
    for fc in range(m):
        if fc in pivots:
            continue
        X = _solve_free(F, ech, C, fc)
        basis.vectors.append(pm.vec_to_polys(F, X[:m]) if X.shape[0] else [])
        basis.deltas.append(_delta_from_solution(F, n, X, Gforms, ell))
    _check(points, basis, verify)
    return RankResult(m - len(basis), basis, ell, nrows, anomaly)


def _delta_from_solution(F, n, X, Gforms, ell):
    """delta = (t - theta)^n G where G_j is the form Gforms[j] evaluated at X."""
    coeff = pm.vec_to_polys(F, X)
    Gs = []
    for j in range(ell - n):
        form = Gforms[j]
        acc = np.zeros(0, dtype=np.int64)
        for k in np.flatnonzero(form.any(axis=1)):
            if coeff[k]:
                acc = _padd(F, acc, F.conv(pm.trim_cols(form[k:k + 1])[0], coeff[k].c))
        Gs.append(Poly._make(F, acc, "t"))
    if not any(Gs):
        return BiPoly.zero(F)
    grid = pm.vec_from_polys(Gs).T
    return BiPoly(F, grid) * BiPoly.t_minus_theta_power(F, n)


def _relation_rank_direct(points, n, q, verify):
    F = field(q)
    sysm = build_system(points, n, q)
    m, ell = len(points), sysm.ell
    C = ell + m
    zero = Poly.zero(F, "t")
    rows = [pm.vec_from_polys([row.get(c, zero) for c in range(C)]) for row in sysm.rows if row]
    ech = pm.bareiss_echelon(F, rows, C)
    pivots = {c for c, _ in ech}
    anomaly = any(c not in pivots for c in range(ell))
    basis = RelationBasis(q, n)
    for fc in range(ell, C):
        if fc in pivots:
            continue
        X = _solve_free(F, ech, C, fc)
        basis.vectors.append(pm.vec_to_polys(F, X[ell:]))
        cs = pm.vec_to_polys(F, X[:ell])
        basis.deltas.append(BiPoly(F, pm.vec_from_polys(cs).T) if any(cs) else BiPoly.zero(F))
    _check(points, basis, verify)
    return RankResult(m - len(basis), basis, ell, sysm.nrows, anomaly)
