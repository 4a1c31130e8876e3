"""Laurent-series oracle in F_q((1/theta)).

Power sums S_d(k) = sum 1/a^k over monic a of degree d are enumerated
directly.  Zeta values, powers of the Carlitz period and the numeric check
of relation certificates are built on top.  Everything here is independent of
the Frobenius-module reduction; the only shared input is a valuation bound
for S_d(k) taken from the Anderson-Thakur polynomials.
"""

from __future__ import annotations

import functools
import itertools
import logging
import threading
from dataclasses import dataclass

import numpy as np

from .algebra import Poly, field
from .algebra import fqlinalg
from .algebra.laurent import LaurentSeries
from .algebra.ratfunc import RatFunc
from .carlitz import CarlitzContext, TensorPoint, context

log = logging.getLogger(__name__)

MAX_ENUMERATION = 1 << 16
"""Largest number of monic polynomials enumerated for one power sum."""

DEFAULT_MARGIN = 10

_lock = threading.Lock()


class PrecisionError(ValueError):
    """The requested precision is beyond what the truncation guarantees."""


def _check_enum(q, d):
    if q**d > MAX_ENUMERATION:
        raise ValueError(f"enumerating {q}^{d} monic polynomials exceeds the bound {MAX_ENUMERATION}")


def monic_tails(q: int, d: int):
    """All monic a of degree d as a (q^d, d) array; column i is the coefficient of theta^{d-1-i}."""
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(q**d, dtype=np.int64)
    digits = np.empty((q**d, d), dtype=np.int64)
    for i in range(d):
        digits[:, d - 1 - i] = idx % q
        idx //= q
    return digits


# -- power sums


def power_sum(q: int, d: int, k: int) -> RatFunc:
    """Exact S_d(k) as an element of F_q(theta).

    Every monic a of degree d divides L_d, so the sum is
    (sum_a (L_d/a)^k) / L_d^k with a polynomial numerator.
    """
    if d < 0 or k < 1:
        raise ValueError("need d >= 0 and k >= 1")
    _check_enum(q, d)
    F = field(q)
    Ld = context(q).L(d)
    num = Poly.zero(F, "theta")
    for tail in itertools.product(range(q), repeat=d):
        a = Poly(F, list(tail)[::-1] + [1], "theta")
        num = num + Ld.exact_div(a) ** k
    return RatFunc(num, Ld**k)


def power_sum_valuation_bound(q: int, d: int, k: int) -> int:
    """Lower bound for the 1/theta-valuation of S_d(k).

    Always at least k*d.  Through S_d(k) = H_{k-1}^{(d)}(theta) / (Gamma_k L_d^k)
    the degree of the right side gives a much sharper bound once d is large.
    """
    base = k * d
    ctx = context(q)
    H = ctx.H(k - 1)
    slope = k * q - (q - 1) * int(H.deg_theta)
    if slope <= 0:
        return base
    degL = q * (q**d - 1) // (q - 1)
    sharp = int(ctx.gamma(k).deg) + k * degL - int(H.deg_t) - q**d * int(H.deg_theta)
    return max(base, sharp)


def tail_valuation(q: int, d_max: int, k: int) -> int:
    """Valuation bound for sum_{d > d_max} S_d(k) (and for the depth-two tail with leading index k)."""
    return power_sum_valuation_bound(q, d_max + 1, k)


@functools.lru_cache(maxsize=4096)
def _power_sum_series_cached(q, d, k, prec):
    F = field(q)
    v = k * d
    R = prec - v
    if R <= 0:
        return LaurentSeries.zero(F, prec)
    _check_enum(q, d)
    tails = monic_tails(q, d)
    B = tails.shape[0]
    # a / theta^d = 1 + c_1 u + ... + c_d u^d
    A = np.zeros((B, d + 1), dtype=np.int64)
    A[:, 0] = 1
    A[:, 1:] = tails
    Ak = np.zeros((B, 1), dtype=np.int64)
    Ak[:, 0] = 1
    for _ in range(k):
        Ak = _batch_mul(F, Ak, A, R)
    # 1 / a^k as a series, by the linear recurrence
    D = Ak.shape[1] - 1
    y = np.zeros((B, R), dtype=np.int64)
    y[:, 0] = 1
    for m in range(1, R):
        w = min(m, D)
        if w == 0:
            continue
        prods = F.vmul(Ak[:, 1: w + 1], y[:, m - 1: m - 1 - w: -1] if m - 1 - w >= 0 else y[:, m - 1:: -1])
        y[:, m] = F.vneg(F.vsum(prods, axis=1))
    total = F.vsum(y, axis=0)
    return LaurentSeries(F, v, total, prec)


def _batch_mul(F, X, Y, R):
    """Row-wise product of two batches of polynomials, truncated to R terms."""
    out = np.zeros((X.shape[0], min(X.shape[1] + Y.shape[1] - 1, R)), dtype=np.int64)
    for j in range(Y.shape[1]):
        if j >= out.shape[1]:
            break
        w = min(X.shape[1], out.shape[1] - j)
        term = F.vmul(X[:, :w], Y[:, j: j + 1])
        out[:, j: j + w] = F.vadd(out[:, j: j + w], term)
    return out


def power_sum_series(q: int, d: int, k: int, prec: int) -> LaurentSeries:
    """S_d(k) as a Laurent series to absolute precision prec (by enumeration)."""
    with _lock:
        return _power_sum_series_cached(q, d, k, prec)


# -- zeta values


@dataclass
class ZetaEvaluation:
    index: tuple
    d_max: int
    value: LaurentSeries
    precision: int


def _resolve_prec(q, d_max, k, prec):
    guaranteed = tail_valuation(q, d_max, k)
    if prec is None:
        return k * (d_max + 1)
    if prec > guaranteed:
        raise PrecisionError(f"precision {prec} exceeds the guaranteed {guaranteed} at d_max={d_max}")
    return prec


def zeta_single(q: int, s: int, d_max: int, prec: int | None = None) -> ZetaEvaluation:
    """zeta_A(s) truncated to degrees <= d_max."""
    prec = _resolve_prec(q, d_max, s, prec)
    F = field(q)
    total = LaurentSeries.zero(F, prec)
    for d in range(d_max + 1):
        if power_sum_valuation_bound(q, d, s) >= prec:
            continue
        total = total + power_sum_series(q, d, s, prec)
    return ZetaEvaluation((s,), d_max, total, prec)


def zeta_double(q: int, s1: int, s2: int, d_max: int, prec: int | None = None) -> ZetaEvaluation:
    """zeta_A(s1, s2) = sum over d_max >= i1 > i2 >= 0 of S_{i1}(s1) S_{i2}(s2)."""
    prec = _resolve_prec(q, d_max, s1, prec)
    F = field(q)
    total = LaurentSeries.zero(F, prec)
    partial = LaurentSeries.zero(F, prec)  # sum_{i2 < i1} S_{i2}(s2)
    for i1 in range(d_max + 1):
        lead_val = power_sum_valuation_bound(q, i1, s1)
        if i1 > 0 and lead_val < prec:
            total = total + power_sum_series(q, i1, s1, prec) * partial
        i2 = i1
        if power_sum_valuation_bound(q, i2, s2) < prec:
            partial = partial + power_sum_series(q, i2, s2, prec)
    return ZetaEvaluation((s1, s2), d_max, total, prec)


# -- the Carlitz period


def pi_power(q: int, n: int, prec: int) -> LaurentSeries:
    """pi^n for (q-1) | n, from pi^{q-1} = (-theta)^q prod_{i>=1} (1 - theta^{1-q^i})^{-(q-1)}."""
    if n < 0 or n % (q - 1):
        raise ValueError(f"pi^n lies in k_infty only for (q-1) | n, got n={n}")
    F = field(q)
    e = n // (q - 1)
    v = -q * e
    R = prec - v
    if R <= 0:
        return LaurentSeries.zero(F, prec)
    prod = LaurentSeries.one(F, R)
    i = 1
    while q**i - 1 < R:
        factor = np.zeros(q**i, dtype=np.int64)
        factor[0] = 1
        factor[q**i - 1] = F.neg(1)
        prod = prod * LaurentSeries(F, 0, factor, R)
        i += 1
    base = prod.inverse() ** (q - 1)
    sign = F.from_int(-1) if q % 2 else 1  # (-1)^q
    base = base.scale(sign).shift(-q)
    if e == 0:
        return LaurentSeries.one(F, prec)
    return (base**e).truncate(prec)


# -- reconstruction


def rational_reconstruct(x: LaurentSeries, degN: int, degD: int, margin: int = DEFAULT_MARGIN):
    """N/D with deg N <= degN, deg D <= degD matching x, or None.

    D is found from the vanishing of the positive-exponent coefficients of
    D*x; at least ``margin`` equations beyond the degD unknowns must be
    available.  The lowest-degree D is used and N is the polynomial part of D*x.
    """
    F = x.F
    if degD < 0 or degN < 0:
        raise ValueError("degree bounds must be nonnegative")
    hi = x.prec - degD  # D*x is known below this exponent
    n_eq = hi - 1
    if n_eq < degD + margin:
        return None
    # coefficient of u^e in D*x is sum_j D_j x_{e+j}
    M = np.stack([x.dense(1 + j, hi + j) for j in range(degD + 1)], axis=1)
    null = fqlinalg.nullspace(F, M, degD + 1)
    if null.shape[0] == 0:
        return None
    # prefer the lowest-degree denominator
    best = None
    A, piv = fqlinalg.rref(F, null[:, ::-1])
    for row in A[: len(piv)]:
        Dc = row[::-1]
        if Dc.any():
            best = Dc
    D = Poly(F, best, "theta").monic()
    Dx = x.mul_poly(D)
    Ncoef = Dx.dense(min(Dx.v, 0), 1)[::-1]  # exponents 0 .. down
    N = Poly(F, Ncoef, "theta")
    if N and N.deg > degN:
        return None
    check = Dx - LaurentSeries.from_poly(N, Dx.prec)
    if not check.is_zero():
        return None
    return RatFunc(N, D)


# -- Euler ratio calibration


def calibrate_euler_sign(ctx: CarlitzContext, margin: int = DEFAULT_MARGIN) -> int:
    """Fix gamma_m's sign from zeta(q-1)/pi^{q-1} and store it on the context."""
    q = ctx.q
    m = q - 1
    raw = ctx.euler_ratio_raw(m)
    degN, degD = max(int(raw.num.deg), 0), int(raw.den.deg)
    need = degN + degD + margin + 2
    d_max = 1
    while tail_valuation(q, d_max, m) < need + q:
        d_max += 1
    z = zeta_single(q, m, d_max, prec=need + q).value
    ratio = z * pi_power(q, m, need + q + 2 * q).inverse()
    rec = rational_reconstruct(ratio, degN, degD, margin)
    if rec is None:
        raise AssertionError("Euler ratio calibration failed to reconstruct")
    if rec == raw:
        sign = 1
    elif rec == -raw:
        sign = -1
    else:
        raise AssertionError(f"numeric ratio {rec!r} is not +-{raw!r}")
    ctx.euler_sign = sign
    return sign


# -- logarithm cross-check


def log_last_coordinate(q: int, z: TensorPoint, imax: int, prec: int) -> LaurentSeries:
    """Last coordinate of log_n(z) truncated after imax terms, via the bottom rows of P_i."""
    ctx = context(q)
    n = z.n
    total = LaurentSeries.from_poly(z[n - 1], prec)
    for i in range(1, imax + 1):
        row = ctx.log_bottom_row(i, n)
        for ell, coef in enumerate(row):
            zq = z[ell].frob(i)
            if not zq or not coef:
                continue
            total = total + LaurentSeries.from_ratio(coef.num * zq, coef.den, prec)
    return total


# -- verification of relation certificates


@dataclass
class VerificationResult:
    status: str  # "pass", "fail" or "inconclusive"
    margin: int
    precision: int
    c0: Poly | None = None
    detail: str = ""

    @property
    def passed(self):
        return self.status == "pass"


def point_weight_factor(q: int, label) -> tuple[Poly, tuple]:
    """(polynomial factor in theta, zeta index) for a point label.

    ``("xi", s1, s2)`` stands for Xi_s with factor alpha_s(theta) Gamma_{s1} Gamma_{s2};
    ``("vn", n)`` stands for v_n with factor Gamma_n.
    """
    ctx = context(q)
    if label[0] == "xi":
        _, s1, s2 = label
        fac = ctx.alpha(s2).with_var("theta") * ctx.gamma(s1) * ctx.gamma(s2)
        return fac, (s1, s2)
    if label[0] == "vn":
        return ctx.gamma(label[1]), (label[1],)
    raise ValueError(f"unknown point label {label!r}")


def verify_relation(q: int, n: int, labels, a, d_max: int = 12, margin: int = DEFAULT_MARGIN,
                    include_alpha: bool = True) -> VerificationResult:
    """Check the zeta relation induced by sum a_i [.]P_i = 0.

    L = sum a_i(theta) * factor_i * zeta(index_i).  For (q-1) | n, L/pi^n must
    be a polynomial in theta; otherwise L must vanish.  At least ``margin``
    coefficients beyond the free ones are compared.
    """
    F = field(q)
    terms = []
    for lab, ai in zip(labels, a):
        if not ai:
            continue
        fac, idx = point_weight_factor(q, lab)
        if not include_alpha and lab[0] == "xi":
            fac = context(q).gamma(lab[1]) * context(q).gamma(lab[2])
        terms.append((ai.with_var("theta") * fac, idx))
    if not terms:
        return VerificationResult("pass", margin, 0, Poly.zero(F, "theta"), "zero relation")
    even = n % (q - 1) == 0
    pi_val = -(n * q) // (q - 1) if even else 0
    scale = min(-int(c.deg) + idx[0] for c, idx in terms)
    if even:
        target = max(margin + 1 + pi_val, scale + margin)
    else:
        target = scale + margin
    target += 1
    # Every term must be seen with the full margin, not only the largest one:
    # otherwise a term of high valuation could be dropped unnoticed.  Raise the
    # precision until it exceeds each term's actual valuation by the margin.
    while True:
        L, top = None, None
        for coef, idx in terms:
            p_i = target + int(coef.deg)
            if tail_valuation(q, d_max, idx[0]) < p_i:
                return VerificationResult("inconclusive", margin, target,
                                          detail=f"d_max={d_max} too small for zeta{idx} at precision {p_i}")
            z = zeta_single(q, idx[0], d_max, p_i) if len(idx) == 1 else zeta_double(q, idx[0], idx[1], d_max, p_i)
            term = z.value.mul_poly(coef)
            v = min(term.v, term.prec)
            top = v if top is None else max(top, v)
            L = term if L is None else L + term
        if target >= top + margin + 1:
            break
        target = top + margin + 1
    term_margin = L.prec - 1 - top
    if not even:
        ok = L.is_zero()
        return VerificationResult("pass" if ok else "fail", term_margin, L.prec,
                                  detail="" if ok else f"L does not vanish: {L!r}")
    # enough digits of pi^n that L / pi^n keeps precision L.prec - pi_val
    # even when L has large negative valuation
    c0s = L * pi_power(q, n, L.prec - 2 * pi_val + max(0, pi_val - L.v)).inverse()
    assert c0s.prec == L.prec - pi_val
    checked = min(c0s.prec - 1, term_margin)
    pos = c0s.dense(1, c0s.prec) if c0s.prec > 1 else np.zeros(0, dtype=np.int64)
    if checked < margin:
        return VerificationResult("inconclusive", checked, c0s.prec, detail="margin not reached")
    if pos.any():
        return VerificationResult("fail", checked, c0s.prec, detail="L/pi^n is not a polynomial")
    coeffs = c0s.dense(min(c0s.v, 0), 1)[::-1]
    return VerificationResult("pass", checked, c0s.prec, Poly(F, coeffs, "theta"))
