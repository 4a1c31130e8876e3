"""Carlitz module data: D_i, L_i, Carlitz factorials, Anderson-Thakur
polynomials, the torsion polynomials alpha, the [a]_n action on points of
the n-th tensor power and the Euler ratios zeta(m)/pi^m.
"""

from __future__ import annotations

import functools
import threading

from .algebra import DEG_ZERO, BiPoly, Poly, field
from .algebra.ratfunc import RatFunc
from .algebra.serial import poly_from_json, poly_to_json


class TensorPoint:
    """Point (z_1, ..., z_n)^tr of the n-th tensor power with entries in F_q[theta]."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(entries)
        if not entries:
            raise ValueError("a tensor point has at least one coordinate")
        self.entries = entries

    @classmethod
    def zero(cls, F, n):
        return cls([Poly.zero(F, "theta")] * n)

    @classmethod
    def from_ints(cls, q, rows):
        """Build from lists of integer coefficients (low degree first)."""
        F = field(q)
        return cls([Poly(F, r, "theta") for r in rows])

    @property
    def n(self):
        return len(self.entries)

    @property
    def F(self):
        return self.entries[0].F

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, TensorPoint):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "TensorPoint(" + ", ".join(repr(e) for e in self.entries) + ")"

    def is_zero(self):
        return not any(self.entries)

    def sup_degree(self):
        return max(e.deg for e in self.entries)

    def __add__(self, other):
        return TensorPoint(a + b for a, b in zip(self.entries, other.entries, strict=True))

    def __sub__(self, other):
        return TensorPoint(a - b for a, b in zip(self.entries, other.entries, strict=True))

    def __neg__(self):
        return TensorPoint(-a for a in self.entries)

    def scale(self, c: int):
        return TensorPoint(a.scale(c) for a in self.entries)

    def to_json(self):
        return [poly_to_json(e) for e in self.entries]

    @classmethod
    def from_json(cls, q, data):
        F = field(q)
        return cls(poly_from_json(F, e, "theta") for e in data)


def t_step(z: TensorPoint) -> TensorPoint:
    """[t]_n: theta*z_i + z_{i+1} for i < n and theta*z_n + z_1^q."""
    n = z.n
    out = []
    for i in range(n):
        nxt = z[i + 1] if i + 1 < n else z[0].frob(1)
        out.append(z[i].shift(1) + nxt)
    return TensorPoint(out)


def carlitz_action(a: Poly, z: TensorPoint) -> TensorPoint:
    """[a]_n(z) by Horner's rule over the single t-step."""
    if not a:
        return TensorPoint.zero(z.F, z.n)
    acc = z.scale(a.lc())
    for k in range(int(a.deg) - 1, -1, -1):
        acc = t_step(acc)
        c = a[k]
        if c:
            acc = acc + z.scale(c)
    return acc


def lucas_binomial(n: int, k: int, p: int) -> int:
    """C(n, k) mod p via base-p digits."""
    if k < 0 or k > n:
        return 0
    r = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        r = r * _small_binom(a, b) % p
        n //= p
        k //= p
    return r


@functools.cache
def _small_binom(a, b):
    from math import comb
    return comb(a, b)


def base_digits(m: int, q: int) -> list[int]:
    digits = []
    while m:
        digits.append(m % q)
        m //= q
    return digits


class CarlitzContext:
    """Memoised Carlitz quantities for one q.

    Tables are append-only and filled under a lock, so one context can be
    shared between threads.
    """

    def __init__(self, q: int):
        self.F = field(q)
        self.q, self.p, self.e = q, self.F.p, self.F.e
        self._lock = threading.RLock()
        self._D = [Poly.one(self.F, "theta")]
        self._L = [Poly.one(self.F, "theta")]
        self._H = [BiPoly.one(self.F)]
        self._gamma = {}
        self._euler = {}
        self.euler_sign = None

    def __repr__(self):
        return f"CarlitzContext(q={self.q})"

    @property
    def theta(self) -> Poly:
        return Poly.gen(self.F, "theta")

    # -- D_i, L_i, Gamma

    def D(self, i: int) -> Poly:
        """D_i in F_q[theta]."""
        with self._lock:
            while len(self._D) <= i:
                j = len(self._D)
                factor = self.theta.frob(j) - self.theta
                self._D.append(factor * self._D[-1].frob(1))
            return self._D[i]

    def D_product(self, i: int) -> Poly:
        """D_i from the product over j < i of (theta^(q^i) - theta^(q^j)); an independent route."""
        th = self.theta
        out = Poly.one(self.F, "theta")
        for j in range(i):
            out = out * (th.frob(i) - th.frob(j))
        return out

    def D_t(self, i: int) -> Poly:
        return self.D(i).with_var("t")

    def L(self, i: int) -> Poly:
        with self._lock:
            while len(self._L) <= i:
                j = len(self._L)
                self._L.append((self.theta - self.theta.frob(j)) * self._L[-1])
            return self._L[i]

    def gamma(self, m: int) -> Poly:
        """Carlitz factorial Gamma_m = prod D_i^{n_i}, m - 1 = sum n_i q^i."""
        if m < 1:
            raise ValueError("Gamma_m needs m >= 1")
        with self._lock:
            g = self._gamma.get(m)
            if g is None:
                g = Poly.one(self.F, "theta")
                for i, d in enumerate(base_digits(m - 1, self.q)):
                    if d:
                        g = g * self.D(i) ** d
                self._gamma[m] = g
            return g

    def gamma_t(self, m: int) -> Poly:
        return self.gamma(m).with_var("t")

    def G(self, i: int) -> BiPoly:
        """G_i(theta) = prod_{j=1}^{i} (t^{q^i} - theta^{q^j})."""
        F = self.F
        out = BiPoly.one(F)
        T = BiPoly.from_t_poly(Poly.monomial(F, self.q**i, var="t"))
        for j in range(1, i + 1):
            out = out * (T - BiPoly.from_theta_poly(self.theta.frob(j)))
        return out

    # -- Anderson-Thakur polynomials

    def H(self, n: int) -> BiPoly:
        """H_n in F_q[theta][t]."""
        if n < 0:
            raise ValueError("H_n needs n >= 0")
        with self._lock:
            while len(self._H) <= n:
                self._H.append(self._next_H(len(self._H)))
            return self._H[n]

    def _next_H(self, n: int) -> BiPoly:
        # H_n / Gamma_{n+1}(t) = sum_i G_i / D_i(t) * H_{n-q^i} / Gamma_{n-q^i+1}(t)
        q = self.q
        terms = []
        i = 0
        while q**i <= n:
            m = n - q**i
            terms.append((self.G(i) * self._H[m], self.D_t(i) * self.gamma_t(m + 1)))
            i += 1
        den = terms[0][1]
        for _, d in terms[1:]:
            den = (den * d).exact_div(den.gcd(d))
        num = BiPoly.zero(self.F)
        for b, d in terms:
            num = num + b * den.exact_div(d)
        g = self.gamma_t(n + 1)
        c = g.gcd(den)
        num = num * g.exact_div(c)
        return num.exact_div_t(den.exact_div(c))

    def set_H(self, n: int, value: BiPoly):
        """Seed the memo with a cached H_n; only the next index may be added."""
        with self._lock:
            if n == len(self._H):
                self._H.append(value)
            elif n < len(self._H) and self._H[n] != value:
                raise ValueError(f"cached H_{n} disagrees with the recurrence")

    def known_H(self) -> int:
        return len(self._H)

    # -- torsion polynomial for A-even s2

    def alpha_parts(self, s2: int) -> tuple[int, int]:
        """(h, ell) with s2 = p^ell * n1 * (q^h - 1), h maximal, p not dividing n1."""
        q, p = self.q, self.p
        if s2 < 1 or s2 % (q - 1):
            raise ValueError(f"alpha needs (q-1) | s2, got s2={s2}")
        h = max(k for k in range(1, s2.bit_length() + 2) if q**k - 1 <= s2 and s2 % (q**k - 1) == 0)
        rest = s2 // (q**h - 1)
        ell = 0
        while rest % p == 0:
            rest //= p
            ell += 1
        return h, ell

    def alpha(self, s2: int) -> Poly:
        """alpha = (t^{q^h} - t)^{p^ell}."""
        h, ell = self.alpha_parts(s2)
        base = Poly.monomial(self.F, self.q**h) - Poly.gen(self.F)
        return base.compose_power(self.p**ell)

    # -- logarithm coefficients

    def log_bottom_row(self, i: int, n: int) -> list[RatFunc]:
        """Bottom row of the i-th coefficient matrix of log_n.

        Entry l (1-based) is (-1)^{n-l} (theta^{q^i} - theta)^{n-l} / L_i^n.
        """
        if i < 1:
            raise ValueError("i >= 1")
        Ln = self.L(i) ** n
        base = self.theta.frob(i) - self.theta
        out = []
        for ell in range(1, n + 1):
            k = n - ell
            num = base**k
            if k % 2:
                num = -num
            out.append(RatFunc(num, Ln))
        return out

    # -- Euler ratios

    def euler_ratio_raw(self, m: int) -> RatFunc:
        """Coefficient of z^m in (e_C(z)/z)^{-1}, where e_C(z)/z = sum z^{q^i - 1}/D_i."""
        q = self.q
        if m < 1 or m % (q - 1):
            raise ValueError(f"Euler ratio needs (q-1) | m, got m={m}")
        with self._lock:
            if m in self._euler:
                return self._euler[m]
            step = q - 1
            coeffs = {0: RatFunc(Poly.one(self.F, "theta"))}
            for k in range(step, m + 1, step):
                acc = RatFunc(Poly.zero(self.F, "theta"))
                i = 1
                while q**i - 1 <= k:
                    prev = coeffs.get(k - (q**i - 1))
                    if prev is not None and prev:
                        acc = acc + prev / self.D(i)
                    i += 1
                coeffs[k] = -acc
                self._euler.setdefault(k, coeffs[k])
            return self._euler[m]

    def euler_ratio(self, m: int) -> RatFunc:
        """gamma_m with zeta_A(m) = gamma_m * pi^m, sign calibrated numerically."""
        raw = self.euler_ratio_raw(m)
        if self.euler_sign is None:
            from .numeric import calibrate_euler_sign
            calibrate_euler_sign(self)
        return raw if self.euler_sign == 1 else -raw


@functools.cache
def context(q: int) -> CarlitzContext:
    """Shared context per q."""
    return CarlitzContext(q)


def sup_degree(x) -> float:
    """Maximal theta-degree over the entries of a point or the coefficients of a BiPoly."""
    if isinstance(x, BiPoly):
        return x.deg_theta
    return max((e.deg for e in x), default=DEG_ZERO)
