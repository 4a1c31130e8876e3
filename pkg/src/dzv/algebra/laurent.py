"""Truncated Laurent series in u = 1/theta over F_q.

A series is ``sum_i c[i] * u**(v + i) + O(u**prec)``.  ``v`` may be negative
(positive powers of theta).  Exact inputs such as polynomials and rational
functions are converted at a caller-supplied absolute precision.
"""

from __future__ import annotations

import numpy as np

from .field import GF
from .poly import Poly


class LaurentSeries:
    __slots__ = ("F", "v", "c", "prec")

    def __init__(self, F: GF, v: int, coeffs, prec: int):
        c = np.asarray(coeffs, dtype=np.int64)[: max(prec - v, 0)]
        nz = np.flatnonzero(c)
        if len(nz) == 0:
            v, c = prec, c[:0]
        else:
            v, c = v + int(nz[0]), c[nz[0]:]
        c = np.ascontiguousarray(c)
        c.flags.writeable = False
        self.F, self.v, self.c, self.prec = F, v, c, prec

    # -- constructors

    @classmethod
    def zero(cls, F, prec):
        return cls(F, prec, [], prec)

    @classmethod
    def one(cls, F, prec):
        return cls(F, 0, [1], prec)

    @classmethod
    def from_poly(cls, f: Poly, prec: int):
        """The polynomial f(theta) to absolute precision prec."""
        if not f:
            return cls.zero(f.F, prec)
        d = f.deg
        return cls(f.F, -d, f.c[::-1], prec)

    @classmethod
    def from_ratio(cls, num: Poly, den: Poly, prec: int):
        """num(theta)/den(theta) to absolute precision prec."""
        if not num:
            return cls.zero(num.F, prec)
        inv = cls.from_poly(den, prec + num.deg + 2 * den.deg + 1).inverse_to(prec + num.deg)
        return inv.mul_poly(num)

    # -- inspection

    @property
    def rel_prec(self):
        return self.prec - self.v

    def is_zero(self):
        """True if the series vanishes to its precision."""
        return len(self.c) == 0

    def coeff(self, e: int) -> int:
        """Coefficient of u**e; raises if e is beyond the known precision."""
        if e >= self.prec:
            raise ValueError(f"coefficient u^{e} beyond precision {self.prec}")
        i = e - self.v
        return int(self.c[i]) if 0 <= i < len(self.c) else 0

    def dense(self, lo: int, hi: int):
        """Coefficients for exponents lo..hi-1 as an array (hi <= prec)."""
        if hi > self.prec:
            raise ValueError("requested coefficients beyond precision")
        out = np.zeros(max(hi - lo, 0), dtype=np.int64)
        a, b = max(lo, self.v), min(hi, self.v + len(self.c))
        if a < b:
            out[a - lo: b - lo] = self.c[a - self.v: b - self.v]
        return out

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.c[:8]):
            if a:
                terms.append(f"{int(a)}*u^{self.v + i}")
        more = " + ..." if len(self.c) > 8 else ""
        return "LaurentSeries(" + (" + ".join(terms) or "0") + more + f" + O(u^{self.prec}))"

    def agrees(self, other: LaurentSeries) -> bool:
        """Equality on the common known range."""
        p = min(self.prec, other.prec)
        lo = min(self.v, other.v, p)
        return np.array_equal(self.dense(lo, p), other.dense(lo, p))

    # -- arithmetic

    def truncate(self, prec: int) -> LaurentSeries:
        return LaurentSeries(self.F, self.v, self.c, min(prec, self.prec))

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        p = min(self.prec, other.prec)
        lo = min(self.v, other.v, p)
        return LaurentSeries(self.F, lo, self.F.vadd(self.dense(lo, p), other.dense(lo, p)), p)

    def __neg__(self):
        return LaurentSeries(self.F, self.v, self.F.vneg(self.c), self.prec)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a: int) -> LaurentSeries:
        return LaurentSeries(self.F, self.v, self.F.vscale(a, self.c), self.prec)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by u**k."""
        return LaurentSeries(self.F, self.v + k, self.c, self.prec + k)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return self.mul_poly(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        prec = min(self.v + other.prec, other.v + self.prec)
        v = self.v + other.v
        n = prec - v
        if n <= 0 or self.is_zero() or other.is_zero():
            return LaurentSeries.zero(self.F, prec)
        prod = self.F.conv(self.c[:n], other.c[:n])[:n]
        return LaurentSeries(self.F, v, prod, prec)

    def mul_poly(self, f: Poly) -> LaurentSeries:
        """Product with the exact polynomial f(theta)."""
        if not f:
            return LaurentSeries.zero(self.F, self.prec)
        d = int(f.deg)
        prec = self.prec - d
        return self * LaurentSeries.from_poly(f, prec - self.v)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentSeries.one(self.F, self.rel_prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> LaurentSeries:
        """1/self, with the same relative precision."""
        return self.inverse_to(self.rel_prec - self.v)

    def inverse_to(self, prec: int) -> LaurentSeries:
        """1/self to absolute precision at most prec (capped by what is known)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of a series that vanishes to precision")
        F = self.F
        n = min(self.rel_prec, prec + self.v)
        if n <= 0:
            return LaurentSeries.zero(F, prec)
        a = self.c[:n]
        y = np.array([F.inv(int(a[0]))], dtype=np.int64)
        m = 1
        while m < n:
            m = min(2 * m, n)
            ay = F.conv(a[:m], y)[:m]
            # y <- y * (2 - a*y)
            corr = F.vneg(ay)
            corr[0] = F.add(int(corr[0]), F.from_int(2))
            y = F.conv(y, corr)[:m]
        return LaurentSeries(F, -self.v, y, -self.v + n)
