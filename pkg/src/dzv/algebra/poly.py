"""Dense univariate polynomials over F_q."""

from __future__ import annotations

import numpy as np

from .field import GF, field

DEG_ZERO = float("-inf")
"""Degree of the zero polynomial.  Compares below every integer."""


def _trim(c):
    nz = np.flatnonzero(c)
    if len(nz) == 0:
        return c[:0]
    return c[: nz[-1] + 1]


def _frozen(c):
    c = np.ascontiguousarray(c, dtype=np.int64)
    c.flags.writeable = False
    return c


class Poly:
    """Polynomial in one variable (``t`` or ``theta``) over a finite field.

    Coefficients are stored low degree first with no trailing zeros.  Python
    ints mixed into arithmetic are read through Z -> F_p.
    """

    __slots__ = ("F", "c", "var", "_hash")

    def __init__(self, F: GF, coeffs=(), var: str = "t", *, _raw=False):
        self.F = F
        self.var = var
        if _raw:
            self.c = coeffs
        else:
            arr = np.array(coeffs, dtype=np.int64).reshape(-1)
            if arr.size and (arr.min() < 0 or arr.max() >= F.q):
                raise ValueError("coefficients must lie in range(q)")
            self.c = _frozen(_trim(arr))
        self._hash = None

    @classmethod
    def _make(cls, F, arr, var):
        return cls(F, _frozen(_trim(arr)), var, _raw=True)

    # -- constructors

    @classmethod
    def zero(cls, F, var="t"):
        return cls._make(F, np.zeros(0, dtype=np.int64), var)

    @classmethod
    def one(cls, F, var="t"):
        return cls.constant(F, 1, var)

    @classmethod
    def constant(cls, F, a: int, var="t"):
        return cls._make(F, np.array([a], dtype=np.int64), var)

    @classmethod
    def gen(cls, F, var="t"):
        return cls._make(F, np.array([0, 1], dtype=np.int64), var)

    @classmethod
    def monomial(cls, F, k: int, a: int = 1, var="t"):
        arr = np.zeros(k + 1, dtype=np.int64)
        arr[k] = a
        return cls._make(F, arr, var)

    @classmethod
    def from_ints(cls, q: int, coeffs, var="t"):
        return cls(field(q), coeffs, var)

    # -- basic properties

    @property
    def deg(self):
        return len(self.c) - 1 if len(self.c) else DEG_ZERO

    def __len__(self):
        return len(self.c)

    def __bool__(self):
        return len(self.c) > 0

    def is_one(self):
        return len(self.c) == 1 and self.c[0] == 1

    def lc(self) -> int:
        return int(self.c[-1]) if len(self.c) else 0

    def __getitem__(self, k):
        return int(self.c[k]) if 0 <= k < len(self.c) else 0

    def coeffs(self) -> list[int]:
        return [int(x) for x in self.c]

    def with_var(self, var: str) -> Poly:
        return Poly(self.F, self.c, var, _raw=True)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.F is other.F and np.array_equal(self.c, other.c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.F.q, self.c.tobytes()))
        return self._hash

    def __repr__(self):
        if not self:
            return "0"
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            a = int(self.c[k])
            if not a:
                continue
            mon = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if not mon:
                terms.append(str(a))
            elif a == 1:
                terms.append(mon)
            else:
                terms.append(f"{a}*{mon}")
        return " + ".join(terms)

    # -- arithmetic

    def _coerce(self, x):
        if isinstance(x, Poly):
            if x.F is not self.F:
                raise TypeError("polynomials over different fields")
            return x
        if isinstance(x, (int, np.integer)):
            return Poly.constant(self.F, self.F.from_int(int(x)), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        out[: len(b)] = self.F.vadd(out[: len(b)], b)
        return Poly._make(self.F, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make(self.F, self.F.vneg(self.c), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._make(self.F, self.F.conv(self.c, other.c), self.var)

    __rmul__ = __mul__

    def scale(self, a: int) -> Poly:
        """Multiply by the field element a."""
        return Poly._make(self.F, self.F.vscale(a, self.c), self.var)

    def shift(self, k: int) -> Poly:
        """Multiply by var**k."""
        if not self:
            return self
        return Poly._make(self.F, np.concatenate([np.zeros(k, dtype=np.int64), self.c]), self.var)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.F, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        r = self.c.copy()
        db = len(other.c) - 1
        if len(r) - 1 < db:
            return Poly.zero(F, self.var), self
        inv = F.inv(int(other.c[-1]))
        b = other.c
        qt = np.zeros(len(r) - db, dtype=np.int64)
        for i in range(len(r) - 1, db - 1, -1):
            c = int(r[i])
            if c:
                c = F.mul(c, inv)
                qt[i - db] = c
                r[i - db: i + 1] = F.vsub(r[i - db: i + 1], F.vscale(c, b))
        return Poly._make(F, qt, self.var), Poly._make(F, r[:db], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Poly:
        """Quotient self / other; raises ArithmeticError on a nonzero remainder."""
        quo, rem = divmod(self, other)
        if rem:
            raise ArithmeticError(f"inexact division: remainder {rem!r}")
        return quo

    def monic(self) -> Poly:
        if not self:
            return self
        return self.scale(self.F.inv(self.lc()))

    def gcd(self, other) -> Poly:
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def __call__(self, x: int) -> int:
        F = self.F
        acc = 0
        for a in self.c[::-1]:
            acc = F.add(F.mul(acc, x), int(a))
        return acc

    def frob(self, m: int = 1) -> Poly:
        """Replace var by var**(q**m): the m-fold Frobenius twist of an element of F_q[var]."""
        if m < 0:
            raise ValueError("negative twist")
        if m == 0 or len(self.c) <= 1:
            return self
        step = self.F.q**m
        out = np.zeros((len(self.c) - 1) * step + 1, dtype=np.int64)
        out[::step] = self.c
        return Poly._make(self.F, out, self.var)

    def compose_power(self, k: int) -> Poly:
        """Replace var by var**k."""
        if k == 1 or len(self.c) <= 1:
            return self
        out = np.zeros((len(self.c) - 1) * k + 1, dtype=np.int64)
        out[::k] = self.c
        return Poly._make(self.F, out, self.var)


def sup_degree(entries) -> float:
    """Maximal degree over a sequence of polynomials; DEG_ZERO if all vanish."""
    return max((e.deg for e in entries), default=DEG_ZERO)
