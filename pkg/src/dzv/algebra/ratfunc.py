"""Reduced fractions of univariate polynomials over F_q."""

from __future__ import annotations

from .poly import Poly


class RatFunc:
    """num/den with gcd(num, den) = 1 and den monic.

    Works in either variable; the solver uses F_q(t), the Euler ratios and
    the Chen ranks use F_q(theta).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.F, num.var)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = num, Poly.one(num.F, num.var)
            return
        g = num.gcd(den)
        if not g.is_one():
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc()
        if lc != 1:
            inv = num.F.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def from_int(cls, F, a: int, var="t"):
        return cls(Poly.constant(F, F.from_int(a), var))

    @property
    def F(self):
        return self.num.F

    @property
    def var(self):
        return self.num.var

    def __bool__(self):
        return bool(self.num)

    def is_poly(self):
        return self.den.is_one()

    def __eq__(self, other):
        if isinstance(other, Poly):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_one():
            return f"({self.num!r})"
        return f"({self.num!r})/({self.den!r})"

    def _coerce(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc(x)
        if isinstance(x, int):
            return RatFunc.from_int(self.F, x, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

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
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)
