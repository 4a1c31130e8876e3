"""Elements of F_q[theta][t] stored as a dense ``[t, theta]`` coefficient grid."""

from __future__ import annotations

import numpy as np

from .field import GF
from .poly import DEG_ZERO, Poly, _frozen


def _trim2(a):
    if a.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    rows = np.flatnonzero(a.any(axis=1))
    if len(rows) == 0:
        return np.zeros((0, 0), dtype=np.int64)
    cols = np.flatnonzero(a.any(axis=0))
    return a[: rows[-1] + 1, : cols[-1] + 1]


class BiPoly:
    """Polynomial in t with coefficients in F_q[theta].

    ``a[i, j]`` is the coefficient of ``t**i * theta**j``.  Both directions are
    trimmed, so the zero element has shape ``(0, 0)``.
    """

    __slots__ = ("F", "a")

    def __init__(self, F: GF, grid, *, _raw=False):
        self.F = F
        if _raw:
            self.a = grid
        else:
            self.a = _frozen(_trim2(np.array(grid, dtype=np.int64).reshape(
                np.shape(grid) if np.ndim(grid) == 2 else (-1, 1))))

    @classmethod
    def _make(cls, F, grid):
        return cls(F, _frozen(_trim2(grid)), _raw=True)

    @classmethod
    def zero(cls, F):
        return cls._make(F, np.zeros((0, 0), dtype=np.int64))

    @classmethod
    def one(cls, F):
        return cls._make(F, np.ones((1, 1), dtype=np.int64))

    @classmethod
    def t(cls, F):
        return cls._make(F, np.array([[0], [1]], dtype=np.int64))

    @classmethod
    def theta(cls, F):
        return cls._make(F, np.array([[0, 1]], dtype=np.int64))

    @classmethod
    def from_t_poly(cls, f: Poly):
        """Embed f in F_q[t]."""
        return cls._make(f.F, np.asarray(f.c).reshape(-1, 1).copy())

    @classmethod
    def from_theta_poly(cls, f: Poly):
        """Embed f in F_q[theta] (constant in t)."""
        return cls._make(f.F, np.asarray(f.c).reshape(1, -1).copy())

    @classmethod
    def from_t_coeffs(cls, F, coeffs):
        """Build sum_i coeffs[i] * t**i from polynomials in theta."""
        coeffs = list(coeffs)
        width = max((len(c) for c in coeffs), default=0)
        grid = np.zeros((len(coeffs), width), dtype=np.int64)
        for i, c in enumerate(coeffs):
            grid[i, : len(c)] = c.c
        return cls._make(F, grid)

    @classmethod
    def t_minus_theta_power(cls, F, k: int):
        """(t - theta)**k."""
        one = BiPoly.one(F)
        return BiPoly.from_falling(F, [Poly.zero(F, "theta")] * k + [Poly.one(F, "theta")]) if k else one

    # -- properties

    @property
    def shape(self):
        return self.a.shape

    @property
    def deg_t(self):
        return self.a.shape[0] - 1 if self.a.size else DEG_ZERO

    @property
    def deg_theta(self):
        return self.a.shape[1] - 1 if self.a.size else DEG_ZERO

    def __bool__(self):
        return self.a.size > 0

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.F is other.F and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash((self.F.q, self.a.shape, self.a.tobytes()))

    def __repr__(self):
        if not self:
            return "BiPoly(0)"
        parts = []
        for i in range(self.a.shape[0] - 1, -1, -1):
            c = self.t_coeff(i)
            if not c:
                continue
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            parts.append(f"({c!r})" + (f"*{mon}" if mon else ""))
        return "BiPoly(" + " + ".join(parts) + ")"

    def t_coeff(self, i: int) -> Poly:
        """Coefficient of t**i, as a polynomial in theta."""
        if 0 <= i < self.a.shape[0]:
            return Poly._make(self.F, self.a[i].copy(), "theta")
        return Poly.zero(self.F, "theta")

    def theta_coeff(self, j: int) -> Poly:
        """Coefficient of theta**j, as a polynomial in t."""
        if self.a.size and 0 <= j < self.a.shape[1]:
            return Poly._make(self.F, self.a[:, j].copy(), "t")
        return Poly.zero(self.F, "t")

    def t_coeffs(self) -> list[Poly]:
        return [self.t_coeff(i) for i in range(self.a.shape[0])]

    def sup_degree(self):
        """Maximal theta-degree over the t-coefficients."""
        return self.deg_theta

    # -- arithmetic

    def _pad_to(self, shape):
        out = np.zeros(shape, dtype=np.int64)
        out[: self.a.shape[0], : self.a.shape[1]] = self.a
        return out

    def __add__(self, other: BiPoly) -> BiPoly:
        if not other:
            return self
        if not self:
            return other
        shape = (max(self.a.shape[0], other.a.shape[0]), max(self.a.shape[1], other.a.shape[1]))
        out = self._pad_to(shape)
        r, c = other.a.shape
        out[:r, :c] = self.F.vadd(out[:r, :c], other.a)
        return BiPoly._make(self.F, out)

    def __neg__(self):
        return BiPoly._make(self.F, self.F.vneg(self.a))

    def __sub__(self, other: BiPoly) -> BiPoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            other = BiPoly.from_t_poly(other) if other.var == "t" else BiPoly.from_theta_poly(other)
        if isinstance(other, (int, np.integer)):
            return self.scale(self.F.from_int(int(other)))
        if not isinstance(other, BiPoly):
            return NotImplemented
        if not self or not other:
            return BiPoly.zero(self.F)
        return BiPoly._make(self.F, _mul2(self.F, self.a, other.a))

    __rmul__ = __mul__

    def scale(self, c: int) -> BiPoly:
        return BiPoly._make(self.F, self.F.vscale(c, self.a))

    def __pow__(self, k: int):
        result = BiPoly.one(self.F)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift_t(self, k: int) -> BiPoly:
        """Multiply by t**k."""
        if not self or k == 0:
            return self
        out = np.zeros((self.a.shape[0] + k, self.a.shape[1]), dtype=np.int64)
        out[k:] = self.a
        return BiPoly._make(self.F, out)

    def twist(self, m: int = 1) -> BiPoly:
        """m-fold Frobenius twist: theta -> theta**(q**m) in every t-coefficient."""
        if m < 0:
            raise ValueError("negative Frobenius twists are not materialised")
        if m == 0 or not self or self.a.shape[1] == 1:
            return self
        step = self.F.q**m
        out = np.zeros((self.a.shape[0], (self.a.shape[1] - 1) * step + 1), dtype=np.int64)
        out[:, ::step] = self.a
        return BiPoly._make(self.F, out)

    def subs_theta_eq_t(self) -> Poly:
        """Specialise theta := t, giving an element of F_q[t]."""
        if not self:
            return Poly.zero(self.F, "t")
        r, c = self.a.shape
        out = np.zeros(r + c - 1, dtype=np.int64)
        for j in range(c):
            out[j: j + r] = self.F.vadd(out[j: j + r], self.a[:, j])
        return Poly._make(self.F, out, "t")

    def subs_t_eq_theta(self) -> Poly:
        """Specialise t := theta, giving an element of F_q[theta]."""
        return self.subs_theta_eq_t().with_var("theta")

    def exact_div_t(self, d: Poly) -> BiPoly:
        """Divide by a nonzero element of F_q[t]; the division must be exact."""
        if not d:
            raise ZeroDivisionError("division by zero polynomial")
        F = self.F
        if not self:
            return self
        db = len(d.c) - 1
        r = self.a.copy()
        if r.shape[0] - 1 < db:
            raise ArithmeticError("inexact division in F_q[theta][t]")
        inv = F.inv(d.lc())
        quo = np.zeros((r.shape[0] - db, r.shape[1]), dtype=np.int64)
        b = d.c.reshape(-1, 1)
        for i in range(r.shape[0] - 1, db - 1, -1):
            row = r[i]
            if row.any():
                c = F.vscale(inv, row)
                quo[i - db] = c
                r[i - db: i + 1] = F.vsub(r[i - db: i + 1], F.vmul(b, c.reshape(1, -1)))
        if r[:db].any():
            raise ArithmeticError("inexact division in F_q[theta][t]")
        return BiPoly._make(F, quo)

    # -- the (t - theta) basis

    def to_falling(self) -> list[Poly]:
        """Coefficients c_k in F_q[theta] with self = sum_k c_k (t - theta)**k."""
        if not self:
            return []
        grid = taylor_shift(self.F, self.a, 1)
        return [Poly._make(self.F, grid[k].copy(), "theta") for k in range(grid.shape[0])]

    @classmethod
    def from_falling(cls, F, coeffs) -> BiPoly:
        """Inverse of :meth:`to_falling`."""
        g = cls.from_t_coeffs(F, coeffs)
        if not g:
            return g
        return cls._make(F, taylor_shift(F, g.a, F.p - 1))

    def falling_split(self, k: int):
        """Write self = Q*(t - theta)**k + R with deg_t R < k.

        Returns ``(Q, R)`` with Q in the t-power basis and R as the list of its
        falling-basis coefficients (length k, zero padded).
        """
        F = self.F
        if not self:
            return BiPoly.zero(F), [Poly.zero(F, "theta")] * k
        grid = taylor_shift(F, self.a, 1)
        rem = [Poly._make(F, grid[i].copy(), "theta") if i < grid.shape[0] else Poly.zero(F, "theta")
               for i in range(k)]
        if grid.shape[0] <= k:
            return BiPoly.zero(F), rem
        top = _trim2(grid[k:])
        q = BiPoly._make(F, taylor_shift(F, top, F.p - 1)) if top.size else BiPoly.zero(F)
        return q, rem


def _mul2(F: GF, x, y):
    """Product of two [t, theta] grids via Kronecker substitution in theta."""
    rx, cx = x.shape
    ry, cy = y.shape
    w = cx + cy - 1
    if rx == 1 and ry == 1:
        return F.conv(x[0], y[0]).reshape(1, -1)
    if cx == 1 and cy == 1:
        return F.conv(x[:, 0], y[:, 0]).reshape(-1, 1)
    px = np.zeros((rx, w), dtype=np.int64)
    px[:, :cx] = x
    py = np.zeros((ry, w), dtype=np.int64)
    py[:, :cy] = y
    flat = F.conv(px.reshape(-1), py.reshape(-1))
    n = (rx + ry - 1) * w
    out = np.zeros(n, dtype=np.int64)
    out[: min(n, len(flat))] = flat[:n]
    return out.reshape(rx + ry - 1, w)


def taylor_shift(F: GF, grid, lam: int):
    """Grid of f(t + lam*theta, theta) for lam in F_p.

    Uses (t + lam*theta)**(p**k) = t**(p**k) + lam*theta**(p**k), so the
    shift costs a handful of shifted additions per base-p level.
    """
    grid = np.asarray(grid, dtype=np.int64)
    rows = grid.shape[0]
    if rows <= 1:
        return grid.copy()
    p = F.p
    P = 1
    while P * p < rows:
        P *= p
    pieces = [grid[i: i + P] for i in range(0, rows, P)]
    width = grid.shape[1] + rows - 1
    acc = None
    for piece in reversed(pieces):
        sh = taylor_shift(F, piece, lam)
        if acc is None:
            acc = np.zeros((rows, width), dtype=np.int64)
            acc[: sh.shape[0], : sh.shape[1]] = sh
            continue
        # acc <- acc * (t^P + lam*theta^P) + sh
        new = np.zeros_like(acc)
        new[P:] = acc[:-P]
        lam_part = F.vscale(lam, acc[:, : width - P])
        new[:, P:] = F.vadd(new[:, P:], lam_part)
        new[: sh.shape[0], : sh.shape[1]] = F.vadd(new[: sh.shape[0], : sh.shape[1]], sh)
        acc = new
    return _trim2(acc) if acc.any() else np.zeros((0, 0), dtype=np.int64)
