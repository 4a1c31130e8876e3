"""Normal forms modulo (sigma - 1) and the special points v_n, v_s, Xi_s.

A depth-two module element is a pair (g1, g2) of elements of F_q[theta][t]
standing for g1*m_1 + g2*m_2.  The relations

    sigma m_1 = (t - theta)^n m_1
    sigma m_2 = H_{s1-1}^{(-1)} (t - theta)^n m_1 + (t - theta)^{s2} m_2

together with b*sigma(x) = sigma(b^{(1)} x) = b^{(1)} x mod (sigma - 1) give
two rewrite rules that only ever twist forward:

    B2: g2 = Q (t-theta)^{s2} + R   ->  g2 = R + Q^{(1)},  g1 -= Q^{(1)} H_{s1-1}
    B1: g1 = Q (t-theta)^n + R      ->  g1 = R + Q^{(1)}

B2 runs to exhaustion first because it feeds g1 and never the reverse.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import BiPoly, Poly
from .carlitz import CarlitzContext, TensorPoint, context


@dataclass(frozen=True)
class ModuleShape:
    s1: int
    s2: int

    @property
    def n(self):
        return self.s1 + self.s2

    @property
    def d(self):
        return self.n + self.s2


@dataclass(frozen=True)
class ModuleElement:
    g1: BiPoly
    g2: BiPoly

    def __add__(self, other):
        return ModuleElement(self.g1 + other.g1, self.g2 + other.g2)

    def __sub__(self, other):
        return ModuleElement(self.g1 - other.g1, self.g2 - other.g2)

    def mul(self, a) -> ModuleElement:
        """Multiply both components by a in F_q[t] (or F_q[theta][t])."""
        if isinstance(a, Poly):
            a = BiPoly.from_t_poly(a) if a.var == "t" else BiPoly.from_theta_poly(a)
        return ModuleElement(self.g1 * a, self.g2 * a)


@dataclass(frozen=True)
class NormalForm:
    """Coordinates (a_1..a_n, b_1..b_{s2}) of sum a_j (t-theta)^{n-j} m_1 + sum b_j (t-theta)^{s2-j} m_2."""

    shape: ModuleShape
    coords: tuple

    @property
    def first_block(self) -> TensorPoint:
        return TensorPoint(self.coords[: self.shape.n])

    @property
    def m2_block(self) -> tuple:
        return self.coords[self.shape.n:]

    def in_tensor_power(self) -> bool:
        return not any(self.m2_block)

    def sup_degree(self):
        return max(c.deg for c in self.coords)


def _falling_vector(g: BiPoly, k: int) -> list[Poly]:
    """Falling coefficients of g (deg_t g < k), highest power first, length k."""
    _, rem = g.falling_split(k)
    return rem[::-1]


def _from_vector(F, coords) -> BiPoly:
    return BiPoly.from_falling(F, list(coords)[::-1])


def reduce_block(g: BiPoly, k: int) -> BiPoly:
    """Rule B1 for a block of size k, to exhaustion."""
    F = g.F
    while g and g.deg_t >= k:
        quo, rem = g.falling_split(k)
        g = BiPoly.from_falling(F, rem) + quo.twist(1)
    return g


def normalize(x: ModuleElement, shape: ModuleShape, ctx: CarlitzContext | None = None) -> NormalForm:
    """Reduced representative of x in M'_s / (sigma - 1) M'_s."""
    F = x.g1.F if x.g1 else x.g2.F
    ctx = ctx or context(F.q)
    n, s2 = shape.n, shape.s2
    g1, g2 = x.g1, x.g2
    H = None
    while g2 and g2.deg_t >= s2:
        quo, rem = g2.falling_split(s2)
        tw = quo.twist(1)
        if H is None:
            H = ctx.H(shape.s1 - 1)
        g2 = BiPoly.from_falling(F, rem) + tw
        g1 = g1 - tw * H
    g1 = reduce_block(g1, n)
    coords = tuple(_falling_vector(g1, n)) + tuple(_falling_vector(g2, s2))
    return NormalForm(shape, coords)


def normalize_tensor(g: BiPoly, n: int) -> TensorPoint:
    """Normal form of g*m in the Frobenius module of the n-th tensor power."""
    return TensorPoint(_falling_vector(reduce_block(g, n), n))


def lift(v) -> ModuleElement | BiPoly:
    """Inverse of reading off coordinates.

    A NormalForm lifts to a ModuleElement; a TensorPoint lifts to the
    associated polynomial sum z_j (t - theta)^{n-j}.
    """
    if isinstance(v, NormalForm):
        F = v.coords[0].F
        n = v.shape.n
        return ModuleElement(_from_vector(F, v.coords[:n]), _from_vector(F, v.coords[n:]))
    return _from_vector(v.F, v.entries)


def embed(z: TensorPoint, shape: ModuleShape) -> ModuleElement:
    """z as an element of M'_s with zero m_2 block."""
    if z.n != shape.n:
        raise ValueError("dimension mismatch")
    return ModuleElement(lift(z), BiPoly.zero(z.F))


def action_via_normalize(a: Poly, z: TensorPoint) -> TensorPoint:
    """[a]_n(z) computed through the Frobenius module; compare with carlitz_action."""
    return normalize_tensor(lift(z) * BiPoly.from_t_poly(a), z.n)


def special_point_vn(n: int, q: int) -> TensorPoint:
    """v_n: the normal form of H_{n-1}."""
    if n < 1:
        raise ValueError("n >= 1")
    return normalize_tensor(context(q).H(n - 1), n)


def special_point_vs(s1: int, s2: int, q: int) -> NormalForm:
    """v_s = normal form of -H_{s1-1} H_{s2-1} m_1 + H_{s2-1} m_2."""
    if s1 < 1 or s2 < 1:
        raise ValueError("s1, s2 >= 1")
    ctx = context(q)
    h2 = ctx.H(s2 - 1)
    x = ModuleElement(-(ctx.H(s1 - 1) * h2), h2)
    return normalize(x, ModuleShape(s1, s2), ctx)


class TheoremViolation(AssertionError):
    """A structural identity guaranteed by theory failed: an implementation bug."""


def xi_point(s1: int, s2: int, q: int) -> TensorPoint:
    """Xi_s: the normal form of alpha_s * v_s, which must lie in the tensor power."""
    ctx = context(q)
    alpha = ctx.alpha(s2)
    vs = special_point_vs(s1, s2, q)
    nf = normalize(lift(vs).mul(alpha), vs.shape, ctx)
    if not nf.in_tensor_power():
        raise TheoremViolation(f"Xi_({s1},{s2}) has a nonzero m_2 block")
    return nf.first_block
