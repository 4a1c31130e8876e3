"""Chen's product relations between weight-n double zetas and pi^n.

For A-even r, s with r + s = n the product zeta(r) zeta(s) expands as
zeta(r,s) + zeta(s,r) + zeta(n) plus an F_p-combination of zeta(i,j) with
(q-1) | j.  Both single zetas and zeta(n) are rational multiples of pi^n, so
each pair gives a linear relation among pi^n and double zetas.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly, field
from .algebra.ratfunc import RatFunc
from .carlitz import context, lucas_binomial


@dataclass(frozen=True)
class ChenVector:
    """pi_coeff * pi^n = sum_j zeta_coeffs[j] * zeta(j+1, n-j-1).

    zeta_coeffs is indexed by i-1 for the slot (i, n-i), entries in F_p.
    """

    q: int
    n: int
    r: int
    s: int
    pi_coeff: RatFunc
    zeta_coeffs: tuple[int, ...]

    def slot(self, i: int, j: int) -> int:
        if i + j != self.n or i < 1 or j < 1:
            raise ValueError(f"({i},{j}) is not a weight {self.n} index")
        return self.zeta_coeffs[i - 1]

    def support(self):
        return [(i + 1, self.n - i - 1) for i, c in enumerate(self.zeta_coeffs) if c]

    def is_zero(self):
        return not self.pi_coeff and not any(self.zeta_coeffs)


def _bracket(r: int, s: int, j: int, p: int) -> int:
    out = 0
    for e in (s, r):
        b = lucas_binomial(j - 1, e - 1, p)
        out += -b if (e - 1) % 2 else b
    return out % p


def chen_vector(r: int, s: int, q: int) -> ChenVector:
    """The relation attached to the A-even pair (r, s), r <= s."""
    ctx = context(q)
    p = ctx.p
    if r < 1 or s < 1 or r % (q - 1) or s % (q - 1):
        raise ValueError(f"({r},{s}) is not a pair of positive A-even integers for q={q}")
    if r > s:
        raise ValueError("expected r <= s")
    n = r + s
    coeffs = [0] * (n - 1)
    for j in range(q - 1, n, q - 1):
        i = n - j
        coeffs[i - 1] = (coeffs[i - 1] + _bracket(r, s, j, p)) % p
    coeffs[r - 1] = (coeffs[r - 1] + 1) % p
    coeffs[s - 1] = (coeffs[s - 1] + 1) % p
    pi = ctx.euler_ratio(r) * ctx.euler_ratio(s) - ctx.euler_ratio(n)
    return ChenVector(q, n, r, s, pi, tuple(coeffs))


def chen_pairs(n: int, q: int) -> list[tuple[int, int]]:
    return [(r, n - r) for r in range(q - 1, n // 2 + 1, q - 1) if (n - r) % (q - 1) == 0]


def chen_vectors(n: int, q: int) -> list[ChenVector]:
    return [chen_vector(r, s, q) for r, s in chen_pairs(n, q)]


def _row(v: ChenVector) -> list[RatFunc]:
    F = v.pi_coeff.F
    row = [v.pi_coeff]
    row.extend(RatFunc(Poly.constant(F, F.from_int(c), "theta")) for c in v.zeta_coeffs)
    return row


def rank_over_k(rows: list[list[RatFunc]]) -> int:
    """Rank of a matrix with entries in F_q(theta), by plain elimination."""
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        inv = pr[c].inverse()
        for i in range(rank + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        rank += 1
    return rank


def fp_linear_count(n: int, q: int) -> int:
    """Number of independent relations produced by the product formula at weight n."""
    if n < 2 or n % (q - 1):
        raise ValueError(f"weight {n} is A-odd for q={q}; the count is undefined")
    field(q)
    vecs = chen_vectors(n, q)
    if not vecs:
        return 0
    return rank_over_k([_row(v) for v in vecs])


def numeric_residual(v: ChenVector, d_max: int, prec: int | None = None):
    """pi_coeff * pi^n - sum c_ij zeta(i,j) as a Laurent series in 1/theta.

    Should vanish to the returned precision.  The default precision is the
    one guaranteed for zeta(1, n-1) at truncation d_max.
    """
    from .algebra.laurent import LaurentSeries
    from .numeric import pi_power, zeta_double

    q, n = v.q, v.n
    if prec is None:
        prec = d_max + 1
    F = field(q)
    out = LaurentSeries.zero(F, prec)
    if v.pi_coeff:
        num, den = v.pi_coeff.num, v.pi_coeff.den
        pv = -(n * q) // (q - 1)
        x = LaurentSeries.from_ratio(num, den, prec - pv + int(num.deg))
        out = out + (x * pi_power(q, n, prec - pv + max(0, int(num.deg) - int(den.deg)))).truncate(prec)
    for i, c in enumerate(v.zeta_coeffs):
        if c:
            z = zeta_double(q, i + 1, n - i - 1, d_max, min(prec, (i + 1) * (d_max + 1))).value
            out = out - z.scale(c)
    return out.truncate(prec)
