"""Exhaustive relation search used by the completeness checks."""

import itertools

import numpy as np

from dzv.algebra import Poly, field, fqlinalg, polymat as pm
from dzv.carlitz import carlitz_action


def _flatten(pt, width):
    out = np.zeros(pt.n * width, dtype=np.int64)
    for i, z in enumerate(pt):
        out[i * width: i * width + len(z.c)] = z.c
    return out


def annihilators(points, deg, q):
    """F_q-basis of all (a_1..a_m) with deg_t a_i <= deg and sum [a_i](v_i) = 0,
    found by evaluating every candidate vector (q prime)."""
    F = field(q)
    m = len(points)
    t = Poly.gen(F)
    images = [carlitz_action(t**k, v) for v in points for k in range(deg + 1)]
    width = 1 + max((int(z.deg) for im in images for z in im if z), default=0)
    A = np.stack([_flatten(im, width) for im in images])
    cands = np.array(list(itertools.product(range(q), repeat=m * (deg + 1))), dtype=np.int64)
    hits = cands[~((cands @ A) % q).any(axis=1)]
    if len(hits) == 0:
        return []
    R, piv = fqlinalg.rref(F, hits)
    return [row for row in R[: len(piv)]]


def to_polys(vec, m, deg, q):
    F = field(q)
    return [Poly(F, vec[i * (deg + 1):(i + 1) * (deg + 1)]) for i in range(m)]


def in_span(basis, vec, q):
    """vec in the F_q(t)-span of basis (lists of polynomials)."""
    F = field(q)
    rows = [pm.vec_from_polys(b) for b in basis]
    r0 = pm.rank(F, rows, len(vec)) if rows else 0
    return pm.rank(F, rows + [pm.vec_from_polys(vec)], len(vec)) == r0
