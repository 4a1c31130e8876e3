"""Vectors and small matrices over F_q[t] stored as dense numpy grids.

A vector of C polynomials is a ``(C, D)`` int64 array whose row c holds the
coefficients of entry c (low degree first).  Elimination is fraction free
(Bareiss), so every division performed is exact.
"""

from __future__ import annotations

import numpy as np

from .field import GF
from .poly import Poly


def trim_cols(X):
    """Drop trailing all-zero degree columns."""
    if X.shape[1] == 0:
        return X
    nz = np.flatnonzero(X.any(axis=0))
    return X[:, : nz[-1] + 1] if len(nz) else X[:, :0]


def vec_from_polys(polys, C=None):
    C = len(polys) if C is None else C
    D = max((len(p) for p in polys), default=0)
    X = np.zeros((C, D), dtype=np.int64)
    for i, p in enumerate(polys):
        X[i, : len(p)] = p.c
    return X


def vec_to_polys(F: GF, X, var="t") -> list[Poly]:
    return [Poly._make(F, X[i].copy(), var) for i in range(X.shape[0])]


def entry(F: GF, X, c, var="t") -> Poly:
    return Poly._make(F, X[c].copy(), var)


def vadd(F: GF, X, Y):
    if X.shape[1] < Y.shape[1]:
        X, Y = Y, X
    out = X.copy()
    out[:, : Y.shape[1]] = F.vadd(out[:, : Y.shape[1]], Y)
    return out


def vsub(F: GF, X, Y):
    return vadd(F, X, F.vneg(Y))


def mul_monomial(F: GF, X, c: int, e: int):
    """c * t**e * X."""
    if c == 0 or X.shape[1] == 0:
        return np.zeros((X.shape[0], 0), dtype=np.int64)
    out = np.zeros((X.shape[0], X.shape[1] + e), dtype=np.int64)
    out[:, e:] = F.vscale(c, X)
    return out


def mul_poly(F: GF, u, X):
    """Multiply every entry of X by the polynomial with coefficient array u."""
    u = np.asarray(u, dtype=np.int64)
    C, D = X.shape
    if len(u) == 0 or D == 0:
        return np.zeros((C, 0), dtype=np.int64)
    W = D + len(u) - 1
    if F.prime:
        P = np.zeros((C, W), dtype=np.int64)
        P[:, :D] = X
        flat = np.convolve(P.reshape(-1), u)[: C * W] % F.p
        return flat.reshape(C, W)
    out = np.zeros((C, W), dtype=np.int64)
    for k in np.flatnonzero(u):
        out[:, k: k + D] = F.vadd(out[:, k: k + D], F.vscale(int(u[k]), X))
    return out


def exact_div(F: GF, X, d):
    """Divide every entry of X by the polynomial d; the division must be exact."""
    d = np.asarray(d, dtype=np.int64)
    db = len(d) - 1
    X = trim_cols(X)
    if db == 0:
        return F.vscale(F.inv(int(d[0])), X)
    if X.shape[1] == 0:
        return X
    if X.shape[1] - 1 < db:
        raise ArithmeticError("inexact division of a polynomial vector")
    r = X.copy()
    inv = F.inv(int(d[-1]))
    Q = np.zeros((X.shape[0], X.shape[1] - db), dtype=np.int64)
    dcol = d.reshape(1, -1)
    for i in range(X.shape[1] - 1, db - 1, -1):
        col = r[:, i]
        if col.any():
            qc = F.vscale(inv, col)
            Q[:, i - db] = qc
            r[:, i - db: i + 1] = F.vsub(r[:, i - db: i + 1], F.vmul(qc.reshape(-1, 1), dcol))
    if r[:, :db].any():
        raise ArithmeticError("inexact division of a polynomial vector")
    return Q


def entry_degrees(X):
    """Degree of each entry, -1 for zero entries (internal use only)."""
    if X.shape[1] == 0:
        return np.full(X.shape[0], -1)
    nz = X != 0
    rev = nz[:, ::-1]
    last = X.shape[1] - 1 - np.argmax(rev, axis=1)
    return np.where(nz.any(axis=1), last, -1)


def bareiss_echelon(F: GF, rows, ncols: int, col_order=None):
    """Fraction-free row echelon form of the stacked vectors ``rows``.

    Columns are eliminated in ``col_order`` (default: natural order).  In each
    column the remaining row whose entry has the lowest degree is the pivot.
    Returns a list of ``(col, row)`` pairs: the echelon rows with their pivot
    columns, in elimination order.  Rows are arrays of shape ``(ncols, D)``.
    """
    col_order = list(range(ncols)) if col_order is None else list(col_order)
    work = [trim_cols(r) for r in rows]
    work = [r for r in work if r.shape[1] and r.any()]
    prev = np.array([1], dtype=np.int64)
    echelon = []
    for col in col_order:
        if not work:
            break
        degs = [entry_degrees(r[col: col + 1])[0] for r in work]
        cand = [i for i, dg in enumerate(degs) if dg >= 0]
        if not cand:
            continue
        ip = min(cand, key=lambda i: (degs[i], i))
        piv = work.pop(ip)
        p = trim_cols(piv[col: col + 1])[0]
        echelon.append((col, piv))
        nxt = []
        for r in work:
            x = trim_cols(r[col: col + 1])[0]
            if len(x):
                new = vsub(F, mul_poly(F, p, r), mul_poly(F, x, piv))
            else:
                new = mul_poly(F, p, r)
            new = exact_div(F, new, prev)
            if new.shape[1] and new.any():
                nxt.append(new)
        work = nxt
        prev = p
    return echelon


def rank(F: GF, rows, ncols: int) -> int:
    return len(bareiss_echelon(F, rows, ncols))
