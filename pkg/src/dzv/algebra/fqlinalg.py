"""Gaussian elimination over F_q for small dense matrices."""

from __future__ import annotations

import numpy as np

from .field import GF


def rref(F: GF, M):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = F.vscale(F.inv(int(A[r, c])), A[r])
        for k in np.flatnonzero(A[:, c]):
            if k != r:
                A[k] = F.vsub(A[k], F.vscale(int(A[k, c]), A[r]))
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace(F: GF, M, ncols: int | None = None):
    """Basis of {x : M x = 0} as rows of an array."""
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        n = ncols if ncols is not None else M.shape[1]
        return np.eye(n, dtype=np.int64)
    A, pivots = rref(F, M)
    n = A.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for b, fc in enumerate(free):
        basis[b, fc] = 1
        for i, pc in enumerate(pivots):
            basis[b, pc] = F.neg(int(A[i, fc]))
    return basis


def rank(F: GF, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])
