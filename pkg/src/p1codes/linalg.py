"""Exact Gaussian elimination over GF(q) on numpy arrays of element codes.

Pivoting is deterministic: the first row (from the current one down) with a
nonzero entry in the pivot column.
"""

from __future__ import annotations

import numpy as np

from .gfpoly import GF


def as_matrix(M) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    return A


def rref(F: GF, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    A = as_matrix(M).copy()
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = F.vmul(A[r], F.inv(int(A[r, c])))
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = F.vsub(A[mask], F.vmul(col[mask, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: GF, M) -> int:
    A = as_matrix(M)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: GF, M, ncols: int | None = None) -> np.ndarray:
    """Rows spanning {v : M v^T = 0}."""
    A = as_matrix(M)
    n = A.shape[1] if A.size else (ncols if ncols is not None else A.shape[1])
    if A.size == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for j, f in enumerate(free):
        out[j, f] = 1
        for i, pc in enumerate(piv):
            out[j, pc] = F.neg(int(R[i, f]))
    return out


def independent_rows(F: GF, M) -> list[int]:
    """Indices of the first maximal set of linearly independent rows."""
    A = as_matrix(M)
    if A.size == 0:
        return []
    return rref(F, A.T)[1]


def inverse(F: GF, M) -> np.ndarray:
    A = as_matrix(M)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(F, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def solve(F: GF, A, B) -> np.ndarray:
    """X with A X = B for square invertible A."""
    return F.matmul(inverse(F, A), as_matrix(B))


def in_rowspace(F: GF, M, v) -> bool:
    A = as_matrix(M)
    v = np.asarray(v, dtype=np.int64).reshape(1, -1)
    if A.size == 0:
        return not v.any()
    return rank(F, np.vstack([A, v])) == rank(F, A)


def rowspace_equal(F: GF, A, B) -> bool:
    A, B = as_matrix(A), as_matrix(B)
    ra, rb = rank(F, A), rank(F, B)
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(F, np.vstack([A, B])) == ra


def batch_nonsingular(F: GF, mats: np.ndarray) -> np.ndarray:
    """Boolean mask: which of the square matrices in a (B, k, k) stack are invertible."""
    A = np.array(mats, dtype=np.int64)
    B, k, _ = A.shape
    ok = np.ones(B, dtype=bool)
    idx = np.arange(B)
    for c in range(k):
        nz = A[:, c:, c] != 0
        has = nz.any(axis=1)
        ok &= has
        piv = c + np.argmax(nz, axis=1)
        row_c = A[idx, c].copy()
        A[idx, c] = A[idx, piv]
        A[idx, piv] = row_c
        pv = A[:, c, c]
        inv = F.vinv(np.where(pv == 0, 1, pv))
        if c + 1 < k:
            factors = F.vmul(A[:, c + 1:, c], inv[:, None])
            A[:, c + 1:, c:] = F.vsub(A[:, c + 1:, c:], F.vmul(factors[:, :, None], A[:, c, None, c:]))
    return ok
