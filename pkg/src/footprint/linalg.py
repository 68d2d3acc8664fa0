"""Exact matrix algebra over a FieldSpec on numpy arrays of raw elements."""

from __future__ import annotations

import numpy as np

from .errors import NotABasis
from .field import FieldSpec


def as_matrix(F: FieldSpec, rows, ncols: int | None = None):
    M = F.array(rows)
    if M.ndim == 1:
        M = M.reshape(0, ncols or 0) if M.size == 0 else M.reshape(1, -1)
    return M


_SMALL = 400


def _rref_small_prime(p: int, M):
    # plain lists beat numpy dispatch on tiny matrices
    rows = M.tolist()
    nrows, ncols = M.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        i = next((i for i in range(r, nrows) if rows[i][c]), None)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        pr = [x * inv % p for x in rows[r]]
        rows[r] = pr
        for j in range(nrows):
            f = rows[j][c]
            if j != r and f:
                rows[j] = [(x - f * y) % p for x, y in zip(rows[j], pr)]
        pivots.append(c)
        r += 1
    out = np.array(rows[:r], dtype=M.dtype).reshape(r, ncols)
    return out, pivots


def rref(F: FieldSpec, M):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = F.array(M)
    if F.kind == "prime" and M.size <= _SMALL:
        return _rref_small_prime(F.p, M)
    M = M.copy()
    nrows, ncols = M.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(M[r:, c] != 0)[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        piv = M[r, c] if F.kind == "rational" else int(M[r, c])
        M[r] = F.vmul(M[r], F.inv(piv))
        others = np.nonzero(M[:, c] != 0)[0]
        others = others[others != r]
        if len(others):
            f = M[others, c][:, None]
            M[others] = F.vsub(M[others], F.vmul(f, M[r][None, :]))
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(F: FieldSpec, M) -> int:
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: FieldSpec, M):
    """Basis (as rows) of {x : M x = 0}."""
    ncols = M.shape[1]
    R, pivots = rref(F, M) if M.shape[0] else (M[:0], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    N = F.zeros((len(free), ncols))
    for k, c in enumerate(free):
        N[k, c] = F.one
        for r, pc in enumerate(pivots):
            N[k, pc] = F.neg(R[r, c])
    return N


def left_nullspace(F: FieldSpec, M):
    """Basis (as rows) of {y : y M = 0}."""
    return nullspace(F, M.T)


def matmul(F: FieldSpec, A, B):
    if F.kind == "prime" and F.dtype is np.int64 and F.p < 1 << 20:
        # exact in int64 while inner sums stay below 2^63
        if A.shape[1] * (F.p - 1) ** 2 < 1 << 62:
            return (A @ B) % F.p
    out = F.zeros((A.shape[0], B.shape[1]))
    for k in range(A.shape[1]):
        out = F.vadd(out, F.vmul(A[:, k][:, None], B[k][None, :]))
    return out


def inverse(F: FieldSpec, M):
    n = M.shape[0]
    if M.shape != (n, n):
        raise NotABasis("inverse needs a square matrix")
    eye = F.zeros((n, n))
    for i in range(n):
        eye[i, i] = F.one
    R, pivots = rref(F, np.concatenate([M, eye], axis=1))
    if pivots[:n] != list(range(n)):
        raise NotABasis("matrix is singular")
    return R[:, n:]


def reverse_echelon(F: FieldSpec, M):
    """Rows spanning the same space with pairwise distinct last nonzero columns.

    Returns (rows, last_nonzero_columns) with columns increasing.
    """
    R, pivots = rref(F, M[:, ::-1])
    R = R[:, ::-1]
    n = M.shape[1]
    last = [n - 1 - c for c in pivots]
    order = np.argsort(last)
    return R[order], [last[i] for i in order]


def solve_rows(F: FieldSpec, B, V):
    """Coordinates X with X @ B = V, for invertible B."""
    return matmul(F, V, inverse(F, B))


def same_rowspace(F: FieldSpec, A, B) -> bool:
    ra = rref(F, A)[0] if A.shape[0] else A[:0]
    rb = rref(F, B)[0] if B.shape[0] else B[:0]
    return ra.shape == rb.shape and bool(np.all(ra == rb))
