"""Dense exact linear algebra over a finite field given by a :class:`GF`."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .gf import GF


def rref(F: GF, M):
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return M.copy(), 0, np.zeros(0, dtype=np.int64)
    return _kernels.rref(M, F.add, F.mul, F.neg, F.inv)


def rank(F: GF, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return int(rref(F, M)[1])


def matmul(F: GF, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if F.is_prime_field:
        return (A.dot(B)) % F.p
    return _kernels.matmul(A, B, F.add, F.mul)


def mat_add(F: GF, A, B) -> np.ndarray:
    return F.add[np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)]


def mat_sub(F: GF, A, B) -> np.ndarray:
    return F.sub[np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)]


def scale(F: GF, c: int, A) -> np.ndarray:
    return F.mul[c, np.asarray(A, dtype=np.int64)]


def nullspace(F: GF, A) -> np.ndarray:
    """Columns spanning {x : A x = 0}."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0 or n == 0:
        return np.eye(n, dtype=np.int64)
    R, r, piv = rref(F, A)
    piv = [int(c) for c in piv]
    free = [c for c in range(n) if c not in set(piv)]
    N = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        N[f, j] = 1
        for i, pc in enumerate(piv):
            N[pc, j] = F.neg[R[i, f]]
    return N


def solve(F: GF, A, b):
    """A particular solution of A x = b (b may be a matrix), or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.zeros((n,) if vec else (n, b.shape[1]), dtype=np.int64)
    R, r, piv = rref(F, np.hstack([A, b]))
    if any(int(c) >= n for c in piv):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[int(c)] = R[i, n:]
    return x[:, 0] if vec else x


def inverse(F: GF, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if n == 0:
        return A.copy()
    R, r, _ = rref(F, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if r < n or not np.array_equal(R[:, :n], np.eye(n, dtype=np.int64)):
        raise ValueError("matrix is singular")
    return R[:, n:].copy()


def column_basis(F: GF, A) -> np.ndarray:
    """Independent columns of A spanning its column space (a subset of A's columns)."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return np.zeros((A.shape[0], 0), dtype=np.int64)
    _, _, piv = rref(F, A)
    return A[:, piv].copy()


def extend_columns(F: GF, base, candidates):
    """Indices of candidate columns extending the span of ``base`` greedily."""
    base = np.asarray(base, dtype=np.int64)
    candidates = np.asarray(candidates, dtype=np.int64)
    k = base.shape[1]
    _, _, piv = rref(F, np.hstack([base, candidates]))
    return [int(c) - k for c in piv if int(c) >= k]


def in_span(F: GF, base, vecs) -> bool:
    base = np.asarray(base, dtype=np.int64)
    vecs = np.asarray(vecs, dtype=np.int64)
    if vecs.size == 0:
        return True
    return rank(F, np.hstack([base, vecs])) == rank(F, base)


def random_matrix(F: GF, shape, rng) -> np.ndarray:
    return rng.integers(0, F.size, size=shape, dtype=np.int64)


def combine(F: GF, mats, coeffs) -> np.ndarray:
    """Linear combination sum c_i M_i."""
    out = np.zeros_like(np.asarray(mats[0], dtype=np.int64))
    for c, M in zip(coeffs, mats):
        c = int(c)
        if c:
            out = F.add[out, F.mul[c, M]]
    return out
