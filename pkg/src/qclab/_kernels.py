"""Hot finite-field kernels with a numba path and a pure-numpy path.

Every kernel takes the field's lookup tables explicitly (``add``, ``mul``,
``neg``, ``inv`` as int64 arrays indexed by element codes), so a single
implementation serves prime fields and their extensions alike.

The numba path is used when numba imports and ``QCLAB_DISABLE_JIT`` is unset
or ``0``; ``set_backend`` switches at runtime (used by the benchmark and the
parity tests).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _env_disabled() -> bool:
    return os.environ.get("QCLAB_DISABLE_JIT", "0").strip().lower() not in ("", "0", "false", "no")


# ---------------------------------------------------------------- numpy path

def rref_np(M, add, mul, neg, inv):
    """Reduced row echelon form; returns (R, rank, pivot columns)."""
    R = np.array(M, dtype=np.int64, copy=True)
    rows, cols = R.shape
    sub = add[:, neg]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + nz[0]
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        R[r] = mul[inv[R[r, c]], R[r]]
        factors = R[:, c].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            R[hit] = sub[R[hit], mul[factors[hit, None], R[r][None, :]]]
        pivots.append(c)
        r += 1
    return R, r, np.array(pivots, dtype=np.int64)


def matmul_np(A, B, add, mul):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = add[out, mul[A[:, k:k + 1], B[k:k + 1, :]]]
    return out


def _combo_digits(start, count, q, k):
    idx = np.arange(start, start + count, dtype=np.int64)
    digits = np.empty((count, k), dtype=np.int64)
    for j in range(k):
        digits[:, j] = idx % q
        idx //= q
    return digits


def _combine_np(basis, digits, add, mul):
    # basis: (k, N, M); digits: (c, k) -> (c, N, M)
    out = np.zeros((digits.shape[0],) + basis.shape[1:], dtype=np.int64)
    for j in range(basis.shape[0]):
        out = add[out, mul[digits[:, j, None, None], basis[j][None]]]
    return out


def _batched_square_np(X, add, mul):
    out = np.zeros_like(X)
    for k in range(X.shape[2]):
        out = add[out, mul[X[:, :, k:k + 1], X[:, k:k + 1, :]]]
    return out


def find_idempotent_np(basis, q, add, mul, chunk=4096):
    """Index of the first combination that is a nontrivial idempotent, or -1."""
    k, N, _ = basis.shape
    total = q**k
    eye = np.eye(N, dtype=np.int64)
    for start in range(0, total, chunk):
        cnt = min(chunk, total - start)
        X = _combine_np(basis, _combo_digits(start, cnt, q, k), add, mul)
        sq = _batched_square_np(X, add, mul)
        idem = np.all(sq == X, axis=(1, 2))
        zero = np.all(X == 0, axis=(1, 2))
        one = np.all(X == eye[None], axis=(1, 2))
        hits = np.nonzero(idem & ~zero & ~one)[0]
        if hits.size:
            return start + int(hits[0])
    return -1


def _is_invertible_np(X, add, mul, neg, inv):
    return rref_np(X, add, mul, neg, inv)[1] == X.shape[0]


def scan_invertible_np(basis, q, add, mul, neg, inv, first_only, chunk=4096):
    """Count invertible combinations (or return index+1 of the first when first_only)."""
    k, N, _ = basis.shape
    total = q**k
    count = 0
    for start in range(0, total, chunk):
        cnt = min(chunk, total - start)
        X = _combine_np(basis, _combo_digits(start, cnt, q, k), add, mul)
        for i in range(cnt):
            if _is_invertible_np(X[i], add, mul, neg, inv):
                if first_only:
                    return start + i + 1
                count += 1
    return count


# ---------------------------------------------------------------- numba path

if numba is not None:

    @njit(cache=True)
    def rref_nb(M, add, mul, neg, inv):
        R = M.copy()
        rows, cols = R.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            pr = -1
            for i in range(r, rows):
                if R[i, c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(cols):
                    t = R[r, j]
                    R[r, j] = R[pr, j]
                    R[pr, j] = t
            s = inv[R[r, c]]
            for j in range(cols):
                R[r, j] = mul[s, R[r, j]]
            for i in range(rows):
                if i != r and R[i, c] != 0:
                    f = neg[R[i, c]]
                    for j in range(cols):
                        if R[r, j] != 0:
                            R[i, j] = add[R[i, j], mul[f, R[r, j]]]
            pivots[r] = c
            r += 1
        return R, r, pivots[:r].copy()

    @njit(cache=True)
    def matmul_nb(A, B, add, mul):
        n, k = A.shape
        m = B.shape[1]
        out = np.zeros((n, m), dtype=np.int64)
        for i in range(n):
            for t in range(k):
                a = A[i, t]
                if a != 0:
                    for j in range(m):
                        if B[t, j] != 0:
                            out[i, j] = add[out[i, j], mul[a, B[t, j]]]
        return out

    @njit(cache=True)
    def _combine_one(basis, idx, q, add, mul, out):
        k = basis.shape[0]
        out[:, :] = 0
        for j in range(k):
            c = idx % q
            idx //= q
            if c != 0:
                for a in range(out.shape[0]):
                    for b in range(out.shape[1]):
                        v = basis[j, a, b]
                        if v != 0:
                            out[a, b] = add[out[a, b], mul[c, v]]

    @njit(cache=True)
    def find_idempotent_nb(basis, q, add, mul):
        k, N, _ = basis.shape
        total = q**k
        X = np.zeros((N, N), dtype=np.int64)
        for idx in range(total):
            _combine_one(basis, idx, q, add, mul, X)
            sq = matmul_nb(X, X, add, mul)
            idem = True
            zero = True
            one = True
            for a in range(N):
                for b in range(N):
                    if sq[a, b] != X[a, b]:
                        idem = False
                    if X[a, b] != 0:
                        zero = False
                    if X[a, b] != (1 if a == b else 0):
                        one = False
            if idem and not zero and not one:
                return idx
        return -1

    @njit(cache=True)
    def scan_invertible_nb(basis, q, add, mul, neg, inv, first_only):
        k, N, _ = basis.shape
        total = q**k
        X = np.zeros((N, N), dtype=np.int64)
        count = 0
        for idx in range(total):
            _combine_one(basis, idx, q, add, mul, X)
            rank = rref_nb(X, add, mul, neg, inv)[1]
            if rank == N:
                if first_only:
                    return idx + 1
                count += 1
        return count


_BACKEND = "numpy" if (numba is None or _env_disabled()) else "numba"


def backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    global _BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(name)
    if name == "numba" and numba is None:
        raise RuntimeError("numba is not available")
    _BACKEND = name


def rref(M, add, mul, neg, inv):
    M = np.ascontiguousarray(M, dtype=np.int64)
    if _BACKEND == "numba":
        return rref_nb(M, add, mul, neg, inv)
    return rref_np(M, add, mul, neg, inv)


def matmul(A, B, add, mul):
    A = np.ascontiguousarray(A, dtype=np.int64)
    B = np.ascontiguousarray(B, dtype=np.int64)
    if _BACKEND == "numba":
        return matmul_nb(A, B, add, mul)
    return matmul_np(A, B, add, mul)


def find_idempotent(basis, q, add, mul):
    basis = np.ascontiguousarray(basis, dtype=np.int64)
    if _BACKEND == "numba":
        return int(find_idempotent_nb(basis, q, add, mul))
    return find_idempotent_np(basis, q, add, mul)


def scan_invertible(basis, q, add, mul, neg, inv, first_only):
    basis = np.ascontiguousarray(basis, dtype=np.int64)
    if _BACKEND == "numba":
        return int(scan_invertible_nb(basis, q, add, mul, neg, inv, first_only))
    return scan_invertible_np(basis, q, add, mul, neg, inv, first_only)
