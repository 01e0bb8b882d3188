"""Brute-force reference computations used to cross-check the library on tiny inputs.

Everything here enumerates vectors and matrices directly; nothing calls the
library's linear algebra.
"""

import itertools

import numpy as np


def _mat_vec(M, v, F):
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            acc = int(F.add[acc, F.mul[int(a), int(b)]])
        out.append(acc)
    return tuple(out)


def _mat_mul(A, B, F):
    return np.array([[_dot(A[i], B[:, j], F) for j in range(B.shape[1])] for i in range(A.shape[0])],
                    dtype=np.int64).reshape(A.shape[0], B.shape[1])


def _dot(r, c, F):
    acc = 0
    for a, b in zip(r, c):
        acc = int(F.add[acc, F.mul[int(a), int(b)]])
    return acc


def all_subspaces(N, F):
    """Every subspace of F^N, as a frozenset of tuples."""
    zero = (0,) * N
    vectors = list(itertools.product(range(F.size), repeat=N))
    found = {frozenset([zero])}
    frontier = [frozenset([zero])]
    while frontier:
        nxt = []
        for S in frontier:
            for v in vectors:
                if v in S:
                    continue
                span = set(S)
                for c in range(1, F.size):
                    cv = tuple(int(F.mul[c, x]) for x in v)
                    for s in S:
                        span.add(tuple(int(F.add[a, b]) for a, b in zip(s, cv)))
                T = frozenset(span)
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    return found


def grassmannian_counts(V):
    """|Gr_e(V)| for every e by enumerating K_i-stable subspaces vertex by vertex."""
    cat, F = V.cat, V.F
    per_vertex = []
    for i in range(cat.n):
        N = V.fdim(i)
        S = V.structure(i)
        stable = []
        for U in all_subspaces(N, F):
            if N == 0 or all(_mat_vec(S, u, F) in U for u in U):
                size = len(U)
                fd = 0
                while F.size ** fd < size:
                    fd += 1
                stable.append((U, fd // cat.quiver.d[i]))
        per_vertex.append(stable)
    counts = {}
    for choice in itertools.product(*per_vertex):
        ok = True
        for a, (s, t) in enumerate(cat.arrows):
            M = V.maps[a]
            if M.size and any(_mat_vec(M, u, F) not in choice[t][0] for u in choice[s][0]):
                ok = False
                break
        if ok:
            e = tuple(x[1] for x in choice)
            counts[e] = counts.get(e, 0) + 1
    return counts


def _injective(M, F):
    zero = (0,) * M.shape[0]
    return all(_mat_vec(M, v, F) != zero for v in itertools.product(range(F.size), repeat=M.shape[1]) if any(v))


def hom_count(V, W, invertible=False):
    """|Hom(V, W)| by enumerating all vertexwise matrices; with ``invertible`` only isomorphisms count."""
    cat, F = V.cat, V.F
    shapes = [(W.fdim(i), V.fdim(i)) for i in range(cat.n)]
    per_vertex = []
    for i, (r, c) in enumerate(shapes):
        SV, SW = V.structure(i), W.structure(i)
        mats = []
        for entries in itertools.product(range(F.size), repeat=r * c):
            M = np.array(entries, dtype=np.int64).reshape(r, c)
            if r and c and not np.array_equal(_mat_mul(M, SV, F), _mat_mul(SW, M, F)):
                continue
            if invertible and (r != c or (c and not _injective(M, F))):
                continue
            mats.append(M)
        per_vertex.append(mats)
    count = 0
    for theta in itertools.product(*per_vertex):
        ok = True
        for a, (s, t) in enumerate(cat.arrows):
            lhs = _mat_mul(theta[t], V.maps[a], F)
            rhs = _mat_mul(W.maps[a], theta[s], F)
            if not np.array_equal(lhs, rhs):
                ok = False
                break
        count += ok
    return count
