"""Quiver Grassmannians: subrepresentation enumeration and point counts.

Subspaces of K^v (K = GF(q^{d_i})) are enumerated once each through their
reduced row-echelon forms.  Vertices are visited in topological order and a
subspace at vertex t must contain the field span of every incoming arrow
image, so only subspaces of the quotient by that span are enumerated.  For
counting, sinks are never enumerated: their contribution is a Gaussian
binomial coefficient in q^{d_t}.
"""

from __future__ import annotations

from itertools import combinations, product

import numpy as np

from . import linalg as la
from .errors import BudgetExceeded
from .gf import GF
from .rep import Rep


def gaussian_binomial(n: int, k: int, Q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= Q ** (n - i) - 1
        den *= Q ** (i + 1) - 1
    return num // den


def rref_subspaces(K: GF, v: int, e: int):
    """Yield every e-dimensional subspace of K^v as its e x v RREF matrix."""
    for piv in combinations(range(v), e):
        pset = set(piv)
        free = [(i, c) for i, p in enumerate(piv) for c in range(p + 1, v) if c not in pset]
        for vals in product(range(K.size), repeat=len(free)):
            M = np.zeros((e, v), dtype=np.int64)
            for i, p in enumerate(piv):
                M[i, p] = 1
            for (i, c), x in zip(free, vals):
                M[i, c] = x
            yield M


def count_rref_cells(Qd: int, v: int, e: int) -> int:
    return gaussian_binomial(v, e, Qd)


class _VertexCoords:
    """Conversion between GF(q)-coordinates and K-coordinates at one vertex."""

    def __init__(self, V: Rep, i: int):
        self.K = V.cat.K[i]
        self.d = self.K.d
        self.v = V.dims[i]
        self.F = V.F

    def to_k(self, cols: np.ndarray) -> np.ndarray:
        """F-columns (v*d x k) -> K-rows (k x v)."""
        k = cols.shape[1]
        out = np.zeros((k, self.v), dtype=np.int64)
        for j in range(k):
            for r in range(self.v):
                out[j, r] = self.K.element(cols[r * self.d:(r + 1) * self.d, j])
        return out

    def expand(self, rows: np.ndarray) -> np.ndarray:
        """K-rows (k x v) -> expanded F-basis columns (v*d x k*d)."""
        K = self.K
        big = K.big
        cols = []
        for row in rows:
            for b in K.basis:
                vec = np.concatenate([K.coords[big.mul[b, int(x)]] for x in row]) if self.v else \
                    np.zeros(0, dtype=np.int64)
                cols.append(vec)
        if not cols:
            return np.zeros((self.v * self.d, 0), dtype=np.int64)
        return np.array(cols, dtype=np.int64).T.copy()


def _containing(K: GF, M: np.ndarray, v: int, e: int):
    """Yield K-row matrices of all e-dim subspaces of K^v containing rowspace(M) (M in RREF)."""
    m = M.shape[0]
    if e < m:
        return
    piv = []
    for row in M:
        nz = np.nonzero(row)[0]
        piv.append(int(nz[0]))
    rest = [c for c in range(v) if c not in set(piv)]
    for W in rref_subspaces(K, v - m, e - m):
        lift = np.zeros((e - m, v), dtype=np.int64)
        lift[:, rest] = W
        yield np.vstack([M, lift]) if m else lift


def _k_rref(K: GF, rows: np.ndarray, v: int) -> np.ndarray:
    if rows.shape[0] == 0:
        return np.zeros((0, v), dtype=np.int64)
    R, r, _ = la.rref(K, rows)
    return R[:r].copy()


def _incoming_span(V: Rep, t: int, chosen, coords) -> np.ndarray:
    F = V.F
    imgs = []
    for a, (s, tt) in enumerate(V.cat.arrows):
        if tt == t and chosen[s] is not None and chosen[s].shape[1]:
            imgs.append(la.matmul(F, V.maps[a], chosen[s]))
    if not imgs:
        return np.zeros((0, coords[t].v), dtype=np.int64)
    return _k_rref(coords[t].K.big, coords[t].to_k(np.hstack(imgs)), coords[t].v)


def iter_subreps(V: Rep, e=None, budget: int | None = None):
    """Yield vertexwise expanded F-bases of every subrepresentation (of dimension e if given)."""
    cat = V.cat
    budget = budget or cat.budgets["grassmannian"]
    coords = [_VertexCoords(V, i) for i in range(cat.n)]
    order = cat.quiver.topological_order
    chosen = [None] * cat.n
    work = [0]

    def rec(pos):
        if pos == len(order):
            yield [c.copy() for c in chosen]
            return
        t = order[pos]
        M = _incoming_span(V, t, chosen, coords)
        dims = [e[t]] if e is not None else range(M.shape[0], coords[t].v + 1)
        for et in dims:
            for rows in _containing(coords[t].K.big, M, coords[t].v, et):
                work[0] += 1
                if work[0] > budget:
                    raise BudgetExceeded(f"subrepresentation enumeration exceeded {budget}")
                chosen[t] = coords[t].expand(rows)
                yield from rec(pos + 1)
        chosen[t] = None

    yield from rec(0)


def grassmannian_census(V: Rep, budget: int | None = None) -> dict[tuple[int, ...], int]:
    """Map every e with 0 <= e <= v to |Gr_e(V)|."""
    cat = V.cat
    budget = budget or cat.budgets["grassmannian"]
    coords = [_VertexCoords(V, i) for i in range(cat.n)]
    sinks = cat.quiver.sinks()
    order = [t for t in cat.quiver.topological_order if t not in sinks]
    sink_list = sorted(sinks)
    chosen = [None] * cat.n
    table: dict[tuple[int, ...], int] = {}
    for e in product(*(range(x + 1) for x in V.dims)):
        table[e] = 0
    e_cur = [0] * cat.n
    work = [0]

    def finish():
        per_sink = []
        for t in sink_list:
            m = _incoming_span(V, t, chosen, coords).shape[0]
            Qd = cat.q ** cat.quiver.d[t]
            per_sink.append([(et, gaussian_binomial(coords[t].v - m, et - m, Qd))
                             for et in range(m, coords[t].v + 1)])
        for combo in product(*per_sink):
            count = 1
            for t, (et, c) in zip(sink_list, combo):
                e_cur[t] = et
                count *= c
            if count:
                table[tuple(e_cur)] += count

    def rec(pos):
        if pos == len(order):
            finish()
            return
        t = order[pos]
        M = _incoming_span(V, t, chosen, coords)
        for et in range(M.shape[0], coords[t].v + 1):
            e_cur[t] = et
            for rows in _containing(coords[t].K.big, M, coords[t].v, et):
                work[0] += 1
                if work[0] > budget:
                    raise BudgetExceeded(f"Grassmannian census exceeded {budget}")
                chosen[t] = coords[t].expand(rows)
                rec(pos + 1)
        chosen[t] = None
        e_cur[t] = 0

    rec(0)
    return table
