"""Valued quivers and the integer matrices attached to them.

Vertices are numbered 1..n in the public API (file formats, CLI, mutation
directions) and 0..n-1 internally.  Integer matrices are numpy arrays of
Python ints (``dtype=object``) so that entries can never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from .errors import (
    BadValuation,
    CyclicQuiver,
    FrozenDirection,
    MixedArrowDirection,
    ValidationError,
)


def int_matrix(rows) -> np.ndarray:
    """Exact integer matrix with arbitrary-precision entries."""
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    return arr


def zeros(r: int, c: int) -> np.ndarray:
    out = np.empty((r, c), dtype=object)
    out.fill(0)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def pos(x: int) -> int:
    return x if x > 0 else 0


@dataclass(frozen=True)
class ValuedQuiver:
    """Acyclic quiver with a positive valuation on every vertex.

    ``arrows`` holds ``(source, target, multiplicity)`` triples with 1-based
    vertices, in the order they were declared.
    """

    n: int
    d: tuple[int, ...]
    arrows: tuple[tuple[int, int, int], ...] = ()
    _topo: tuple[int, ...] = field(default=(), repr=False, compare=False)

    @cached_property
    def arrow_list(self) -> tuple[tuple[int, int], ...]:
        """Arrows with multiplicity expanded, 0-based, in declaration order."""
        out = []
        for s, t, m in self.arrows:
            out.extend([(s - 1, t - 1)] * m)
        return tuple(out)

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        return _toposort(self.n, self.arrow_list)

    def multiplicity(self, i: int, j: int) -> int:
        """Number of arrows i -> j (0-based)."""
        return sum(1 for s, t in self.arrow_list if s == i and t == j)

    def g(self, i: int, j: int) -> int:
        return gcd(self.d[i], self.d[j])

    @cached_property
    def matrices(self) -> "MatrixBundle":
        return derived_matrices(self)

    def opposite(self) -> "ValuedQuiver":
        return ValuedQuiver(self.n, self.d, tuple((t, s, m) for s, t, m in self.arrows))

    def sinks(self) -> set[int]:
        return set(range(self.n)) - {s for s, _ in self.arrow_list}


def _toposort(n: int, arrows) -> tuple[int, ...]:
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for s, t in arrows:
        succ[s].append(t)
        indeg[t] += 1
    ready = sorted(i for i in range(n) if indeg[i] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
                ready.sort()
    if len(order) != n:
        raise CyclicQuiver("quiver has a directed cycle")
    return tuple(order)


def build_valued_quiver(n: int, d, arrows=()) -> ValuedQuiver:
    """Validate quiver data and return a :class:`ValuedQuiver`.

    ``arrows`` entries are ``(s, t)`` or ``(s, t, mult)`` with 1-based vertices.
    """
    d = tuple(int(x) for x in d)
    if n < 0 or len(d) != n:
        raise ValidationError(f"expected {n} valuations, got {len(d)}")
    if any(x < 1 for x in d):
        raise BadValuation(f"valuations must be positive, got {d}")
    clean = []
    direction: dict[frozenset, tuple[int, int]] = {}
    for a in arrows:
        s, t = int(a[0]), int(a[1])
        m = int(a[2]) if len(a) > 2 else 1
        if not (1 <= s <= n and 1 <= t <= n):
            raise ValidationError(f"arrow {s}->{t} outside vertex range 1..{n}")
        if m < 1:
            raise ValidationError(f"arrow {s}->{t} has multiplicity {m}")
        if s == t:
            raise CyclicQuiver(f"loop at vertex {s}")
        key = frozenset((s, t))
        if direction.setdefault(key, (s, t)) != (s, t):
            raise MixedArrowDirection(f"arrows between {s} and {t} point both ways")
        clean.append((s, t, m))
    q = ValuedQuiver(n, d, tuple(clean))
    q.topological_order  # raises on cycles
    return q


@dataclass(frozen=True)
class MatrixBundle:
    B: np.ndarray
    D: np.ndarray
    E_euler: np.ndarray
    Bminus: np.ndarray
    Bplus: np.ndarray

    def star_left(self, e) -> np.ndarray:
        """The left dual *e = B^- e."""
        return self.Bminus.dot(np.array(e, dtype=object))

    def star_right(self, e) -> np.ndarray:
        """The right dual e* = B^+ e."""
        return self.Bplus.dot(np.array(e, dtype=object))

    def euler(self, a, b) -> int:
        return int(np.array(a, dtype=object).dot(self.E_euler).dot(np.array(b, dtype=object)))


def exchange_matrix(q: ValuedQuiver) -> np.ndarray:
    n = q.n
    B = zeros(n, n)
    for s, t in q.arrow_list:
        B[s, t] += q.d[t] // q.g(s, t)
        B[t, s] -= q.d[s] // q.g(s, t)
    return B


def derived_matrices(q: ValuedQuiver) -> MatrixBundle:
    n = q.n
    B = exchange_matrix(q)
    D = zeros(n, n)
    E = zeros(n, n)
    Bm = zeros(n, n)
    Bp = zeros(n, n)
    for i in range(n):
        D[i, i] = q.d[i]
        for j in range(n):
            if i == j:
                E[i, j] = q.d[i]
                Bm[i, j] = Bp[i, j] = 1
            else:
                E[i, j] = -pos(q.d[i] * B[i, j])
                Bm[i, j] = -pos(B[i, j])
                Bp[i, j] = -pos(-B[i, j])
    return MatrixBundle(B, D, E, Bm, Bp)


@dataclass(frozen=True)
class PrincipalPair:
    """The principal extension of a valued quiver with its compatible pair."""

    quiver: ValuedQuiver
    Qtilde: ValuedQuiver
    Btilde: np.ndarray
    Lambda: np.ndarray
    Dtilde: np.ndarray

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def m(self) -> int:
        return self.Qtilde.n

    def pad(self, v) -> tuple[int, ...]:
        """Zero-pad a mutable-part vector to length m."""
        v = tuple(int(x) for x in v)
        if len(v) == self.m:
            return v
        if len(v) != self.n:
            raise ValidationError(f"vector of length {len(v)} for n={self.n}")
        return v + (0,) * (self.m - self.n)

    def lam(self, a, b) -> int:
        """The skew form a^T Lambda b."""
        return int(np.array(a, dtype=object).dot(self.Lambda).dot(np.array(b, dtype=object)))


def principal_pair(q: ValuedQuiver) -> PrincipalPair:
    n = q.n
    arrows = list(q.arrows) + [(n + i, i, 1) for i in range(1, n + 1)]
    Qt = build_valued_quiver(2 * n, q.d + q.d, arrows)
    mb = q.matrices
    Bt = zeros(2 * n, n)
    Bt[:n, :] = mb.B
    Bt[n:, :] = identity(n)
    L = zeros(2 * n, 2 * n)
    L[:n, n:] = -mb.D
    L[n:, :n] = mb.D
    L[n:, n:] = -mb.D.dot(mb.B)
    Dt = zeros(2 * n, 2 * n)
    for i, x in enumerate(Qt.d):
        Dt[i, i] = x
    pair = PrincipalPair(q, Qt, Bt, L, Dt)
    assert_compatible(Bt, L)
    return pair


def compatibility_block(Btilde: np.ndarray, Lambda: np.ndarray) -> np.ndarray:
    """Return the left block of Btilde^T Lambda after checking the right block vanishes."""
    n = Btilde.shape[1]
    prod = Btilde.T.dot(Lambda)
    if any(x != 0 for x in prod[:, n:].flat):
        raise ValidationError("Btilde^T Lambda has a nonzero frozen block")
    left = prod[:, :n]
    for i in range(n):
        for j in range(n):
            if (i != j and left[i, j] != 0) or (i == j and left[i, i] <= 0):
                raise ValidationError("Btilde^T Lambda is not a positive diagonal")
    return left


def assert_compatible(Btilde, Lambda) -> None:
    if any(x != 0 for x in (Lambda + Lambda.T).flat):
        raise ValidationError("Lambda is not skew-symmetric")
    compatibility_block(Btilde, Lambda)


def fz_mutate(Btilde: np.ndarray, Lambda: np.ndarray, k: int):
    """Mutate a compatible pair in direction ``k`` (1-based).

    Returns ``(Btilde', Lambda', E, F)`` with ``Btilde' = E Btilde F`` and
    ``Lambda' = E^T Lambda E``.
    """
    m, n = Btilde.shape
    if not 1 <= k <= n:
        raise FrozenDirection(f"direction {k} is not mutable (n={n})")
    k -= 1
    b = Btilde
    new = zeros(m, n)
    for i in range(m):
        for j in range(n):
            if i == k or j == k:
                new[i, j] = -b[i, j]
            else:
                new[i, j] = b[i, j] + pos(b[i, k]) * b[k, j] + b[i, k] * pos(-b[k, j])
    E = identity(m)
    for i in range(m):
        E[i, k] = -1 if i == k else pos(-b[i, k])
    F = identity(n)
    for j in range(n):
        F[k, j] = -1 if j == k else pos(b[k, j])
    via_ef = E.dot(b).dot(F)
    if not np.array_equal(via_ef, new):
        raise AssertionError("entrywise mutation disagrees with E*B*F")
    newL = E.T.dot(Lambda).dot(E)
    before = compatibility_block(b, Lambda)
    after = compatibility_block(new, newL)
    if not np.array_equal(before, after):
        raise AssertionError("mutation broke compatibility")
    return new, newL, E, F


def to_tuple(M: np.ndarray) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in M)
