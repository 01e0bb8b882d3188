"""Quantum seeds and their mutation, with every variable kept in the initial torus."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import NonExactDivision
from .quiver import PrincipalPair, fz_mutate, pos, to_tuple
from .torus import (
    TorusElement,
    bar_involution,
    exact_divide,
    monomial,
    multiply,
    one,
    render,
)


@dataclass(frozen=True)
class QuantumSeed:
    cluster: tuple[TorusElement, ...]
    Btilde: np.ndarray
    Lambda: np.ndarray
    path: tuple[int, ...] = ()

    @property
    def m(self) -> int:
        return self.Btilde.shape[0]

    @property
    def n(self) -> int:
        return self.Btilde.shape[1]

    def lam(self, a, b) -> int:
        return int(np.array(a, dtype=object).dot(self.Lambda).dot(np.array(b, dtype=object)))


def initial_seed(pair: PrincipalPair) -> QuantumSeed:
    lam = to_tuple(pair.Lambda)
    m = pair.m
    cluster = tuple(monomial(lam, [int(i == j) for j in range(m)]) for i in range(m))
    return QuantumSeed(cluster, pair.Btilde.copy(), pair.Lambda.copy(), ())


def cluster_monomial(seed: QuantumSeed, c) -> TorusElement:
    """Normalized product of current variables with nonnegative exponents ``c``."""
    out = one(seed.cluster[0].lam)
    for i, ci in enumerate(c):
        for _ in range(int(ci)):
            out = multiply(out, seed.cluster[i])
    twist = 0
    m = len(c)
    for i in range(m):
        for j in range(i + 1, m):
            twist += int(seed.Lambda[i, j]) * int(c[i]) * int(c[j])
    return out.scale_q(-twist)


def quasi_commutation_defects(cluster, Lambda) -> list[tuple[int, int]]:
    """Pairs (i, j) where X_i X_j != q^(lambda_ij) X_j X_i."""
    bad = []
    m = len(cluster)
    for i in range(m):
        for j in range(i + 1, m):
            lhs = multiply(cluster[i], cluster[j])
            rhs = multiply(cluster[j], cluster[i]).scale_q(2 * int(Lambda[i, j]))
            if lhs != rhs:
                bad.append((i + 1, j + 1))
    return bad


def exchange_numerator(seed: QuantumSeed, k: int) -> TorusElement:
    col = [int(x) for x in seed.Btilde[:, k - 1]]
    m = seed.m
    ek = [int(i == k - 1) for i in range(m)]
    bp = [pos(x) for x in col]
    bm = [pos(-x) for x in col]
    out = None
    for b in (bp, bm):
        shift = seed.lam([x - y for x, y in zip(b, ek)], ek)
        term = cluster_monomial(seed, b).scale_q(shift)
        out = term if out is None else out + term
    return out


def mutate_seed(seed: QuantumSeed, k: int) -> QuantumSeed:
    """Berenstein-Zelevinsky mutation in direction k (1-based)."""
    B1, L1, _, _ = fz_mutate(seed.Btilde, seed.Lambda, k)
    N = exchange_numerator(seed, k)
    Xk = seed.cluster[k - 1]
    new = exact_divide(N, Xk)
    if multiply(new, Xk) != N:
        raise NonExactDivision(f"quotient check failed in direction {k}")
    if bar_involution(new) != new:
        raise AssertionError(f"mutated variable in direction {k} is not bar-invariant")
    cluster = list(seed.cluster)
    cluster[k - 1] = new
    defects = quasi_commutation_defects(cluster, L1)
    if defects:
        raise AssertionError(f"quasi-commutation fails after mutation at {defects}")
    return QuantumSeed(tuple(cluster), B1, L1, seed.path + (k,))


def seed_by_path(pair: PrincipalPair, path) -> QuantumSeed:
    seed = initial_seed(pair)
    for k in path:
        seed = mutate_seed(seed, int(k))
    return seed


def variable_by_path(pair: PrincipalPair, path, slot: int | None = None) -> TorusElement:
    path = [int(k) for k in path]
    seed = seed_by_path(pair, path)
    if slot is None:
        slot = path[-1] if path else 1
    return seed.cluster[slot - 1]


def denominator_vector(x: TorusElement, n: int) -> tuple[int, ...]:
    return tuple(max(0, -min(a[i] for a in x.terms)) for i in range(n))


def canonical(x: TorusElement) -> str:
    return render(x)


@dataclass
class Exploration:
    seeds: list[QuantumSeed]
    variables: dict[str, TorusElement]
    first_path: dict[str, tuple[int, ...]]
    initial: set[str]
    saturated: bool

    def non_initial(self) -> list[str]:
        return [k for k in self.variables if k not in self.initial]


def explore(pair: PrincipalPair, depth: int | None = None, max_seeds: int = 10_000, paths=None) -> Exploration:
    """Breadth-first mutation from the initial seed.

    Seeds are identified by the set of their mutable variables.  With
    ``paths`` given, only those mutation sequences (and their prefixes) are
    followed instead of the full tree.
    """
    start = initial_seed(pair)
    n = pair.n
    key0 = frozenset(canonical(x) for x in start.cluster[:n])
    variables = {canonical(x): x for x in start.cluster[:n]}
    initial = set(variables)
    first_path = {k: () for k in variables}
    seeds = [start]
    if paths is not None:
        for p in paths:
            seed = start
            for step, k in enumerate(p):
                seed = mutate_seed(seed, int(k))
                seeds.append(seed)
                x = seed.cluster[int(k) - 1]
                key = canonical(x)
                if key not in variables:
                    variables[key] = x
                    first_path[key] = tuple(p[: step + 1])
        return Exploration(seeds, variables, first_path, initial, False)
    seen = {key0}
    queue = deque([(start, 0)])
    saturated = True
    while queue:
        seed, dist = queue.popleft()
        if depth is not None and dist >= depth:
            saturated = False
            continue
        for k in range(1, n + 1):
            if seed.path and seed.path[-1] == k:
                continue
            nxt = mutate_seed(seed, k)
            x = nxt.cluster[k - 1]
            key = canonical(x)
            if key not in variables:
                variables[key] = x
                first_path[key] = nxt.path
            skey = frozenset(canonical(y) for y in nxt.cluster[:n])
            if skey in seen:
                continue
            seen.add(skey)
            seeds.append(nxt)
            if len(seeds) > max_seeds:
                return Exploration(seeds, variables, first_path, initial, False)
            queue.append((nxt, dist + 1))
    if depth is not None and not saturated:
        # the frontier was cut; it is saturated only if nothing new is reachable
        saturated = False
    return Exploration(seeds, variables, first_path, initial, saturated)


def alternating_paths(n_steps: int) -> list[tuple[int, ...]]:
    """The two alternating rank-two paths 1,2,1,... and 2,1,2,... of length n_steps."""
    return [tuple(1 + (i % 2) for i in range(n_steps)), tuple(2 - (i % 2) for i in range(n_steps))]
