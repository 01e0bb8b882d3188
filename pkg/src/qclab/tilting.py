"""Local tilting representations, their exchange and commutation matrices, and mutation.

Everything lives on the principal extension Q~ of the valued quiver: the
summands are supported on the mutable vertices, while projectives,
injectives and the Grothendieck group are those of Q~.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .ar import injective, projective
from .classify import are_isomorphic, is_indecomposable
from .errors import ComplementNotFound, HintRejected, NotFound, SingularSystem
from .quiver import PrincipalPair, zeros
from .rep import Rep, RepCategory, direct_sum, ext_dim, hom_dim
from .search import search_rigid


@dataclass
class TiltingRep:
    pair: PrincipalPair
    cat: RepCategory
    summands: dict[int, Rep] = field(default_factory=dict)  # 0-based vertex label -> summand
    slots: tuple[int, ...] | None = None  # slots[s] = vertex label carried by mutation slot s

    def __post_init__(self):
        if self.slots is None:
            self.slots = tuple(range(self.pair.n))

    @property
    def support(self) -> set[int]:
        return set(self.summands)

    def labels(self) -> list[int]:
        return sorted(self.summands)

    def total(self) -> Rep:
        if not self.summands:
            return self.cat.zero()
        return direct_sum(*[self.summands[i] for i in self.labels()])

    def without(self, k: int) -> "TiltingRep":
        return TiltingRep(self.pair, self.cat, {i: V for i, V in self.summands.items() if i != k}, self.slots)

    def with_summand(self, k: int, V: Rep) -> "TiltingRep":
        s = dict(self.summands)
        s[k] = V
        return TiltingRep(self.pair, self.cat, s, self.slots)

    def slot_permutation(self) -> list[int]:
        """Slot -> vertex on all m indices (frozen vertices are fixed)."""
        return list(self.slots) + list(range(self.pair.n, self.pair.m))

    def dims(self) -> dict[int, tuple[int, ...]]:
        return {i: V.dims for i, V in self.summands.items()}


def zero_tilting(pair: PrincipalPair, cat: RepCategory) -> TiltingRep:
    return TiltingRep(pair, cat, {})


def is_local_tilting(T: TiltingRep) -> tuple[bool, list[str]]:
    """Rigid, basic, indecomposable summands, and as many summands as support vertices."""
    problems = []
    labels = T.labels()
    for i in labels:
        if not is_indecomposable(T.summands[i]):
            problems.append(f"summand {i + 1} is decomposable")
    for a in labels:
        for b in labels:
            if ext_dim(T.summands[a], T.summands[b]):
                problems.append(f"Ext(T_{a + 1}, T_{b + 1}) != 0")
    for x, a in enumerate(labels):
        for b in labels[x + 1:]:
            if are_isomorphic(T.summands[a], T.summands[b]):
                problems.append(f"T_{a + 1} and T_{b + 1} are isomorphic")
    for i in labels:
        if hom_dim(T.summands[i], T.summands[i]) != T.pair.Qtilde.d[i]:
            problems.append(f"End(T_{i + 1}) does not have dimension d_{i + 1}")
    supp = set()
    for V in T.summands.values():
        supp |= V.support()
    if len(supp) != len(labels):
        problems.append(f"support has {len(supp)} vertices but there are {len(labels)} summands")
    if supp != set(labels):
        problems.append("summand labels differ from the support")
    return not problems, problems


def summand_support(T: TiltingRep) -> set[int]:
    supp = set()
    for V in T.summands.values():
        supp |= V.support()
    return supp


# ----------------------------------------------------------- dual vectors

def _euler(pair: PrincipalPair, a, b) -> int:
    return pair.Qtilde.matrices.euler(a, b)


def basis_vectors(T: TiltingRep) -> list[tuple[int, ...]]:
    """Dimension vectors of T_i (i in the support) and P_i (otherwise), indexed by vertex."""
    m = T.pair.m
    out = []
    for i in range(m):
        if i in T.summands:
            out.append(T.pair.pad(T.summands[i].dims))
        else:
            out.append(projective(T.cat, i).dims)
    return out


def _solve(rows, rhs) -> list[Fraction]:
    """Solve a small square rational system; SingularSystem if it is singular."""
    n = len(rows)
    M = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(rows, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise SingularSystem("pairing matrix is singular")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[i][n] for i in range(n)]


@dataclass
class DualVectors:
    k: int
    lam: list[Fraction]  # coefficients in the T/P basis, indexed by vertex
    rho: list[Fraction]


def _simple(m: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(m))


def _block_duals(T: TiltingRep, basis, k: int):
    """Coefficients of the projections of lambda_k and rho_k onto their own blocks."""
    pair = T.pair
    m = pair.m
    d = pair.Qtilde.d
    supp = T.labels()
    comp = [i for i in range(m) if i not in T.summands]
    lam = [Fraction(0)] * m
    rho = [Fraction(0)] * m
    if supp:
        if k in T.summands:
            rl = [d[k] * int(i == k) for i in supp]
            rr = rl
        else:
            Sk = _simple(m, k)
            rl = [_euler(pair, Sk, basis[i]) for i in supp]
            rr = [_euler(pair, basis[i], Sk) for i in supp]
        sol_l = _solve([[_euler(pair, basis[j], basis[i]) for j in supp] for i in supp], rl)
        sol_r = _solve([[_euler(pair, basis[i], basis[j]) for j in supp] for i in supp], rr)
        for j, x, y in zip(supp, sol_l, sol_r):
            lam[j], rho[j] = x, y
    if k not in T.summands and comp:
        rhs = [d[k] * int(i == k) for i in comp]
        sol_l = _solve([[_euler(pair, basis[j], basis[i]) for j in comp] for i in comp], rhs)
        sol_r = _solve([[_euler(pair, basis[i], basis[j]) for j in comp] for i in comp], rhs)
        for j, x, y in zip(comp, sol_l, sol_r):
            lam[j], rho[j] = x, y
    return lam, rho


def dual_vectors(T: TiltingRep, k: int, basis=None, blocks=None) -> DualVectors:
    """Left and right duals of vertex k (0-based) in the T/P basis.

    Cross entries for k in the support come from l_kj d_j = r_jk d_k.
    """
    pair = T.pair
    m = pair.m
    d = pair.Qtilde.d
    basis = basis or basis_vectors(T)
    if blocks is None:
        blocks = {}
    if k not in blocks:
        blocks[k] = _block_duals(T, basis, k)
    lam, rho = [list(x) for x in blocks[k]]
    if k in T.summands:
        for j in range(m):
            if j in T.summands:
                continue
            if j not in blocks:
                blocks[j] = _block_duals(T, basis, j)
            lj, rj = blocks[j]
            lam[j] = rj[k] * d[k] / d[j]
            rho[j] = lj[k] * d[k] / d[j]
    out = DualVectors(k, lam, rho)
    _check_duals(T, basis, out)
    return out


def _check_duals(T: TiltingRep, basis, dv: DualVectors) -> None:
    pair = T.pair
    m = pair.m
    d = pair.Qtilde.d
    k = dv.k

    def vec(coeffs, idx):
        out = [Fraction(0)] * m
        for j in idx:
            for t in range(m):
                out[t] += coeffs[j] * basis[j][t]
        return out

    supp = T.labels()
    lT, rT = vec(dv.lam, supp), vec(dv.rho, supp)
    for j in supp:
        want_l = d[k] * int(j == k) if k in T.summands else _euler(pair, _simple(m, k), basis[j])
        want_r = d[k] * int(j == k) if k in T.summands else _euler(pair, basis[j], _simple(m, k))
        if _euler(pair, lT, basis[j]) != want_l or _euler(pair, basis[j], rT) != want_r:
            raise SingularSystem(f"dual vectors of vertex {k + 1} fail their defining pairings")


def _frac_euler(E, a, b) -> Fraction:
    return sum(Fraction(a[i]) * int(E[i, j]) * Fraction(b[j]) for i in range(len(a)) for j in range(len(b)))


def tilting_matrices(T: TiltingRep):
    """(B_T, Lambda_T): column k of B_T is rho_k - lambda_k in the T/P basis."""
    pair = T.pair
    m, n = pair.m, pair.n
    basis = basis_vectors(T)
    blocks: dict = {}
    B = zeros(m, n)
    for k in range(n):
        dv = dual_vectors(T, k, basis, blocks)
        for i in range(m):
            x = dv.rho[i] - dv.lam[i]
            if x.denominator != 1:
                raise SingularSystem(f"non-integral exchange entry at ({i + 1}, {k + 1})")
            B[i, k] = int(x)
    return B, commutation_matrix(T)


def _injective_dims(T: TiltingRep, i: int):
    return injective(T.cat, i).dims


def commutation_matrix(T: TiltingRep) -> np.ndarray:
    pair = T.pair
    m = pair.m
    mb = pair.Qtilde.matrices
    star = []
    for i in range(m):
        v = pair.pad(T.summands[i].dims) if i in T.summands else _injective_dims(T, i)
        star.append(mb.star_left(v))
    L = zeros(m, m)
    for i in range(m):
        for j in range(m):
            val = pair.lam(star[i], star[j])
            if (i in T.summands) != (j in T.summands):
                val = -val
            L[i, j] = val
    return L


def b_column_vector(T: TiltingRep, B: np.ndarray, k: int) -> tuple[int, ...]:
    """Column k of B_T read as a dimension vector through the T/P basis."""
    basis = basis_vectors(T)
    m = T.pair.m
    return tuple(sum(int(B[i, k]) * basis[i][t] for i in range(m)) for t in range(m))


# ----------------------------------------------------------- mutation

def _verify_extension(T: TiltingRep, k: int, cand: Rep) -> TiltingRep:
    new = T.with_summand(k, cand)
    ok, problems = is_local_tilting(new)
    if not ok:
        raise HintRejected("; ".join(problems))
    return new


def mutate_tilting(T: TiltingRep, k: int, dim_hint=None, rng_seed: int = 0, budget: int | None = None) -> TiltingRep:
    """Mutation of a local tilting representation in mutation slot k (1-based).

    Summands are labelled by support vertices.  When removing a summand
    takes a different vertex j out of the support, the summand labelled j
    takes over the freed label and the slot bookkeeping swaps accordingly.
    """
    v = T.slots[k - 1]
    if v in T.summands:
        bar = T.without(v)
        supp_bar = summand_support(bar)
        if len(supp_bar) == len(bar.summands):
            gone = summand_support(T) - supp_bar
            if len(gone) != 1:
                raise SingularSystem("removing a summand changed the support by more than one vertex")
            j = gone.pop()
            if j == v:
                return bar
            moved = dict(bar.summands)
            moved[v] = moved.pop(j)
            slots = list(T.slots)
            a, b = slots.index(v), slots.index(j)
            slots[a], slots[b] = slots[b], slots[a]
            out = TiltingRep(T.pair, T.cat, moved, tuple(slots))
            ok, problems = is_local_tilting(out)
            if not ok:
                raise HintRejected("relabelled representation is not local tilting: " + "; ".join(problems))
            return out
        base = bar
    else:
        base = T
    if dim_hint is None:
        raise ComplementNotFound("a dimension hint is required to locate the complement")
    try:
        cand = search_rigid(T.cat, T.pair.pad(dim_hint), budget, rng_seed)
    except NotFound as exc:
        raise ComplementNotFound(str(exc)) from exc
    if v in T.summands and are_isomorphic(cand, T.summands[v]):
        raise HintRejected("hint reproduces the summand being replaced")
    new = _verify_extension(base, v, cand)
    return new


def slot_matrices(T: TiltingRep):
    """B_T and Lambda_T with rows and columns in mutation-slot order."""
    B, L = tilting_matrices(T)
    perm = T.slot_permutation()
    n = T.pair.n
    Bs = B[np.ix_(perm, perm[:n])]
    Ls = L[np.ix_(perm, perm)]
    return Bs, Ls


@dataclass
class TiltingSeed:
    cluster: tuple
    Btilde: np.ndarray
    Lambda: np.ndarray


def seed_of_tilting(T: TiltingRep, budget: int | None = None) -> TiltingSeed:
    from .character import qcc
    from .torus import monomial
    from .quiver import to_tuple

    pair = T.pair
    lam = to_tuple(pair.Lambda)
    cluster = []
    for i in T.slot_permutation():
        if i in T.summands:
            cluster.append(qcc(T.summands[i], pair, budget))
        else:
            cluster.append(monomial(lam, _simple(pair.m, i)))
    B, L = slot_matrices(T)
    return TiltingSeed(tuple(cluster), B, L)


@dataclass
class EdgeRecord:
    path: tuple[int, ...]
    k: int
    before: TiltingRep
    after: TiltingRep
    b_match: bool
    lambda_match: bool
    variables_match: bool
    kind: str  # "exchange", "add" or "remove"


def sweep(pair: PrincipalPair, cat: RepCategory, depth: int, rng_seed: int = 0,
          check_variables: bool = True) -> list[EdgeRecord]:
    """Mutate tilting representations and quantum seeds side by side along every path up to ``depth``."""
    from .seeds import denominator_vector, initial_seed, mutate_seed
    from .torus import equal_at

    q = cat.q
    n = pair.n
    records: list[EdgeRecord] = []
    frontier = [((), zero_tilting(pair, cat), initial_seed(pair))]
    for _ in range(depth):
        nxt = []
        for path, T, seed in frontier:
            for k in range(1, n + 1):
                s2 = mutate_seed(seed, k)
                hint = denominator_vector(s2.cluster[k - 1], n)
                T2 = mutate_tilting(T, k, hint, rng_seed)
                v = T.slots[k - 1]
                kind = "exchange" if (v in T.summands and T2.slots[k - 1] in T2.summands) else (
                    "remove" if v in T.summands else "add")
                ts = seed_of_tilting(T2)
                bm = bool(np.array_equal(ts.Btilde, s2.Btilde))
                lm = bool(np.array_equal(ts.Lambda, s2.Lambda))
                vm = True
                if check_variables:
                    vm = all(equal_at(x, y, q) for x, y in zip(ts.cluster, s2.cluster))
                records.append(EdgeRecord(path + (k,), k, T, T2, bm, lm, vm, kind))
                nxt.append((path + (k,), T2, s2))
        frontier = nxt
    return records
