"""Hall numbers, restricted Ext counts, and checks of the Hall-number identities."""

from __future__ import annotations

import threading

from . import linalg as la
from .ar import coxeter, injective_multiplicities, injective_sum, tau
from .classify import are_isomorphic, aut_count
from .errors import BudgetExceeded, HypothesisFailed
from .grassmannian import iter_subreps
from .rep import (
    Morphism,
    Rep,
    RepCategory,
    cokernel,
    direct_sum,
    ext_space,
    hom_basis,
    hom_dim,
    kernel,
    quotient,
    random_rep,
    subrep,
)
from .report import CheckReport
from .search import iter_candidates, parameter_count

__all__ = [
    "aut_count",
    "epsilon_count",
    "flag_count",
    "green_instance",
    "hom_hall_instance",
    "assoc_instance",
    "hall_number",
    "hall_number_by_pairs",
    "iso_classes",
    "iter_hom",
    "projective_part",
    "verify_hall_identity",
]

_LOCK = threading.Lock()


def _dims(V: Rep) -> str:
    return "(" + ",".join(str(x) for x in V.dims) + ")"


def _sub_quot(V: Rep, e=None):
    """Yield (U, V/U) over every subrepresentation U of V."""
    for bases in iter_subreps(V, e):
        U, _ = subrep(V, bases)
        Qt, _ = quotient(V, bases)
        yield U, Qt


def iter_hom(V: Rep, W: Rep, budget: int | None = None):
    """Every element of Hom(V, W)."""
    H = hom_basis(V, W)
    q = V.cat.q
    budget = budget or V.cat.budgets["hom_scan"]
    if q ** H.dimF > budget:
        raise BudgetExceeded(f"Hom space of size {q ** H.dimF} exceeds budget {budget}")
    for idx in range(q ** H.dimF):
        yield H.element([(idx // q**j) % q for j in range(H.dimF)])


def _is_mono(f: Morphism) -> bool:
    return all(M.shape[1] == 0 or la.rank(f.source.F, M) == M.shape[1] for M in f.mats)


def _is_epi(f: Morphism) -> bool:
    return all(M.shape[0] == 0 or la.rank(f.source.F, M) == M.shape[0] for M in f.mats)


def hall_number(B: Rep, C: Rep, D: Rep) -> int:
    """Number of subobjects U of D with U = C and D/U = B (up to isomorphism)."""
    if tuple(b + c for b, c in zip(B.dims, C.dims)) != D.dims:
        return 0
    return sum(1 for U, Qt in _sub_quot(D, C.dims) if are_isomorphic(U, C) and are_isomorphic(Qt, B))


def hall_number_by_pairs(X: Rep, Y: Rep, Z: Rep) -> tuple[int, int]:
    """(P, a_X a_Y) where P counts exact pairs 0 -> Y -> Z -> X -> 0 by scanning Hom spaces."""
    if tuple(x + y for x, y in zip(X.dims, Y.dims)) != Z.dims:
        return 0, aut_count(X) * aut_count(Y)
    epis = [t for t in iter_hom(Z, X) if _is_epi(t)]
    P = 0
    for s in iter_hom(Y, Z):
        if not _is_mono(s):
            continue
        P += sum(1 for t in epis if t.compose(s).is_zero())
    return P, aut_count(X) * aut_count(Y)


def epsilon_count(B: Rep, C: Rep, D: Rep, budget: int | None = None) -> int:
    """Number of elements of Ext^1(B, C) whose middle term is isomorphic to D."""
    if tuple(b + c for b, c in zip(B.dims, C.dims)) != D.dims:
        return 0
    return sum(1 for _, E in ext_space(B, C).classes(budget) if are_isomorphic(E, D))


def iso_classes(cat: RepCategory, dims, budget: int | None = None) -> list[Rep]:
    """Representatives of every isomorphism class of dimension ``dims``, by exhaustive enumeration."""
    dims = tuple(int(x) for x in dims)
    key = ("iso_classes", dims)
    with _LOCK:
        hit = cat._cache.get(key)
    if hit is not None:
        return hit
    budget = budget or cat.budgets["iso_enum"]
    size = cat.q ** parameter_count(cat, dims)
    if size > budget:
        raise BudgetExceeded(f"{size} representations of dimension {dims} exceed budget {budget}")
    reps: list[Rep] = []
    for V in iter_candidates(cat, dims, budget):
        if not any(are_isomorphic(V, R) for R in reps):
            reps.append(V)
    with _LOCK:
        cat._cache.setdefault(key, reps)
    return cat._cache[key]


def projective_part(V: Rep):
    """Multiplicities of the indecomposable projective summands of V.

    tau kills projectives and the Coxeter map sends P_i to -[I_i], so the
    defect between [tau V] and Phi(v) is the injective class of the
    projective part.
    """
    defect = tuple(int(a - b) for a, b in zip(tau(V).dims, coxeter(V.cat, V.dims)))
    mult = injective_multiplicities(V.cat, defect)
    if mult is None:
        raise HypothesisFailed(f"Coxeter defect {defect} of {_dims(V)} is not an injective class")
    return tuple(mult)


def flag_count(K: Rep, L: Rep, B: Rep, V: Rep) -> int:
    """Number of flags B' < U < V with B' = B, U/B' = L and V/U = K."""
    total = 0
    lb = tuple(x + y for x, y in zip(L.dims, B.dims))
    for U, Qt in _sub_quot(V, lb):
        if not are_isomorphic(Qt, K):
            continue
        total += hall_number(L, B, U)
    return total


# ---------------------------------------------------------------- identities

def _assoc(K, L, B, V) -> list[CheckReport]:
    cat = V.cat
    inst = f"K={_dims(K)} L={_dims(L)} B={_dims(B)} V={_dims(V)}"
    kl = tuple(x + y for x, y in zip(K.dims, L.dims))
    lb = tuple(x + y for x, y in zip(L.dims, B.dims))
    lhs = sum(hall_number(K, L, A) * hall_number(A, B, V) for A in iso_classes(cat, kl))
    rhs = sum(hall_number(K, A, V) * hall_number(L, B, A) for A in iso_classes(cat, lb))
    flags = flag_count(K, L, B, V)
    return [
        CheckReport("assoc", inst, str(lhs), str(rhs), lhs == rhs),
        CheckReport("assoc/flags", inst, str(lhs), str(flags), lhs == flags),
    ]


def _green(V, W, X, Y) -> list[CheckReport]:
    q = V.cat.q
    euler = V.quiver.matrices.euler
    inst = f"V={_dims(V)} W={_dims(W)} X={_dims(X)} Y={_dims(Y)}"
    lhs = 0
    for _, E in ext_space(V, W).classes():
        lhs += hall_number(X, Y, E)
    vw = hom_dim(V, W)
    # sum over classes A, B, C, D weighted by F_AB^V F_CD^W is a sum over subobjects B < V, D < W
    rhs_num = 0
    shift = 0
    terms = []
    subs_w = list(_sub_quot(W))
    for Bs, A in _sub_quot(V):
        for Ds, C in subs_w:
            if tuple(a + c for a, c in zip(A.dims, C.dims)) != X.dims:
                continue
            eps1 = epsilon_count(A, C, X)
            if not eps1:
                continue
            eps2 = epsilon_count(Bs, Ds, Y)
            if not eps2:
                continue
            expo = vw - hom_dim(A, C) - hom_dim(Bs, Ds) - euler(A.dims, Ds.dims)
            terms.append((expo, eps1 * eps2))
    if terms:
        shift = -min(0, min(e for e, _ in terms))
        rhs_num = sum(c * q ** (e + shift) for e, c in terms)
    ok = lhs * q**shift == rhs_num
    rhs = str(rhs_num) if shift == 0 else f"{rhs_num}/{q}^{shift}"
    return [CheckReport("green", inst, str(lhs), rhs, ok)]


def _find_A(V: Rep, Cq: Rep):
    """Quotients A of V with P_A = P_V and coker = tau A + I; returns (A, I) or None."""
    pv = projective_part(V)
    seen: list[Rep] = []
    for _, A in _sub_quot(V):
        if any(are_isomorphic(A, S) for S in seen):
            continue
        seen.append(A)
        tA = tau(A)
        rest = tuple(c - t for c, t in zip(Cq.dims, tA.dims))
        if min(rest) < 0:
            continue
        mult = injective_multiplicities(V.cat, rest)
        if mult is None:
            continue
        I = injective_sum(V.cat, mult)
        if projective_part(A) == pv and are_isomorphic(Cq, direct_sum(tA, I)):
            return A, I
    return None


def _group_morphisms(morphisms):
    """Group nonzero morphisms by the isomorphism classes of (kernel, cokernel)."""
    groups: list[list] = []
    for f in morphisms:
        if f.is_zero():
            continue
        K, _ = kernel(f)
        Cq, _ = cokernel(f)
        for g in groups:
            if are_isomorphic(g[0], K) and are_isomorphic(g[1], Cq):
                g[2] += 1
                break
        else:
            groups.append([K, Cq, 1])
    return groups


def _hom_hall(V, W) -> list[CheckReport]:
    """|Hom(W, tau V)_DAI| by classifying every morphism, against both Hall-number sums."""
    tV = tau(V)
    reports = []
    subs_w = list(_sub_quot(W))
    for D, Cq, count in _group_morphisms(iter_hom(W, tV)):
        found = _find_A(V, Cq)
        inst = f"V={_dims(V)} W={_dims(W)} D={_dims(D)}"
        if found is None:
            reports.append(CheckReport("hom-hall", inst, str(count), "no (A, I) split", False))
            continue
        A, I = found
        inst += f" A={_dims(A)} I={_dims(I)}"
        # sum over C of a_C F_CD^W F_(tauA+I)C^(tauV)
        via_c = 0
        for Ds, C in subs_w:
            if are_isomorphic(Ds, D):
                via_c += aut_count(C) * hall_number(Cq, C, tV)
        # sum over B (no projective summands), C of a_C F_CD^W F_AB^V F_IC^(tauB)
        via_b = 0
        for Bs, Aq in _sub_quot(V):
            if not are_isomorphic(Aq, A) or any(projective_part(Bs)):
                continue
            tB = tau(Bs)
            for Ds, C in subs_w:
                if are_isomorphic(Ds, D):
                    via_b += aut_count(C) * hall_number(I, C, tB)
        reports.append(CheckReport("hom-hall", inst, str(count), str(via_b), count == via_b))
        reports.append(CheckReport("hom-hall/C-sum", inst, str(count), str(via_c), count == via_c))
    return reports


def _hom_hall2(W, I, P) -> list[CheckReport]:
    reports = []
    subs_w = list(_sub_quot(W))
    for G, Ip, count in _group_morphisms(iter_hom(W, I)):
        rhs = sum(aut_count(A) * hall_number(Ip, A, I) for U, A in subs_w if are_isomorphic(U, G))
        inst = f"W={_dims(W)} I={_dims(I)} G={_dims(G)} I'={_dims(Ip)}"
        reports.append(CheckReport("hom-hall2/inj", inst, str(count), str(rhs), count == rhs))
    for Pp, F, count in _group_morphisms(iter_hom(P, W)):
        rhs = sum(aut_count(U) * hall_number(U, Pp, P) for U, Fq in subs_w if are_isomorphic(Fq, F))
        inst = f"P={_dims(P)} W={_dims(W)} P'={_dims(Pp)} F={_dims(F)}"
        reports.append(CheckReport("hom-hall2/proj", inst, str(count), str(rhs), count == rhs))
    return reports


def _pairs(X, Y, Z) -> list[CheckReport]:
    F = hall_number(X, Y, Z)
    P, a = hall_number_by_pairs(X, Y, Z)
    inst = f"X={_dims(X)} Y={_dims(Y)} Z={_dims(Z)}"
    return [CheckReport("hall-pairs", inst, str(F), f"{P}/{a}", P == F * a)]


def verify_hall_identity(kind: str, instance: dict) -> list[CheckReport]:
    """Evaluate both sides of a Hall-number identity independently.

    kinds: assoc (K, L, B, V), green (V, W, X, Y), hom-hall (V, W),
    hom-hall2 (W, I, P) and hall-pairs (X, Y, Z).
    """
    if kind == "assoc":
        return _assoc(instance["K"], instance["L"], instance["B"], instance["V"])
    if kind == "green":
        return _green(instance["V"], instance["W"], instance["X"], instance["Y"])
    if kind == "hom-hall":
        return _hom_hall(instance["V"], instance["W"])
    if kind == "hom-hall2":
        return _hom_hall2(instance["W"], instance["I"], instance["P"])
    if kind == "hall-pairs":
        return _pairs(instance["X"], instance["Y"], instance["Z"])
    raise ValueError(f"unknown identity {kind!r}")


# ---------------------------------------------------------------- instances

def _random_dims(cat: RepCategory, cap: int, rng) -> tuple[int, ...]:
    while True:
        d = tuple(int(x) for x in rng.integers(0, cap + 1, size=cat.n))
        if any(d):
            return d


def _random_sub(V: Rep, rng):
    """A uniformly chosen subrepresentation together with its quotient."""
    subs = list(_sub_quot(V))
    return subs[int(rng.integers(0, len(subs)))]


def assoc_instance(cat: RepCategory, cap: int, rng) -> dict:
    """(K, L, B, V) read off a random flag B < U < V of a random V."""
    V = random_rep(cat, _random_dims(cat, cap, rng), rng)
    U, K = _random_sub(V, rng)
    B, L = _random_sub(U, rng)
    return {"K": K, "L": L, "B": B, "V": V}


def green_instance(cat: RepCategory, cap: int, rng) -> dict:
    """(V, W, X, Y): W < E and Y < E' for random E, E' of one dimension vector, V = E/W, X = E'/Y."""
    dims = _random_dims(cat, cap, rng)
    E = random_rep(cat, dims, rng)
    W, V = _random_sub(E, rng)
    E2 = random_rep(cat, dims, rng)
    Y, X = _random_sub(E2, rng)
    return {"V": V, "W": W, "X": X, "Y": Y}



def hom_hall_instance(cat: RepCategory, cap: int, rng, tries: int = 200) -> dict:
    """Random (V, W) with Hom(W, tau V) nonzero."""
    for _ in range(tries):
        V = random_rep(cat, _random_dims(cat, cap, rng), rng)
        W = random_rep(cat, _random_dims(cat, cap, rng), rng)
        if hom_dim(W, tau(V)):
            return {"V": V, "W": W}
    raise HypothesisFailed(f"no pair with Hom(W, tau V) != 0 in {tries} draws")
