"""Rigidity, indecomposability, isomorphism and automorphism counts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from . import linalg as la
from .errors import BudgetExceeded
from .rep import Morphism, Rep, ext_dim, hom_basis, hom_dim

RANDOM_TRIES = 48


@dataclass(frozen=True)
class Classification:
    dimF_end: int
    is_rigid: bool
    is_indecomposable: bool


def is_rigid(V: Rep) -> bool:
    return ext_dim(V, V) == 0


def _nilpotent_power(F, X, n):
    P = X
    k = 1
    while k < n:
        P = la.matmul(F, P, P)
        k *= 2
    return P


def is_indecomposable(V: Rep, budget: int | None = None, seed: int = 0) -> bool:
    """No nontrivial idempotent in End(V).

    Exhaustive when |End(V)| fits the budget; otherwise Fitting's lemma is
    applied to a deterministic pseudo-random sequence of endomorphisms (an
    endomorphism that is neither nilpotent nor invertible splits V).
    """
    if V.is_zero():
        return False
    cat = V.cat
    budget = budget or cat.budgets["end"]
    H = hom_basis(V, V)
    if H.dimF == 1:
        return True
    F = V.F
    if cat.q ** H.dimF <= budget:
        return _kernels.find_idempotent(H.stack(), cat.q, F.add, F.mul) < 0
    rng = np.random.default_rng(seed)
    N = V.total_fdim
    for _ in range(RANDOM_TRIES):
        X = H.element(rng.integers(0, cat.q, size=H.dimF)).block()
        Xn = _nilpotent_power(F, X, N)
        if Xn.any() and la.rank(F, X) < N:
            return False
    return True


def classify_rep(V: Rep) -> Classification:
    end = hom_dim(V, V)
    rigid = end == V.quiver.matrices.euler(V.dims, V.dims)
    return Classification(end, rigid, is_indecomposable(V))


def _arrow_ranks(V: Rep):
    return tuple(la.rank(V.F, M) for M in V.maps)


def find_isomorphism(V: Rep, W: Rep, budget: int | None = None, seed: int = 0) -> Morphism | None:
    if V.cat is not W.cat or V.dims != W.dims:
        return None
    if _arrow_ranks(V) != _arrow_ranks(W):
        return None
    cat = V.cat
    H = hom_basis(V, W)
    e = hom_dim(V, V)
    if H.dimF != e or hom_dim(W, W) != e or hom_dim(W, V) != e:
        return None
    if V.is_zero():
        return H.element([])
    F = V.F
    rng = np.random.default_rng(seed)
    for _ in range(RANDOM_TRIES):
        f = H.element(rng.integers(0, cat.q, size=H.dimF))
        if f.is_iso():
            return f
    budget = budget or cat.budgets["hom_scan"]
    if cat.q ** H.dimF > budget:
        raise BudgetExceeded(f"Hom space of size {cat.q ** H.dimF} exceeds scan budget {budget}")
    hit = _kernels.scan_invertible(H.stack(), cat.q, F.add, F.mul, F.neg, F.inv, True)
    if hit == 0:
        return None
    idx = hit - 1
    coeffs = [(idx // cat.q**j) % cat.q for j in range(H.dimF)]
    return H.element(coeffs)


def are_isomorphic(V: Rep, W: Rep, budget: int | None = None) -> bool:
    return find_isomorphism(V, W, budget) is not None


def aut_count(V: Rep, budget: int | None = None) -> int:
    """Number of automorphisms of V, by scanning End(V)."""
    if V.is_zero():
        return 1
    cat = V.cat
    budget = budget or cat.budgets["end"]
    H = hom_basis(V, V)
    if cat.q ** H.dimF > budget:
        raise BudgetExceeded(f"End space of size {cat.q ** H.dimF} exceeds budget {budget}")
    F = V.F
    return _kernels.scan_invertible(H.stack(), cat.q, F.add, F.mul, F.neg, F.inv, False)
