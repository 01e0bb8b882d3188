"""Search for exceptional (rigid indecomposable) representations of a given dimension vector."""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .classify import is_indecomposable
from .errors import NotFound
from .rep import Rep, RepCategory, ext_dim


def _arrow_bases(cat: RepCategory, dims):
    return [cat.arrow_space_basis(a, dims[s], dims[t]) for a, (s, t) in enumerate(cat.arrows)]


def _rep_from_digits(cat: RepCategory, dims, bases, digits) -> Rep:
    maps = []
    pos = 0
    for basis in bases:
        k = len(basis)
        if k:
            maps.append(la.combine(cat.F, basis, digits[pos:pos + k]))
        else:
            maps.append(None)
        pos += k
    return Rep.from_f(cat, dims, maps, check=False)


def parameter_count(cat: RepCategory, dims) -> int:
    """Dimension over the base field of the space of representations with these dims."""
    return sum(len(b) for b in _arrow_bases(cat, dims))


def _digits(index: int, q: int, k: int) -> np.ndarray:
    out = np.zeros(k, dtype=np.int64)
    for i in range(k):
        index, out[i] = divmod(index, q)
    return out


def iter_candidates(cat: RepCategory, dims, budget: int, rng_seed: int = 0):
    """Yield representations of dimension ``dims``.

    When the whole parameter space fits in ``budget`` it is visited in a
    seeded random order without repetition; otherwise ``budget`` uniform
    samples are drawn.
    """
    dims = tuple(int(x) for x in dims)
    bases = _arrow_bases(cat, dims)
    k = sum(len(b) for b in bases)
    rng = np.random.default_rng(rng_seed)
    size = cat.q ** k
    if size <= budget:
        for idx in rng.permutation(size):
            yield _rep_from_digits(cat, dims, bases, _digits(int(idx), cat.q, k))
    else:
        for _ in range(budget):
            yield _rep_from_digits(cat, dims, bases, rng.integers(0, cat.q, size=k))


def search_rigid(cat: RepCategory, v, budget: int | None = None, rng_seed: int = 0) -> Rep:
    """An exceptional representation with dimension vector ``v``; NotFound when the budget runs out."""
    if budget is None:
        budget = cat.budgets["search"]
    v = tuple(int(x) for x in v)
    if len(v) != cat.n:
        v = v + (0,) * (cat.n - len(v))
    if not any(v):
        raise NotFound("the zero vector has no exceptional representation")
    for V in iter_candidates(cat, v, budget, rng_seed):
        if ext_dim(V, V) == 0 and is_indecomposable(V):
            return V
    raise NotFound(f"no exceptional representation of dimension {v} within budget {budget}")
