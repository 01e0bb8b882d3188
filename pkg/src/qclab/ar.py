"""Projectives, injectives, the Nakayama functor, AR translation, approximations.

The indecomposable projective at vertex i is the free representation on one
generator at i: along each arrow s -> t the space at t receives a copy of
K_t tensored over the gcd field with the space at s, and the arrow map is the
coordinate inclusion.  Injectives are obtained by duality from projectives of
the opposite quiver.  The Nakayama functor on maps between projectives is
pinned down by the natural pairing between Hom(P_i, X) and Hom(X, I_i)
(compose, evaluate at the generator, read off one coordinate), and the AR
translate of V is the kernel of the Nakayama functor applied to a projective
presentation of V.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from . import linalg as la
from .errors import SingularSystem
from .rep import (
    Morphism,
    Rep,
    RepCategory,
    _blockdiag,
    complement_basis,
    direct_sum,
    hom_basis,
    hom_dim,
    kernel,
    radical,
)


def projective(cat: RepCategory, i: int) -> Rep:
    key = ("P", i)
    if key in cat._cache:
        return cat._cache[key]
    q = cat.quiver
    d = q.d
    dims = [0] * cat.n
    dims[i] = 1
    offsets: dict[int, int] = {}
    for t in q.topological_order:
        if t == i:
            continue
        total = 0
        for a, (s, tt) in enumerate(cat.arrows):
            if tt == t and dims[s]:
                offsets[a] = total
                total += dims[s] * d[s] // gcd(d[s], d[t])
        dims[t] = total
    maps = []
    for a, (s, t) in enumerate(cat.arrows):
        g = gcd(d[s], d[t])
        G = np.zeros((dims[t] * d[t] // g, dims[s] * d[s] // g), dtype=np.int64)
        if a in offsets:
            step = d[t] // g
            for k in range(dims[s] * d[s] // g):
                G[(offsets[a] + k) * step, k] = 1
        maps.append(cat.g_to_f(a, G, dims[s], dims[t]))
    P = Rep.from_f(cat, tuple(dims), maps, check=False)
    cat._cache[key] = P
    return P


def opposite_category(cat: RepCategory) -> RepCategory:
    key = ("op",)
    if key not in cat._cache:
        cat._cache[key] = RepCategory(cat.quiver.opposite(), cat.p, cat.s, tower=cat.tower, budgets=cat.budgets)
    return cat._cache[key]


def dual(V: Rep, target: RepCategory) -> Rep:
    """The dual representation of V on the opposite quiver, in standard coordinates."""
    F = V.F
    grams = [_blockdiag([V.cat.K[i].trace_gram] * V.dims[i]) for i in range(V.cat.n)]
    inv = [la.inverse(F, G) if G.size else G for G in grams]
    maps = []
    for a, (s, t) in enumerate(V.cat.arrows):
        M = la.matmul(F, la.matmul(F, inv[s], V.maps[a].T), grams[t])
        maps.append(M)
    return Rep.from_f(target, V.dims, maps, check=False)


def injective(cat: RepCategory, i: int) -> Rep:
    key = ("I", i)
    if key not in cat._cache:
        op = opposite_category(cat)
        cat._cache[key] = dual(projective(op, i), cat)
    return cat._cache[key]


def simple(cat: RepCategory, i: int) -> Rep:
    return cat.simple(i)


def morphism_from_projective(j: int, X: Rep, vec) -> Morphism:
    """The unique map P_j -> X sending the generator to ``vec`` (coordinates in X_j)."""
    cat = X.cat
    P = projective(cat, j)
    H = hom_basis(P, X)
    ev = np.array([b.mats[j][:, 0] for b in H.basis], dtype=np.int64).T.reshape(X.fdim(j), H.dimF)
    c = la.solve(cat.F, ev, np.asarray(vec, dtype=np.int64))
    if c is None:
        raise SingularSystem("generator image not reachable")
    return H.element(c)


def _first_coordinate(vec) -> int:
    return int(vec[0])


def nu_matrix(cat: RepCategory, j: int, t: int):
    """Matrix of the Nakayama functor Hom(P_j, P_t) -> Hom(I_j, I_t) in the Hom bases."""
    key = ("nu", j, t)
    if key in cat._cache:
        return cat._cache[key]
    F = cat.F
    Pj, Pt = projective(cat, j), projective(cat, t)
    Ij, It = injective(cat, j), injective(cat, t)
    Hp = hom_basis(Pj, Pt)
    Hi = hom_basis(Ij, It)
    test = hom_basis(Pt, Ij)
    if not (Hp.dimF == Hi.dimF == test.dimF):
        raise SingularSystem("Nakayama pairing has mismatched dimensions")
    k = Hi.dimF
    A = np.zeros((test.dimF, k), dtype=np.int64)
    for r, beta in enumerate(test.basis):
        gen = beta.mats[t][:, 0]
        for u, g in enumerate(Hi.basis):
            A[r, u] = _first_coordinate(la.matmul(F, g.mats[t], gen[:, None])[:, 0])
    N = np.zeros((k, Hp.dimF), dtype=np.int64)
    for c, f in enumerate(Hp.basis):
        rhs = np.zeros(test.dimF, dtype=np.int64)
        fj = f.mats[j][:, 0]
        for r, beta in enumerate(test.basis):
            rhs[r] = _first_coordinate(la.matmul(F, beta.mats[j], fj[:, None])[:, 0])
        sol = la.solve(F, A, rhs)
        if sol is None:
            raise SingularSystem("Nakayama pairing is degenerate")
        N[:, c] = sol
    if k and la.rank(F, A) != k:
        raise SingularSystem("Nakayama pairing is degenerate")
    out = (Hp, Hi, N)
    cat._cache[key] = out
    return out


def nakayama(f: Morphism, j: int, t: int) -> Morphism:
    """Apply the Nakayama functor to f: P_j -> P_t."""
    Hp, Hi, N = nu_matrix(f.source.cat, j, t)
    c = Hp.coordinates(f)
    if c is None:
        raise SingularSystem("morphism is not between the stated projectives")
    return Hi.element(la.matmul(f.source.F, N, c[:, None])[:, 0] if len(c) else [])


def top_generators(V: Rep) -> list[tuple[int, np.ndarray]]:
    """Vectors whose images form a basis of the top of V, one per field dimension."""
    _, incl = radical(V)
    d = V.cat.quiver.d
    out = []
    for i in range(V.cat.n):
        C = complement_basis(V, i, incl.mats[i])
        for k in range(0, C.shape[1], d[i]):
            out.append((i, C[:, k].copy()))
    return out


def _summand_offsets(reps, n):
    offs = []
    acc = [0] * n
    for R in reps:
        offs.append(list(acc))
        for i in range(n):
            acc[i] += R.fdim(i)
    return offs


def projective_cover(V: Rep):
    """(list of vertices, P_0, pi: P_0 -> V) built from a basis of top V."""
    cat = V.cat
    gens = top_generators(V)
    comps = [morphism_from_projective(j, V, vec) for j, vec in gens]
    labels = [j for j, _ in gens]
    if not comps:
        Z = cat.zero()
        return labels, Z, Morphism(Z, V, tuple(np.zeros((V.fdim(i), 0), dtype=np.int64) for i in range(cat.n)))
    P0 = direct_sum(*[c.source for c in comps])
    mats = tuple(np.hstack([c.mats[i] for c in comps]) for i in range(cat.n))
    return labels, P0, Morphism(P0, V, mats)


def projective_presentation(V: Rep):
    """Projective resolution 0 -> P1 -> P0 -> V -> 0 with both terms split into indecomposables.

    Returns (labels1, labels0, f) where f: P1 -> P0 is given with source and
    target as explicit direct sums of the listed indecomposable projectives.
    """
    cat = V.cat
    labels0, P0, pi = projective_cover(V)
    K, incl = kernel(pi)
    labels1, P1, iota = projective_cover(K)
    if not all(M.shape[0] == M.shape[1] for M in iota.mats):
        raise SingularSystem("kernel of the projective cover is not projective")
    f = incl.compose(iota) if labels1 else Morphism(P1, P0, tuple(
        np.zeros((P0.fdim(i), 0), dtype=np.int64) for i in range(cat.n)))
    return labels1, labels0, f


def _component(f: Morphism, src_reps, tgt_reps, c: int, r: int) -> Morphism:
    n = f.source.cat.n
    so = _summand_offsets(src_reps, n)
    to = _summand_offsets(tgt_reps, n)
    S, T = src_reps[c], tgt_reps[r]
    mats = tuple(f.mats[i][to[r][i]:to[r][i] + T.fdim(i), so[c][i]:so[c][i] + S.fdim(i)] for i in range(n))
    return Morphism(S, T, mats)


def tau(V: Rep) -> Rep:
    """AR translate: kernel of the Nakayama functor applied to a projective presentation."""
    cat = V.cat
    if V.is_zero():
        return V
    labels1, labels0, f = projective_presentation(V)
    if not labels1:
        return cat.zero()
    P1s = [projective(cat, j) for j in labels1]
    P0s = [projective(cat, t) for t in labels0]
    I1s = [injective(cat, j) for j in labels1]
    I0s = [injective(cat, t) for t in labels0]
    src, tgt = direct_sum(*I1s), direct_sum(*I0s)
    so = _summand_offsets(I1s, cat.n)
    to = _summand_offsets(I0s, cat.n)
    mats = [np.zeros((tgt.fdim(i), src.fdim(i)), dtype=np.int64) for i in range(cat.n)]
    for c, j in enumerate(labels1):
        for r, t in enumerate(labels0):
            comp = _component(f, P1s, P0s, c, r)
            if comp.is_zero():
                continue
            g = nakayama(comp, j, t)
            for i in range(cat.n):
                if g.mats[i].size:
                    mats[i][to[r][i]:to[r][i] + I0s[r].fdim(i), so[c][i]:so[c][i] + I1s[c].fdim(i)] = g.mats[i]
    nu_f = Morphism(src, tgt, tuple(mats))
    T, _ = kernel(nu_f)
    return T


def tau_translate(V: Rep) -> Rep:
    return tau(V)


def coxeter(cat: RepCategory, v):
    """Dimension vector of tau V for V without projective summands: -E^{-1} E^T v."""
    from fractions import Fraction

    E = cat.quiver.matrices.E_euler
    n = cat.n
    rhs = [-sum(int(E[k, i]) * int(v[k]) for k in range(n)) for i in range(n)]
    # solve E x = rhs (upper-triangular in a topological order)
    M = [[Fraction(int(E[i, j])) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        M[c] = [x / M[c][c] for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                M[r] = [a - M[r][c] * b for a, b in zip(M[r], M[c])]
    return tuple(int(M[i][n]) for i in range(n))


# ------------------------------------------------------------- approximations

def _stack_left(V: Rep, items) -> Morphism:
    E = direct_sum(*[X for X, _ in items]) if items else V.cat.zero()
    mats = tuple(np.vstack([f.mats[i] for _, f in items]) if items else
                 np.zeros((0, V.fdim(i)), dtype=np.int64) for i in range(V.cat.n))
    return Morphism(V, E, mats)


def _stack_right(V: Rep, items) -> Morphism:
    E = direct_sum(*[X for X, _ in items]) if items else V.cat.zero()
    mats = tuple(np.hstack([f.mats[i] for _, f in items]) if items else
                 np.zeros((V.fdim(i), 0), dtype=np.int64) for i in range(V.cat.n))
    return Morphism(E, V, mats)


def _is_left_approx(u: Morphism, addset, targets) -> bool:
    F = u.source.F
    for X, HVX in zip(addset, targets):
        if HVX.dimF == 0:
            continue
        H = hom_basis(u.target, X)
        cols = [HVX.coordinates(h.compose(u)) for h in H.basis]
        if not cols or la.rank(F, np.array(cols, dtype=np.int64).T) < HVX.dimF:
            return False
    return True


def _is_right_approx(u: Morphism, addset, sources) -> bool:
    F = u.source.F
    for X, HXV in zip(addset, sources):
        if HXV.dimF == 0:
            continue
        H = hom_basis(X, u.source)
        cols = [HXV.coordinates(u.compose(h)) for h in H.basis]
        if not cols or la.rank(F, np.array(cols, dtype=np.int64).T) < HXV.dimF:
            return False
    return True


def minimal_approximation(V: Rep, addset, side: str = "left"):
    """Minimal left (V -> A) or right (A -> V) add(addset)-approximation.

    Starts from the universal map over Hom bases and deletes summands while
    the factorization property survives.  Returns (morphism, A).
    """
    if side not in ("left", "right"):
        raise ValueError(side)
    if side == "left":
        homs = [hom_basis(V, X) for X in addset]
        items = [(X, f) for X, H in zip(addset, homs) for f in H.basis]
        build, ok = _stack_left, lambda u: _is_left_approx(u, addset, homs)
    else:
        homs = [hom_basis(X, V) for X in addset]
        items = [(X, f) for X, H in zip(addset, homs) for f in H.basis]
        build, ok = _stack_right, lambda u: _is_right_approx(u, addset, homs)
    k = 0
    while k < len(items):
        trial = items[:k] + items[k + 1:]
        if ok(build(V, trial)):
            items = trial
        else:
            k += 1
    u = build(V, items)
    return u, (u.target if side == "left" else u.source)


def _decompose(dims_target, basis_dims):
    """Nonnegative integer multiplicities m with sum m_j basis_j = target, or None."""
    from fractions import Fraction

    n = len(basis_dims)
    M = [[Fraction(basis_dims[j][i]) for j in range(n)] + [Fraction(dims_target[i])] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    sol = [M[i][n] for i in range(n)]
    if any(x.denominator != 1 or x < 0 for x in sol):
        return None
    return [int(x) for x in sol]


def injective_multiplicities(cat: RepCategory, dims):
    """Multiplicities of the indecomposable injectives in a sum with these dims, or None."""
    return _decompose(dims, [injective(cat, i).dims for i in range(cat.n)])


def projective_multiplicities(cat: RepCategory, dims):
    return _decompose(dims, [projective(cat, i).dims for i in range(cat.n)])


def injective_sum(cat: RepCategory, mult) -> Rep:
    parts = [injective(cat, i) for i, k in enumerate(mult) for _ in range(k)]
    return direct_sum(*parts) if parts else cat.zero()


def projective_sum(cat: RepCategory, mult) -> Rep:
    parts = [projective(cat, i) for i, k in enumerate(mult) for _ in range(k)]
    return direct_sum(*parts) if parts else cat.zero()


def is_injective(V: Rep) -> bool:
    from .classify import are_isomorphic

    mult = injective_multiplicities(V.cat, V.dims)
    return mult is not None and are_isomorphic(V, injective_sum(V.cat, mult))


def is_projective(V: Rep) -> bool:
    from .classify import are_isomorphic

    mult = projective_multiplicities(V.cat, V.dims)
    return mult is not None and are_isomorphic(V, projective_sum(V.cat, mult))
