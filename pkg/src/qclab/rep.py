"""Valued representations over GF(q), q = p^s, and their Hom and Ext spaces.

Internally every vertex space GF(q^{d_i})^{v_i} is stored in coordinates over
the base field GF(q): entry r of a vector occupies coordinates
``r*d_i .. r*d_i + d_i - 1`` in the basis 1, x, ..., x^{d_i-1}.  Arrow maps are
stored as GF(q)-matrices that commute with the GF(q^g)-action (g the gcd of
the valuations at the two ends).  The public constructor ``build_rep`` and
the rep file format use matrices over GF(q^g) instead; conversion happens at
the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from . import linalg as la
from .errors import ExtTooLarge, NotASubrep, ShapeMismatch, WrongField, ValidationError
from .gf import ExtField, FieldTower, build_tower
from .quiver import ValuedQuiver

DEFAULT_BUDGETS = {
    "end": 2**16,
    "hom_scan": 2**20,
    "grassmannian": 2**24,
    "ext": 2**16,
    "search": 2**20,
    "iso_enum": 2**12,
}


def _blockdiag(blocks, rows=None, cols=None):
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


class RepCategory:
    """Valued representations of one quiver over one base field GF(p^s)."""

    def __init__(self, quiver: ValuedQuiver, p: int, s: int = 1, tower: FieldTower | None = None,
                 budgets: dict | None = None):
        self.quiver = quiver
        self.p, self.s = p, s
        self.q = p**s
        gs = {quiver.g(a, b) for a, b in quiver.arrow_list}
        degs = {s} | {s * d for d in quiver.d} | {s * g for g in gs}
        if tower is None:
            tower = build_tower(p, degs)
        else:
            missing = degs - set(tower.degrees)
            if missing:
                raise WrongField(f"tower lacks degrees {sorted(missing)}")
        self.tower = tower
        self.F = tower.field(s)
        self.budgets = dict(DEFAULT_BUDGETS, **(budgets or {}))
        self._ext = {}
        self.K = [self.ext_field(d) for d in quiver.d]
        self.arrows = quiver.arrow_list
        self._cache: dict = {}

    def ext_field(self, d: int) -> ExtField:
        if d not in self._ext:
            self._ext[d] = ExtField(self.tower, self.s, d)
        return self._ext[d]

    @property
    def n(self) -> int:
        return self.quiver.n

    def __repr__(self):
        return f"RepCategory(n={self.n}, d={self.quiver.d}, field={self.F.name})"

    # --- change of coordinates between GF(q^g)-coordinates and GF(q)-coordinates

    def product_basis(self, d: int, g: int) -> np.ndarray:
        """d x d matrix taking (x_d^b * x_g^a)-coordinates to standard coordinates of GF(q^d)."""
        key = ("C", d, g)
        if key not in self._cache:
            K = self.ext_field(d)
            big = K.big
            emb = self.tower.embeddings[(self.s * g, self.s * d)]
            G = self.ext_field(g)
            cols = []
            for b in range(d // g):
                xb = big.power(big.x, b)
                for a in range(g):
                    ga = int(emb[G.basis[a]])
                    cols.append(K.coords[big.mul[ga, xb]])
            C = np.array(cols, dtype=np.int64).T.copy()
            self._cache[key] = (C, la.inverse(self.F, C))
        return self._cache[key]

    def g_to_f(self, arrow: int, G, vs: int, vt: int) -> np.ndarray:
        """Convert an arrow matrix over GF(q^g) into a GF(q)-matrix."""
        s_, t_ = self.arrows[arrow]
        ds, dt = self.quiver.d[s_], self.quiver.d[t_]
        g = gcd(ds, dt)
        Gf = self.ext_field(g)
        G = np.asarray(G, dtype=np.int64)
        rows, cols = G.shape
        expanded = np.zeros((rows * g, cols * g), dtype=np.int64)
        for i in range(rows):
            for j in range(cols):
                if G[i, j]:
                    expanded[i * g:(i + 1) * g, j * g:(j + 1) * g] = Gf.regular(int(G[i, j]))
        Cs, Cs_inv = self.product_basis(ds, g)
        Ct, _ = self.product_basis(dt, g)
        left = _blockdiag([Ct] * vt)
        right = _blockdiag([Cs_inv] * vs)
        return la.matmul(self.F, la.matmul(self.F, left, expanded), right)

    def f_to_g(self, arrow: int, M, vs: int, vt: int) -> np.ndarray:
        s_, t_ = self.arrows[arrow]
        ds, dt = self.quiver.d[s_], self.quiver.d[t_]
        g = gcd(ds, dt)
        Gf = self.ext_field(g)
        Cs, _ = self.product_basis(ds, g)
        _, Ct_inv = self.product_basis(dt, g)
        prod = la.matmul(self.F, la.matmul(self.F, _blockdiag([Ct_inv] * vt), M), _blockdiag([Cs] * vs))
        rows, cols = vt * dt // g, vs * ds // g
        out = np.zeros((rows, cols), dtype=np.int64)
        for i in range(rows):
            for j in range(cols):
                block = prod[i * g:(i + 1) * g, j * g:(j + 1) * g]
                code = Gf.element(block[:, 0])
                if not np.array_equal(Gf.regular(code), block):
                    raise ValidationError("map is not linear over the gcd field")
                out[i, j] = code
        return out

    def g_action(self, vertex: int, g: int, v: int) -> np.ndarray:
        """Matrix of multiplication by the generator of GF(q^g) on GF(q^{d_i})^v."""
        K = self.K[vertex]
        emb = self.tower.embeddings[(self.s * g, self.s * K.d)]
        G = self.ext_field(g)
        return _blockdiag([K.regular(int(emb[G.big.x]))] * v)

    def arrow_space_basis(self, arrow: int, vs: int, vt: int) -> list[np.ndarray]:
        """GF(q)-basis of the GF(q^g)-linear maps between the arrow's end spaces."""
        key = ("Z", arrow, vs, vt)
        if key not in self._cache:
            s_, t_ = self.arrows[arrow]
            ds, dt = self.quiver.d[s_], self.quiver.d[t_]
            g = gcd(ds, dt)
            Gf = self.ext_field(g)
            rows, cols = vt * dt // g, vs * ds // g
            out = []
            for i in range(rows):
                for j in range(cols):
                    for a in range(g):
                        G = np.zeros((rows, cols), dtype=np.int64)
                        G[i, j] = Gf.basis[a]
                        out.append(self.g_to_f(arrow, G, vs, vt))
            self._cache[key] = out
        return self._cache[key]

    def vertex_hom_basis(self, vertex: int, v: int, w: int) -> list[tuple[int, int, int]]:
        """Index triples (r, c, j) for the GF(q^{d})-linear maps E_rc * x^j."""
        d = self.quiver.d[vertex]
        return [(r, c, j) for r in range(w) for c in range(v) for j in range(d)]

    # --- convenience constructors

    def zero(self) -> "Rep":
        return Rep.from_f(self, (0,) * self.n, [None] * len(self.arrows), check=False)

    def simple(self, i: int) -> "Rep":
        """The simple representation at 0-based vertex i."""
        dims = [0] * self.n
        dims[i] = 1
        return Rep.from_f(self, tuple(dims), [None] * len(self.arrows), check=False)


@dataclass(frozen=True, eq=False)
class Rep:
    cat: RepCategory
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]

    @staticmethod
    def from_f(cat: RepCategory, dims, maps, check: bool = True) -> "Rep":
        dims = tuple(int(x) for x in dims)
        d = cat.quiver.d
        fixed = []
        for a, (s, t) in enumerate(cat.arrows):
            shape = (dims[t] * d[t], dims[s] * d[s])
            M = maps[a]
            if M is None:
                M = np.zeros(shape, dtype=np.int64)
            M = np.asarray(M, dtype=np.int64).reshape(shape) if np.size(M) == 0 else np.asarray(M, dtype=np.int64)
            if M.shape != shape:
                raise ShapeMismatch(f"arrow {a}: expected {shape}, got {M.shape}")
            if check:
                g = gcd(d[s], d[t])
                left = la.matmul(cat.F, cat.g_action(t, g, dims[t]), M)
                right = la.matmul(cat.F, M, cat.g_action(s, g, dims[s]))
                if not np.array_equal(left, right):
                    raise ValidationError(f"arrow {a} map is not linear over the gcd field")
            M.setflags(write=False)
            fixed.append(M)
        return Rep(cat, dims, tuple(fixed))

    @property
    def quiver(self) -> ValuedQuiver:
        return self.cat.quiver

    @property
    def F(self):
        return self.cat.F

    def fdim(self, i: int) -> int:
        return self.dims[i] * self.cat.quiver.d[i]

    @cached_property
    def total_fdim(self) -> int:
        return sum(self.fdim(i) for i in range(self.cat.n))

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for i in range(self.cat.n):
            out.append(acc)
            acc += self.fdim(i)
        return out

    def structure(self, i: int) -> np.ndarray:
        return _blockdiag([self.cat.K[i].generator_matrix] * self.dims[i])

    def k_powers(self, i: int) -> list[np.ndarray]:
        K = self.cat.K[i]
        return [_blockdiag([P] * self.dims[i]) for P in K.power_matrices]

    def is_zero(self) -> bool:
        return not any(self.dims)

    def support(self) -> set[int]:
        return {i for i, x in enumerate(self.dims) if x}

    def gmatrices(self) -> list[np.ndarray]:
        return [self.cat.f_to_g(a, M, self.dims[s], self.dims[t]) for a, ((s, t), M) in
                enumerate(zip(self.cat.arrows, self.maps))]

    def __repr__(self):
        return f"Rep(dims={self.dims}, field={self.cat.F.name})"


def build_rep(cat: RepCategory, dims, arrow_matrices) -> Rep:
    """Build a representation from arrow matrices over the gcd fields.

    ``arrow_matrices`` follows the expanded arrow order of the quiver; each
    matrix has shape (v_t*d_t/g) x (v_s*d_s/g) with entries that are codes
    of GF(q^g).
    """
    dims = tuple(int(x) for x in dims)
    if len(dims) != cat.n or any(x < 0 for x in dims):
        raise ShapeMismatch(f"dimension vector {dims} does not fit n={cat.n}")
    mats = list(arrow_matrices)
    if len(mats) != len(cat.arrows):
        raise ShapeMismatch(f"expected {len(cat.arrows)} arrow matrices, got {len(mats)}")
    d = cat.quiver.d
    fmaps = []
    for a, (s, t) in enumerate(cat.arrows):
        g = gcd(d[s], d[t])
        shape = (dims[t] * d[t] // g, dims[s] * d[s] // g)
        G = np.asarray(mats[a] if mats[a] is not None else np.zeros(shape), dtype=np.int64)
        if G.size == 0:
            G = G.reshape(shape)
        if G.shape != shape:
            raise ShapeMismatch(f"arrow {a}: expected shape {shape}, got {G.shape}")
        size = cat.ext_field(g).big.size
        if G.size and (G.min() < 0 or G.max() >= size):
            raise WrongField(f"arrow {a}: entries must be codes of GF({cat.p}^{cat.s * g})")
        fmaps.append(cat.g_to_f(a, G, dims[s], dims[t]))
    return Rep.from_f(cat, dims, fmaps, check=False)


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Rep
    target: Rep
    mats: tuple[np.ndarray, ...]

    def compose(self, other: "Morphism") -> "Morphism":
        """self o other."""
        F = self.source.F
        return Morphism(other.source, self.target,
                        tuple(la.matmul(F, a, b) for a, b in zip(self.mats, other.mats)))

    def is_zero(self) -> bool:
        return all(not m.any() for m in self.mats)

    def check(self) -> bool:
        F = self.source.F
        for a, (s, t) in enumerate(self.source.cat.arrows):
            left = la.matmul(F, self.mats[t], self.source.maps[a])
            right = la.matmul(F, self.target.maps[a], self.mats[s])
            if not np.array_equal(left, right):
                return False
        return True

    def block(self) -> np.ndarray:
        return _blockdiag(list(self.mats))

    def is_iso(self) -> bool:
        F = self.source.F
        for M in self.mats:
            if M.shape[0] != M.shape[1] or la.rank(F, M) != M.shape[0]:
                return False
        return True


def identity_morphism(V: Rep) -> Morphism:
    return Morphism(V, V, tuple(np.eye(V.fdim(i), dtype=np.int64) for i in range(V.cat.n)))


def zero_morphism(V: Rep, W: Rep) -> Morphism:
    return Morphism(V, W, tuple(np.zeros((W.fdim(i), V.fdim(i)), dtype=np.int64) for i in range(V.cat.n)))


# ------------------------------------------------------------------ Hom / Ext

def _unknowns(V: Rep, W: Rep):
    cat = V.cat
    out = []
    for i in range(cat.n):
        for rcj in cat.vertex_hom_basis(i, V.dims[i], W.dims[i]):
            out.append((i,) + rcj)
    return out


def _unknown_matrix(V: Rep, W: Rep, u) -> np.ndarray:
    i, r, c, j = u
    d = V.cat.quiver.d[i]
    M = np.zeros((W.fdim(i), V.fdim(i)), dtype=np.int64)
    M[r * d:(r + 1) * d, c * d:(c + 1) * d] = V.cat.K[i].power_matrices[j]
    return M


def delta_matrix(V: Rep, W: Rep):
    """Matrix of (theta_i) -> (psi_a theta_s - theta_t phi_a) in the vertexwise unknown basis.

    Its kernel is Hom(V, W); its cokernel inside the arrow-map space is Ext^1(V, W).
    """
    cat = V.cat
    F = cat.F
    d = cat.quiver.d
    unknowns = _unknowns(V, W)
    blocks_rows = []
    for a, (s, t) in enumerate(cat.arrows):
        rows = W.fdim(t) * V.fdim(s)
        if rows == 0:
            continue
        cols = np.zeros((rows, len(unknowns)), dtype=np.int64)
        phi, psi = V.maps[a], W.maps[a]
        for idx, (i, r, c, j) in enumerate(unknowns):
            if i == s:
                P = cat.K[s].power_matrices[j]
                C = np.zeros((W.fdim(t), V.fdim(s)), dtype=np.int64)
                C[:, c * d[s]:(c + 1) * d[s]] = la.matmul(F, psi[:, r * d[s]:(r + 1) * d[s]], P)
                cols[:, idx] = C.reshape(-1)
            elif i == t:
                P = cat.K[t].power_matrices[j]
                C = np.zeros((W.fdim(t), V.fdim(s)), dtype=np.int64)
                C[r * d[t]:(r + 1) * d[t], :] = F.neg[la.matmul(F, P, phi[c * d[t]:(c + 1) * d[t], :])]
                cols[:, idx] = C.reshape(-1)
        blocks_rows.append(cols)
    if blocks_rows:
        A = np.vstack(blocks_rows)
    else:
        A = np.zeros((0, len(unknowns)), dtype=np.int64)
    return A, unknowns


@dataclass(frozen=True, eq=False)
class HomBasis:
    source: Rep
    target: Rep
    basis: tuple[Morphism, ...]

    @property
    def dimF(self) -> int:
        return len(self.basis)

    def element(self, coeffs) -> Morphism:
        F = self.source.F
        n = self.source.cat.n
        mats = []
        for i in range(n):
            mats.append(la.combine(F, [b.mats[i] for b in self.basis], coeffs) if self.basis else
                        np.zeros((self.target.fdim(i), self.source.fdim(i)), dtype=np.int64))
        return Morphism(self.source, self.target, tuple(mats))

    def stack(self) -> np.ndarray:
        """Basis as an array (k, N, M) of block-diagonal matrices."""
        return np.array([b.block() for b in self.basis], dtype=np.int64)

    def coordinates(self, f: Morphism):
        """Coefficients of f in this basis (None if f is not in the span)."""
        if not self.basis:
            return np.zeros(0, dtype=np.int64) if f.is_zero() else None
        A = np.array([b.block().reshape(-1) for b in self.basis], dtype=np.int64).T
        return la.solve(self.source.F, A, f.block().reshape(-1))

    def __iter__(self):
        return iter(self.basis)


def hom_dim(V: Rep, W: Rep) -> int:
    A, unknowns = delta_matrix(V, W)
    return len(unknowns) - la.rank(V.F, A)


def hom_basis(V: Rep, W: Rep) -> HomBasis:
    if V.cat is not W.cat:
        raise WrongField("representations live in different categories")
    A, unknowns = delta_matrix(V, W)
    N = la.nullspace(V.F, A)
    basis = []
    mats_u = [_unknown_matrix(V, W, u) for u in unknowns]
    for col in range(N.shape[1]):
        mats = [np.zeros((W.fdim(i), V.fdim(i)), dtype=np.int64) for i in range(V.cat.n)]
        for idx, c in enumerate(N[:, col]):
            if c:
                i = unknowns[idx][0]
                mats[i] = V.F.add[mats[i], V.F.mul[int(c), mats_u[idx]]]
        basis.append(Morphism(V, W, tuple(mats)))
    return HomBasis(V, W, tuple(basis))


def arrow_space_dim(V: Rep, W: Rep) -> int:
    d = V.cat.quiver.d
    return sum(V.dims[s] * W.dims[t] * d[s] * d[t] // gcd(d[s], d[t]) for s, t in V.cat.arrows)


def ext_dim(V: Rep, W: Rep) -> int:
    A, _ = delta_matrix(V, W)
    return arrow_space_dim(V, W) - la.rank(V.F, A)


def euler(V: Rep, W: Rep) -> int:
    return V.quiver.matrices.euler(V.dims, W.dims)


@dataclass(frozen=True, eq=False)
class ExtSpace:
    """Ext^1(V, W) with a cocycle basis of a complement to the coboundaries."""

    source: Rep  # V
    target: Rep  # W
    cocycles: tuple[tuple[np.ndarray, ...], ...]

    @property
    def dimF(self) -> int:
        return len(self.cocycles)

    @property
    def size(self) -> int:
        return self.source.cat.q ** self.dimF

    def middle_term(self, coeffs) -> Rep:
        """Middle term E of 0 -> W -> E -> V -> 0 for the given class."""
        V, W = self.source, self.target
        F = V.F
        maps = []
        for a, (s, t) in enumerate(V.cat.arrows):
            eta = np.zeros((W.fdim(t), V.fdim(s)), dtype=np.int64)
            for c, cyc in zip(coeffs, self.cocycles):
                if c:
                    eta = F.add[eta, F.mul[int(c), cyc[a]]]
            top = np.hstack([W.maps[a], eta])
            bottom = np.hstack([np.zeros((V.fdim(t), W.fdim(s)), dtype=np.int64), V.maps[a]])
            maps.append(np.vstack([top, bottom]))
        return Rep.from_f(V.cat, tuple(x + y for x, y in zip(W.dims, V.dims)), maps, check=False)

    def classes(self, budget: int | None = None):
        """Yield (coefficients, middle term) over every element of Ext^1."""
        budget = budget or self.source.cat.budgets["ext"]
        if self.size > budget:
            raise ExtTooLarge(f"Ext group of size {self.size} exceeds budget {budget}")
        q = self.source.cat.q
        for idx in range(self.size):
            coeffs = [(idx // q**j) % q for j in range(self.dimF)]
            yield coeffs, self.middle_term(coeffs)


def ext_space(V: Rep, W: Rep) -> ExtSpace:
    cat = V.cat
    F = cat.F
    A, _ = delta_matrix(V, W)
    # cocycle space: all GF(q^g)-linear arrow maps V_s -> W_t, vectorised arrow by arrow
    Z = []
    for a, (s, t) in enumerate(cat.arrows):
        for M in cat.arrow_space_basis(a, V.dims[s], W.dims[t]):
            vec = []
            for b, (s2, t2) in enumerate(cat.arrows):
                size = W.fdim(t2) * V.fdim(s2)
                if size == 0:
                    continue
                vec.append(M.reshape(-1) if b == a else np.zeros(size, dtype=np.int64))
            Z.append(np.concatenate(vec) if vec else np.zeros(0, dtype=np.int64))
    if not Z:
        return ExtSpace(V, W, ())
    Zm = np.array(Z, dtype=np.int64).T
    if A.shape[0] != Zm.shape[0]:
        raise AssertionError("coboundary and cocycle spaces disagree in size")
    picks = la.extend_columns(F, A, Zm)
    cocycles = []
    for idx in picks:
        vec = Zm[:, idx]
        parts, off = [], 0
        for a, (s, t) in enumerate(cat.arrows):
            size = W.fdim(t) * V.fdim(s)
            parts.append(vec[off:off + size].reshape(W.fdim(t), V.fdim(s)) if size else
                         np.zeros((W.fdim(t), V.fdim(s)), dtype=np.int64))
            off += size
        cocycles.append(tuple(parts))
    return ExtSpace(V, W, tuple(cocycles))


# --------------------------------------------------------- sub / quotient / sum

def _as_columns(cols, rows: int) -> np.ndarray:
    arr = np.asarray(cols, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((rows, 0), dtype=np.int64)
    return arr.reshape(rows, -1)


def k_basis(V: Rep, i: int, cols) -> np.ndarray:
    """Expanded GF(q^{d_i})-basis of the span of ``cols`` (GF(q)-coordinates).

    Columns come in groups of d_i: x^0 u, x^1 u, ..., for each chosen vector u.
    Raises NotASubrep if the span of ``cols`` is not closed under GF(q^{d_i}).
    """
    F = V.F
    cols = _as_columns(cols, V.fdim(i))
    powers = V.k_powers(i)
    chosen = np.zeros((V.fdim(i), 0), dtype=np.int64)
    r = 0
    for c in range(cols.shape[1]):
        u = cols[:, c:c + 1]
        if la.in_span(F, chosen, u):
            continue
        orbit = np.hstack([la.matmul(F, P, u) for P in powers])
        chosen = np.hstack([chosen, orbit])
        r = la.rank(F, chosen)
    if la.rank(F, cols) != chosen.shape[1]:
        raise NotASubrep(f"subspace at vertex {i + 1} is not closed under the vertex field")
    return chosen


def k_span(V: Rep, i: int, cols) -> np.ndarray:
    """Expanded basis of the GF(q^{d_i})-span of arbitrary GF(q)-vectors."""
    F = V.F
    cols = _as_columns(cols, V.fdim(i))
    if cols.shape[1] == 0:
        return cols
    big = np.hstack([la.matmul(F, P, cols) for P in V.k_powers(i)])
    return k_basis(V, i, la.column_basis(F, big))


def subrep(V: Rep, bases) -> tuple[Rep, Morphism]:
    """Subrepresentation spanned vertexwise by ``bases`` and its inclusion."""
    F = V.F
    cat = V.cat
    d = cat.quiver.d
    B = [k_basis(V, i, bases[i]) for i in range(cat.n)]
    dims = tuple(B[i].shape[1] // d[i] for i in range(cat.n))
    maps = []
    for a, (s, t) in enumerate(cat.arrows):
        rhs = la.matmul(F, V.maps[a], B[s])
        X = la.solve(F, B[t], rhs)
        if X is None:
            raise NotASubrep(f"arrow {a} does not map the subspace at {s + 1} into the one at {t + 1}")
        maps.append(X.reshape(B[t].shape[1], B[s].shape[1]))
    U = Rep.from_f(cat, dims, maps, check=False)
    return U, Morphism(U, V, tuple(B))


def complement_basis(V: Rep, i: int, B: np.ndarray) -> np.ndarray:
    """Expanded K-basis of a complement to the K-subspace with expanded basis B."""
    F = V.F
    d = V.cat.quiver.d[i]
    powers = V.k_powers(i)
    cur = B
    extra = np.zeros((V.fdim(i), 0), dtype=np.int64)
    for r in range(V.dims[i]):
        e = np.zeros((V.fdim(i), 1), dtype=np.int64)
        e[r * d, 0] = 1
        if la.in_span(F, cur, e):
            continue
        orbit = np.hstack([la.matmul(F, P, e) for P in powers])
        cur = np.hstack([cur, orbit])
        extra = np.hstack([extra, orbit])
    return extra


def quotient(V: Rep, bases) -> tuple[Rep, Morphism]:
    """Quotient of V by the subrepresentation spanned by ``bases``, with the projection."""
    F = V.F
    cat = V.cat
    d = cat.quiver.d
    U, incl = subrep(V, bases)
    C, P = [], []
    for i in range(cat.n):
        Bi = incl.mats[i]
        Ci = complement_basis(V, i, Bi)
        full = np.hstack([Bi, Ci])
        inv = la.inverse(F, full) if full.size else full
        C.append(Ci)
        P.append(inv[Bi.shape[1]:, :])
    dims = tuple(C[i].shape[1] // d[i] for i in range(cat.n))
    maps = [la.matmul(F, la.matmul(F, P[t], V.maps[a]), C[s]) for a, (s, t) in enumerate(cat.arrows)]
    Q = Rep.from_f(cat, dims, maps, check=False)
    return Q, Morphism(V, Q, tuple(P))


def direct_sum(*reps: Rep) -> Rep:
    if not reps:
        raise ValueError("direct_sum needs at least one representation")
    cat = reps[0].cat
    dims = tuple(sum(R.dims[i] for R in reps) for i in range(cat.n))
    maps = [_blockdiag([R.maps[a] for R in reps]) for a in range(len(cat.arrows))]
    return Rep.from_f(cat, dims, maps, check=False)


def sum_injections(reps) -> list[Morphism]:
    S = direct_sum(*reps)
    out = []
    offs = [0] * S.cat.n
    for R in reps:
        mats = []
        for i in range(S.cat.n):
            M = np.zeros((S.fdim(i), R.fdim(i)), dtype=np.int64)
            M[offs[i]:offs[i] + R.fdim(i), :] = np.eye(R.fdim(i), dtype=np.int64)
            mats.append(M)
            offs[i] += R.fdim(i)
        out.append(Morphism(R, S, tuple(mats)))
    return out


def kernel(f: Morphism) -> tuple[Rep, Morphism]:
    F = f.source.F
    return subrep(f.source, [la.nullspace(F, M) if M.size else np.eye(M.shape[1], dtype=np.int64)
                             for M in f.mats])


def image_bases(f: Morphism) -> list[np.ndarray]:
    F = f.source.F
    return [la.column_basis(F, M) if M.size else np.zeros((M.shape[0], 0), dtype=np.int64) for M in f.mats]


def cokernel(f: Morphism) -> tuple[Rep, Morphism]:
    return quotient(f.target, image_bases(f))


def radical(V: Rep) -> tuple[Rep, Morphism]:
    """rad V: at each vertex the field span of all incoming arrow images."""
    cat = V.cat
    F = V.F
    cols = [np.zeros((V.fdim(i), 0), dtype=np.int64) for i in range(cat.n)]
    for a, (s, t) in enumerate(cat.arrows):
        if V.maps[a].size:
            cols[t] = np.hstack([cols[t], V.maps[a]])
    return subrep(V, [k_span(V, i, cols[i]) for i in range(cat.n)])


def socle(V: Rep) -> tuple[Rep, Morphism]:
    """soc V: vectors whose field span is killed by every outgoing arrow."""
    cat = V.cat
    F = V.F
    bases = []
    for i in range(cat.n):
        rows = []
        for a, (s, t) in enumerate(cat.arrows):
            if s == i and V.maps[a].size:
                rows.extend(la.matmul(F, V.maps[a], P) for P in V.k_powers(i))
        if rows:
            bases.append(la.nullspace(F, np.vstack(rows)))
        else:
            bases.append(np.eye(V.fdim(i), dtype=np.int64))
    return subrep(V, bases)


def top(V: Rep) -> tuple[Rep, Morphism]:
    R, incl = radical(V)
    return quotient(V, list(incl.mats))


def base_change(V: Rep, changes) -> Rep:
    """Transport V along vertexwise field-linear automorphisms g_i: the maps become g_t phi g_s^{-1}."""
    F = V.F
    maps = []
    for a, (s, t) in enumerate(V.cat.arrows):
        gs_inv = la.inverse(F, changes[s]) if changes[s].size else changes[s]
        maps.append(la.matmul(F, la.matmul(F, changes[t], V.maps[a]), gs_inv))
    return Rep.from_f(V.cat, V.dims, maps, check=False)


def random_field_linear_aut(V: Rep, i: int, rng) -> np.ndarray:
    """A random invertible GF(q^{d_i})-linear map on V_i."""
    F = V.F
    K = V.cat.K[i]
    v = V.dims[i]
    while True:
        codes = rng.integers(0, K.big.size, size=(v, v))
        M = np.zeros((V.fdim(i), V.fdim(i)), dtype=np.int64)
        for r in range(v):
            for c in range(v):
                M[r * K.d:(r + 1) * K.d, c * K.d:(c + 1) * K.d] = K.regular(int(codes[r, c]))
        if la.rank(F, M) == M.shape[0]:
            return M


def random_rep(cat: RepCategory, dims, rng) -> Rep:
    """Representation with uniformly random arrow maps of the given dimension vector."""
    maps = []
    for a, (s, t) in enumerate(cat.arrows):
        basis = cat.arrow_space_basis(a, dims[s], dims[t])
        coeffs = rng.integers(0, cat.q, size=len(basis))
        if basis:
            maps.append(la.combine(cat.F, basis, coeffs))
        else:
            maps.append(None)
    return Rep.from_f(cat, dims, maps, check=False)


def category_for_q(quiver: ValuedQuiver, q: int, **kw) -> RepCategory:
    """Category over GF(q) for a prime power q."""
    from .gf import prime_power

    p, s = prime_power(q)
    return RepCategory(quiver, p, s, **kw)
